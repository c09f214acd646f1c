// Left normal form in B_n. Simple elements are permutations; the positive
// word sigma_{i1}...sigma_{ik} of a simple element has permutation
// s_{i1} * ... * s_{ik}.

#include <algorithm>

#include "tanglekit/braid.hpp"
#include "tanglekit/error.hpp"

namespace tk {

namespace {

// Right descent: i with A * s_i shorter.
bool in_finish(const Perm& a, int i) { return a(i) > a(i + 1); }
// Left descent: i with s_i * B shorter.
bool in_start(const Perm& b, int i) {
    const auto inv = b.inverse();
    return inv(i) > inv(i + 1);
}

// Rewrite (a, b) into the left-weighted pair with the same product.
void left_weight(Perm& a, Perm& b) {
    const int n = a.size();
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 1; i < n; ++i) {
            if (in_start(b, i) && !in_finish(a, i)) {
                const Perm s = Perm::transposition(n, i);
                a = a * s;
                b = s * b;
                changed = true;
            }
        }
    }
}

Perm tau(const Perm& p) {
    const Perm w0 = Perm::longest(p.size());
    return w0 * p * w0;
}

class Builder {
public:
    explicit Builder(int n) : n_(n), delta_(Perm::longest(n)) {}

    void mul_simple(const Perm& s) {
        if (s.is_identity()) return;
        f_.push_back(s);
        for (std::size_t j = f_.size() - 1; j > 0; --j) {
            Perm a = f_[j - 1], b = f_[j];
            left_weight(a, b);
            if (a == f_[j - 1] && b == f_[j]) break;
            f_[j - 1] = a;
            f_[j] = b;
        }
        tidy();
    }

    void mul_inverse_generator(int i) {
        // A_1..A_r Delta^-1 = Delta^-1 tau(A_1)..tau(A_r), then multiply by Delta s_i^-1.
        p_ = checked_add(p_, -1);
        for (auto& a : f_) a = tau(a);
        mul_simple(Perm::longest(n_) * Perm::transposition(n_, i));
    }

    NormalForm result() const { return {n_, p_, f_}; }

private:
    void tidy() {
        // Delta factors can only sit at the front; identities only at the back.
        while (!f_.empty() && f_.front() == delta_) {
            f_.erase(f_.begin());
            p_ = checked_add(p_, 1);
        }
        while (!f_.empty() && f_.back().is_identity()) f_.pop_back();
    }

    int n_;
    Perm delta_;
    int64_t p_ = 0;
    std::vector<Perm> f_;
};

}  // namespace

NormalForm normal_form(const BraidWord& b) {
    const int n = b.strands();
    Builder nf(n);
    for (const auto& l : b.letters()) {
        const int64_t reps = l.exp > 0 ? l.exp : checked_neg(l.exp);
        for (int64_t r = 0; r < reps; ++r) {
            if (l.exp > 0)
                nf.mul_simple(Perm::transposition(n, l.gen));
            else
                nf.mul_inverse_generator(l.gen);
        }
    }
    return nf.result();
}

BraidWord permutation_braid(const Perm& p) {
    // Peel right descents: p = p' * s_i gives word(p) = word(p') sigma_i.
    std::vector<Letter> rev;
    Perm q = p;
    for (bool found = true; found;) {
        found = false;
        for (int i = 1; i < q.size(); ++i) {
            if (q(i) > q(i + 1)) {
                rev.push_back({i, 1});
                q = q * Perm::transposition(q.size(), i);
                found = true;
                break;
            }
        }
    }
    std::reverse(rev.begin(), rev.end());
    return BraidWord(std::max(1, p.size()), rev);
}

BraidWord delta(int strands) { return permutation_braid(Perm::longest(strands)); }

BraidWord to_word(const NormalForm& nf) {
    BraidWord w = delta(nf.strands).pow(nf.delta_power);
    for (const auto& f : nf.factors) w *= permutation_braid(f);
    return w;
}

BraidWord normal_word(const BraidWord& b) { return to_word(normal_form(b)); }

bool equals(const BraidWord& b, const BraidWord& b2) {
    if (b.strands() != b2.strands())
        throw Error("strand-count mismatch: " + std::to_string(b.strands()) + " vs " + std::to_string(b2.strands()));
    if (b == b2) return true;
    return normal_form(b) == normal_form(b2);
}

bool is_trivial(const BraidWord& b) { return b.empty() || normal_form(b) == NormalForm{b.strands(), 0, {}}; }

std::string normal_form_key(const BraidWord& b) {
    const auto nf = normal_form(b);
    std::string key = std::to_string(nf.strands) + ":" + std::to_string(nf.delta_power);
    for (const auto& f : nf.factors) {
        key += '|';
        for (int v : f.images()) key += static_cast<char>('0' + v);
    }
    return key;
}

}  // namespace tk
