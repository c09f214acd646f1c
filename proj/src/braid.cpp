#include "tanglekit/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "tanglekit/error.hpp"

namespace tk {

Perm::Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 1); }

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size() + 1, false);
    for (int v : img_) {
        if (v < 1 || v > size() || seen[v]) throw Error("not a permutation");
        seen[v] = true;
    }
}

Perm Perm::transposition(int n, int i) {
    Perm p(n);
    std::swap(p.img_[i - 1], p.img_[i]);
    return p;
}

Perm Perm::longest(int n) {
    Perm p(n);
    for (int k = 1; k <= n; ++k) p.img_[k - 1] = n + 1 - k;
    return p;
}

Perm Perm::operator*(const Perm& q) const {
    if (q.size() != size()) throw Error("permutation size mismatch");
    Perm r(size());
    for (int x = 1; x <= size(); ++x) r.img_[x - 1] = (*this)(q(x));
    return r;
}

Perm Perm::inverse() const {
    Perm r(size());
    for (int x = 1; x <= size(); ++x) r.img_[(*this)(x) - 1] = x;
    return r;
}

bool Perm::is_identity() const {
    for (int x = 1; x <= size(); ++x)
        if (img_[x - 1] != x) return false;
    return true;
}

int Perm::length() const {
    int inv = 0;
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b)
            if (img_[a] > img_[b]) ++inv;
    return inv;
}

BraidWord::BraidWord(int strands) : n_(strands) {
    if (strands < 1) throw Error("a braid needs at least one strand");
}

BraidWord::BraidWord(int strands, const std::vector<Letter>& letters) : BraidWord(strands) {
    for (const auto& l : letters) push(l.gen, l.exp);
}

BraidWord BraidWord::sigma(int strands, int i, int64_t exp) {
    BraidWord b(strands);
    b.push(i, exp);
    return b;
}

void BraidWord::push(int gen, int64_t exp) {
    if (gen < 1 || gen >= n_)
        throw Error("generator s" + std::to_string(gen) + " out of range for " + std::to_string(n_) + " strands");
    if (exp == 0) return;
    if (!w_.empty() && w_.back().gen == gen) {
        w_.back().exp = checked_add(w_.back().exp, exp);
        if (w_.back().exp == 0) w_.pop_back();
        return;
    }
    w_.push_back({gen, exp});
}

int64_t BraidWord::crossing_count() const {
    int64_t c = 0;
    for (const auto& l : w_) c = checked_add(c, l.exp < 0 ? checked_neg(l.exp) : l.exp);
    return c;
}

BraidWord BraidWord::inverse() const {
    BraidWord r(n_);
    for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.push(it->gen, checked_neg(it->exp));
    return r;
}

BraidWord BraidWord::pow(int64_t e) const {
    if (e < 0) return inverse().pow(checked_neg(e));
    if (w_.size() == 1) return sigma(n_, w_[0].gen, checked_mul(w_[0].exp, e));
    BraidWord r(n_), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

BraidWord& BraidWord::operator*=(const BraidWord& o) {
    if (o.n_ != n_)
        throw Error("strand-count mismatch: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
    for (const auto& l : o.w_) push(l.gen, l.exp);
    return *this;
}

BraidWord BraidWord::operator*(const BraidWord& o) const {
    BraidWord r = *this;
    r *= o;
    return r;
}

std::string BraidWord::str() const {
    if (w_.empty()) return "e";
    std::string out;
    for (const auto& l : w_) {
        if (!out.empty()) out += ' ';
        out += "s" + std::to_string(l.gen);
        if (l.exp != 1) out += "^" + std::to_string(l.exp);
    }
    return out;
}

BraidWord compose(const BraidWord& b, const BraidWord& b2) { return b * b2; }

Perm perm(const BraidWord& b) {
    // Follow every string from the bottom (last letter) to the top.
    std::vector<int> at(b.strands());  // at[pos-1] = bottom start of the string now at pos
    std::iota(at.begin(), at.end(), 1);
    const auto& w = b.letters();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        if (it->exp % 2 != 0) std::swap(at[it->gen - 1], at[it->gen]);
    std::vector<int> img(b.strands());
    for (int pos = 1; pos <= b.strands(); ++pos) img[at[pos - 1] - 1] = pos;
    return Perm(img);
}

BraidWord pure_gen(int i, int j, int n) {
    if (!(1 <= i && i < j && j <= n))
        throw Error("pure generator x_{" + std::to_string(i) + "," + std::to_string(j) + "} out of range in B_" +
                    std::to_string(n));
    BraidWord conj(n);
    for (int g = j - 1; g > i; --g) conj *= BraidWord::sigma(n, g);
    return conj * BraidWord::sigma(n, i, 2) * conj.inverse();
}

BraidWord block_gen(int a, int alpha, int b, int beta, int n) {
    if (!(1 <= a && alpha >= 0 && beta >= 0 && a + alpha < b && b + beta <= n))
        throw Error("block generator bounds violated");
    BraidWord r(n);
    for (int row = a; row <= a + alpha; ++row)
        for (int col = b; col <= b + beta; ++col) r *= pure_gen(row, col, n);
    return r;
}

BraidWord tensor(int m1, const BraidWord& b, int m2) {
    if (m1 < 0 || m2 < 0) throw Error("tensor padding must be non-negative");
    std::vector<Letter> w;
    w.reserve(b.letters().size());
    for (const auto& l : b.letters()) w.push_back({l.gen + m1, l.exp});
    return BraidWord(m1 + b.strands() + m2, w);
}

BraidWord cable_bottom(const BraidWord& b, int k, int n) {
    const int l = b.strands();
    if (k < 1 || k > l) throw Error("cable position out of range");
    if (n < 0) throw Error("cable width must be non-negative");
    const int out_n = l + n - 1;
    if (out_n < 1) throw Error("cabling would leave no strands");
    // Built bottom to top, reversed at the end.
    std::vector<Letter> up;
    int p = k;
    const auto& w = b.letters();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const int i = it->gen;
        if (p < i) {
            up.push_back({i + n - 1, it->exp});
        } else if (p > i + 1) {
            up.push_back({i, it->exp});
        } else {
            const int64_t s = it->exp > 0 ? 1 : -1;
            const int64_t reps = it->exp > 0 ? it->exp : checked_neg(it->exp);
            for (int64_t r = 0; r < reps; ++r) {
                if (p == i) {
                    for (int g = i + n - 1; g >= i; --g) up.push_back({g, s});
                    p = i + 1;
                } else {
                    for (int g = i; g <= i + n - 1; ++g) up.push_back({g, s});
                    p = i;
                }
            }
        }
    }
    std::reverse(up.begin(), up.end());
    return BraidWord(out_n, up);
}

BraidWord cable_top(const BraidWord& b, int k, int n) {
    if (k < 1 || k > b.strands()) throw Error("cable position out of range");
    return cable_bottom(b, perm(b).inverse()(k), n);
}

BraidWord insert_strand(const BraidWord& b, int k, int k_top, bool front) {
    const int n = b.strands() + 1;
    if (k < 1 || k > n || k_top < 1 || k_top > n) throw Error("inserted strand position out of range");
    // Moving the new strand one step left/right; behind means it is always under.
    const int64_t left_sign = front ? -1 : 1;
    const int64_t right_sign = front ? 1 : -1;
    std::vector<Letter> up;
    int p = k;
    const auto& w = b.letters();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const int i = it->gen;
        if (p == i + 1) {
            up.push_back({i, left_sign});
            p = i;
        }
        up.push_back({p <= i ? i + 1 : i, it->exp});
    }
    while (p < k_top) {
        up.push_back({p, right_sign});
        ++p;
    }
    while (p > k_top) {
        up.push_back({p - 1, left_sign});
        --p;
    }
    std::reverse(up.begin(), up.end());
    return BraidWord(n, up);
}

std::vector<FreeWord> artin_action(const BraidWord& b) {
    const int n = b.strands();
    std::vector<FreeWord> img;
    for (int j = 0; j < n; ++j) img.push_back(FreeWord::gen(j));
    for (const auto& l : b.letters()) {
        const int i = l.gen - 1;
        const int64_t reps = l.exp > 0 ? l.exp : checked_neg(l.exp);
        for (int64_t r = 0; r < reps; ++r) {
            FreeWord a = img[i], c = img[i + 1];
            if (l.exp > 0) {
                img[i] = a * c * a.inverse();
                img[i + 1] = a;
            } else {
                img[i] = c;
                img[i + 1] = c.inverse() * a * c;
            }
        }
    }
    return img;
}

bool artin_trivial(const BraidWord& b) {
    auto img = artin_action(b);
    for (int j = 0; j < b.strands(); ++j)
        if (!(img[j] == FreeWord::gen(j))) return false;
    return true;
}

namespace {

int64_t parse_int(std::string_view s, std::size_t offset) {
    int64_t v = 0;
    std::size_t start = (!s.empty() && s[0] == '+') ? 1 : 0;
    auto res = std::from_chars(s.data() + start, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.size() == start)
        throw ParseError("bad integer '" + std::string(s) + "'", 1, static_cast<int>(offset) + 1);
    return v;
}

}  // namespace

BraidWord parse_braid(std::string_view text, int strands) {
    std::vector<Letter> w;
    int max_gen = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        std::string_view tok = text.substr(pos, end - pos);
        if (tok == "e" || tok == "1") {
            pos = end;
            continue;
        }
        if (tok[0] != 's')
            throw ParseError("expected generator s<i>, got '" + std::string(tok) + "'", 1, static_cast<int>(pos) + 1);
        auto caret = tok.find('^');
        int64_t gen = parse_int(tok.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1),
                                pos + 1);
        int64_t exp = caret == std::string_view::npos ? 1 : parse_int(tok.substr(caret + 1), pos + caret + 1);
        if (gen < 1 || gen > 1'000'000)
            throw ParseError("generator index out of range", 1, static_cast<int>(pos) + 1);
        max_gen = std::max<int>(max_gen, static_cast<int>(gen));
        w.push_back({static_cast<int>(gen), exp});
        pos = end;
    }
    if (strands == 0) strands = max_gen + 1;
    if (max_gen >= strands)
        throw Error("generator s" + std::to_string(max_gen) + " does not fit " + std::to_string(strands) + " strands");
    return BraidWord(strands, w);
}

}  // namespace tk
