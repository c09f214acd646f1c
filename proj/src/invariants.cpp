#include "tanglekit/invariants.hpp"

#include <cstdlib>

#include "tanglekit/error.hpp"

namespace tk {

LaurentPoly LaurentPoly::monomial(int64_t e, int64_t c) {
    LaurentPoly p;
    p.add(e, c);
    return p;
}

int64_t LaurentPoly::coeff(int64_t e) const {
    auto it = t_.find(e);
    return it == t_.end() ? 0 : it->second;
}

void LaurentPoly::add(int64_t e, int64_t c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second = checked_add(it->second, c);
        if (it->second == 0) t_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto [e, c] : o.t_) add(e, c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    return r += o;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto [e, c] : t_) r.add(e, checked_neg(c));
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto [e, c] : t_)
        for (auto [e2, c2] : o.t_) r.add(checked_add(e, e2), checked_mul(c, c2));
    return r;
}

LaurentPoly LaurentPoly::pow(int64_t n) const {
    if (n < 0) {
        if (t_.size() != 1) throw Error("negative power of a non-monomial");
        auto [e, c] = *t_.begin();
        if (c != 1 && c != -1) throw Error("negative power of a non-unit monomial");
        return monomial(checked_mul(e, n), (n % 2 != 0) ? c : 1);
    }
    LaurentPoly r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

LaurentPoly LaurentPoly::mirror() const {
    LaurentPoly r;
    for (auto [e, c] : t_) r.add(checked_neg(e), c);
    return r;
}

namespace {

std::string render(const std::map<int64_t, int64_t>& t, const char* var, bool descending) {
    if (t.empty()) return "0";
    std::string s;
    bool first = true;
    auto term = [&](int64_t e, int64_t c) {
        const bool neg = c < 0;
        const uint64_t mag = neg ? -static_cast<uint64_t>(c) : static_cast<uint64_t>(c);
        if (first) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        first = false;
        if (e == 0) {
            s += std::to_string(mag);
            return;
        }
        if (mag != 1) s += std::to_string(mag);
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
    };
    if (descending)
        for (auto it = t.rbegin(); it != t.rend(); ++it) term(it->first, it->second);
    else
        for (auto [e, c] : t) term(e, c);
    return s;
}

}  // namespace

std::string LaurentPoly::str() const { return render(t_, "A", true); }

std::optional<std::string> LaurentPoly::str_t() const {
    std::map<int64_t, int64_t> t;
    for (auto [e, c] : t_) {
        if (e % 4 != 0) return std::nullopt;
        t[-e / 4] = c;
    }
    return render(t, "t", true);
}

nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (auto [e, c] : t_) j.push_back({e, c});
    return j;
}

LaurentPoly loop_value() { return LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1); }

int64_t crossing_count(const Tangle& T) {
    int64_t n = 0;
    for (const auto& g : T.seq())
        if (g.kind == Kind::B) n = checked_add(n, g.braid.crossing_count());
    return n;
}

int64_t writhe(const Tangle& L) {
    if (!is_link(L)) throw Error("writhe needs a link (empty source and target)");
    int64_t w = 0;
    for (const auto& g : L.seq()) {
        if (g.kind != Kind::B) continue;
        Dirs lab = g.eps;
        const auto& ls = g.braid.letters();
        // Letters are listed top to bottom.
        for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
            const bool same = lab[it->gen - 1] == lab[it->gen];
            w = checked_add(w, same ? it->exp : checked_neg(it->exp));
            if (it->exp % 2 != 0) std::swap(lab[it->gen - 1], lab[it->gen]);
        }
    }
    return w;
}

namespace {

// Non-crossing matchings of the current level's points, plus whether a loop
// has already been closed (the first loop is not weighted, which normalises
// the unknot to 1).
struct State {
    std::vector<int8_t> partner;
    bool seen = false;
    auto operator<=>(const State&) const = default;
};

using Table = std::map<State, LaurentPoly>;

// Join points p and p+1 through a cap; returns the delta factor exponent (0 or 1).
int close_pair(State& s, int p) {
    const int a = s.partner[p], b = s.partner[p + 1];
    if (a == p + 1) {
        if (!s.seen) {
            s.seen = true;
            return 0;
        }
        return 1;
    }
    s.partner[a] = static_cast<int8_t>(b);
    s.partner[b] = static_cast<int8_t>(a);
    return 0;
}

State erase_pair(const State& s, int p) {
    State r;
    r.seen = s.seen;
    auto shift = [p](int x) { return x > p + 1 ? x - 2 : x; };
    for (int x = 0; x < static_cast<int>(s.partner.size()); ++x) {
        if (x == p || x == p + 1) continue;
        r.partner.push_back(static_cast<int8_t>(shift(s.partner[x])));
    }
    return r;
}

State insert_pair(const State& s, int p) {
    State r;
    r.seen = s.seen;
    auto shift = [p](int x) { return x >= p ? x + 2 : x; };
    for (int x = 0; x < static_cast<int>(s.partner.size()); ++x) {
        if (x == p) {
            r.partner.push_back(static_cast<int8_t>(p + 1));
            r.partner.push_back(static_cast<int8_t>(p));
        }
        r.partner.push_back(static_cast<int8_t>(shift(s.partner[x])));
    }
    if (p == static_cast<int>(s.partner.size())) {
        r.partner.push_back(static_cast<int8_t>(p + 1));
        r.partner.push_back(static_cast<int8_t>(p));
    }
    return r;
}

void put(Table& t, const State& s, const LaurentPoly& w) {
    auto [it, fresh] = t.try_emplace(s, w);
    if (!fresh) {
        it->second += w;
        if (it->second.is_zero()) t.erase(it);
    }
}

}  // namespace

LaurentPoly kauffman_bracket(const Tangle& L, int64_t crossing_cap) {
    if (!is_link(L)) throw Error("bracket needs a link (empty source and target)");
    const int64_t c = crossing_count(L);
    if (c > crossing_cap)
        throw Error("diagram has " + std::to_string(c) + " crossings, above the cap of " +
                    std::to_string(crossing_cap));
    for (size_t i = 0; i <= L.size(); ++i)
        if (L.level(i).size() > 120) throw Error("diagram too wide for the bracket");

    const LaurentPoly delta = loop_value();
    Table cur;
    cur[State{}] = LaurentPoly(1);
    auto cap_step = [&](const Table& in, int p) {
        Table out;
        for (const auto& [s, w] : in) {
            State t = s;
            const int d = close_pair(t, p);
            put(out, erase_pair(t, p), d ? w * delta : w);
        }
        return out;
    };
    for (const auto& g : L.seq()) {
        if (g.kind == Kind::C) {
            Table out;
            for (const auto& [s, w] : cur) put(out, insert_pair(s, g.k()), w);
            cur = std::move(out);
        } else if (g.kind == Kind::A) {
            cur = cap_step(cur, g.k());
        } else {
            const auto& ls = g.braid.letters();
            for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
                const int p = it->gen - 1;
                const int sgn = it->exp > 0 ? 1 : -1;
                for (int64_t r = 0; r < std::llabs(it->exp); ++r) {
                    // sigma^{+1} = A id + A^-1 (cup after cap); sigma^{-1} swaps the weights.
                    Table out;
                    const LaurentPoly same = LaurentPoly::monomial(sgn), turn = LaurentPoly::monomial(-sgn);
                    for (const auto& [s, w] : cur) put(out, s, w * same);
                    for (const auto& [s, w] : cap_step(cur, p)) put(out, insert_pair(s, p), w * turn);
                    cur = std::move(out);
                }
            }
        }
    }
    LaurentPoly r;
    for (const auto& [s, w] : cur) r += w;  // only the empty matching remains
    return L.size() == 0 ? LaurentPoly(1) : r;
}

LaurentPoly jones(const Tangle& L, int64_t crossing_cap) {
    const LaurentPoly b = kauffman_bracket(L, crossing_cap);
    return LaurentPoly::monomial(3, -1).pow(-writhe(L)) * b;
}

}  // namespace tk
