#include "tanglekit/knotaction.hpp"

#include "tanglekit/error.hpp"
#include "tanglekit/invariants.hpp"

namespace tk {

namespace {

using Seq = std::vector<Fundamental>;

Tangle fill(Seq seq, const Dirs& source, const char* what) {
    auto T = relabel(std::move(seq), source);
    if (!T) throw Error(std::string("no consistent orientation for ") + what);
    return *T;
}

// Placeholder elements; relabel supplies the labels.
Fundamental cup_at(int k, int l, ArcOrient a) { return Fundamental::cup(Dirs(k, Dir::Up), a, Dirs(l, Dir::Up)); }
Fundamental cap_at(int k, int l) { return Fundamental::cap(Dirs(k, Dir::Up), ArcOrient::LtoR, Dirs(l, Dir::Up)); }
Fundamental block(const BraidWord& b) { return Fundamental::braid_block(b, Dirs(b.strands(), Dir::Up)); }

const GTPair& complex_conjugation() {
    static const GTPair p(-1, FreeWord2());
    return p;
}

}  // namespace

KnotFraction::KnotFraction(Tangle n, Tangle d) : num(std::move(n)), den(std::move(d)) {
    if (!is_knot(num) || !is_knot(den)) throw Error("a fraction needs knots in numerator and denominator");
}

nlohmann::json KnotFraction::to_json() const {
    return {{"num", serialize(num)}, {"den", serialize(den)}, {"alpha_num", alpha(num)}, {"alpha_den", alpha(den)}};
}

Tangle unit_circle() { return parse_tangle("C[0,0; <] ; A[0,0; <]"); }

Tangle lambda_f(const FreeWord2& f) {
    if (exp_sums(f) != std::pair<int64_t, int64_t>{0, 0})
        throw Error("Lambda_f needs a word with vanishing exponent sums");
    const BraidWord F = f_triple(f, {2, 1}, {3, 1}, {4, 1}, 4);
    return fill({cup_at(0, 0, ArcOrient::RtoL), cup_at(1, 1, ArcOrient::LtoR), block(F), cap_at(0, 2), cap_at(0, 0)},
                {}, "Lambda_f");
}

Tangle lambda_power(const FreeWord2& f, int64_t n) {
    if (n < 0) throw Error("negative connected-sum power");
    if (n == 0) return unit_circle();
    const Tangle L = lambda_f(f);
    Tangle r = L;
    for (int64_t i = 1; i < n; ++i) r = connected_sum(r, L);
    return r;
}

int64_t alpha(const Tangle& T) {
    int64_t n = 0;
    for (const auto& g : T.seq()) n += g.kind == Kind::A;
    return n;
}

std::vector<Fundamental> act_fundamental(const GTPair& p, const Fundamental& g) {
    if (g.kind == Kind::B) return {Fundamental::braid_block(act_on_braid(p, g.braid), g.eps)};
    const int k = g.k(), n = k + g.l() + 2;
    const BraidWord F = gt_conjugator(p, k + 1, n);
    if (F.empty()) return {g};
    if (g.kind == Kind::A) return {Fundamental::braid_block(F, boundary(g).source), g};
    return {g, Fundamental::braid_block(F.inverse(), boundary(g).target)};
}

Tangle act_sequence(const GTPair& p, const Tangle& T) {
    Seq out;
    for (const auto& g : T.seq())
        for (auto& h : act_fundamental(p, g)) out.push_back(std::move(h));
    return Tangle::validate(std::move(out), T.source());
}

KnotFraction act_knot(const GTPair& p, const Tangle& K) {
    if (!is_knot(K)) throw Error("expected a knot (closed, one component)");
    return {act_sequence(p, K), lambda_power(p.f(), alpha(K))};
}

KnotFraction act_fraction(const GTPair& p, const KnotFraction& x) {
    const int64_t ar = alpha(x.num), as = alpha(x.den);
    return {connected_sum(act_sequence(p, x.num), lambda_power(p.f(), as)),
            connected_sum(act_sequence(p, x.den), lambda_power(p.f(), ar))};
}

KnotFraction gk_mul(const KnotFraction& x, const KnotFraction& y) {
    return {connected_sum(x.num, y.num), connected_sum(x.den, y.den)};
}

KnotFraction gk_inv(const KnotFraction& x) { return {x.den, x.num}; }

EqVerdict gk_eq(const KnotFraction& x, const KnotFraction& y, int64_t budget, bool framed) {
    try {
        const LaurentPoly l = jones(x.num) * jones(y.den), r = jones(y.num) * jones(x.den);
        if (l != r) {
            EqVerdict v;
            v.kind = EqVerdict::Kind::Distinct;
            v.invariant = "jones";
            v.left_value = l.str();
            v.right_value = r.str();
            return v;
        }
    } catch (const Error&) {
        // too many crossings for the filter; the search still runs
    }
    return equivalent(connected_sum(x.num, y.den), connected_sum(y.num, x.den), framed, budget);
}

Tangle mirror(const Tangle& K) {
    if (!is_knot(K)) throw Error("expected a knot (closed, one component)");
    return act_sequence(complex_conjugation(), K);
}

std::optional<TwoBridgeForm> TwoBridgeForm::oriented(const BraidWord& b4) {
    if (b4.strands() != 4) throw Error("two-bridge braid must have 4 strands");
    const ArcOrient L = ArcOrient::LtoR, R = ArcOrient::RtoL;
    for (auto [o, i] : {std::pair{R, L}, {R, R}, {L, L}, {L, R}}) {
        TwoBridgeForm tb{b4, o, i};
        try {
            two_bridge(tb);
            return tb;
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

Tangle two_bridge(const TwoBridgeForm& tb) {
    if (tb.b4.strands() != 4) throw Error("two-bridge braid must have 4 strands");
    return fill({cup_at(0, 0, tb.outer), cup_at(1, 1, tb.inner), block(tb.b4), cap_at(0, 2), cap_at(0, 0)}, {},
                "the two-bridge template");
}

TwoBridgeImage act_two_bridge(const GTPair& p, const TwoBridgeForm& tb) {
    two_bridge(tb);
    TwoBridgeForm num = tb;
    num.b4 = act_on_braid(p, tb.b4) * gt_conjugator(p, 2, 4).inverse();
    return {num, lambda_f(p.f())};
}

Tangle twist(Dir d) {
    const ArcOrient a = d == Dir::Up ? ArcOrient::LtoR : ArcOrient::RtoL;
    return fill({cup_at(1, 0, a), block(BraidWord::sigma(3, 1)), cap_at(1, 0)}, {d}, "a twist");
}

Tangle twist_power(Dir d, int64_t c) {
    const ArcOrient a = d == Dir::Up ? ArcOrient::RtoL : ArcOrient::LtoR;
    return fill({cup_at(1, 0, a), block(BraidWord::sigma(3, 1, checked_neg(c))), cap_at(0, 1)}, {d}, "a twist power");
}

}  // namespace tk
