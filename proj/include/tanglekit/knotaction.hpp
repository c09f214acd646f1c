#pragma once

#include <cstdint>
#include <optional>

#include "json.hpp"
#include "tanglekit/gt.hpp"
#include "tanglekit/isotopy.hpp"
#include "tanglekit/tangle.hpp"

namespace tk {

// r/s in the group of fractions of knots under connected sum.
struct KnotFraction {
    Tangle num, den;

    KnotFraction(Tangle num, Tangle den);
    nlohmann::json to_json() const;
};

// C[0,0; <] ; A[0,0; <]
Tangle unit_circle();

// Lambda_f; f needs vanishing exponent sums.
Tangle lambda_f(const FreeWord2& f);
// Left-associated connected-sum power, power 0 is the unit circle.
Tangle lambda_power(const FreeWord2& f, int64_t n);

// Number of caps.
int64_t alpha(const Tangle& T);

// sigma(a) puts f_{1..k,k+1,k+2} under the cap, sigma(c) puts its inverse over
// the cup, sigma(b) is the braid action. Trivial factors are omitted.
std::vector<Fundamental> act_fundamental(const GTPair& p, const Fundamental& g);
// Elementwise image of any tangle, boundary unchanged.
Tangle act_sequence(const GTPair& p, const Tangle& T);

KnotFraction act_knot(const GTPair& p, const Tangle& K);
KnotFraction act_fraction(const GTPair& p, const KnotFraction& x);
KnotFraction gk_mul(const KnotFraction& x, const KnotFraction& y);
KnotFraction gk_inv(const KnotFraction& x);

// r1/s1 = r2/s2 tested as r1#s2 against r2#s1 (only t = unit circle).
EqVerdict gk_eq(const KnotFraction& x, const KnotFraction& y, int64_t budget, bool framed = false);

// Every braid letter inverted.
Tangle mirror(const Tangle& K);

// a00 . a02 . b4 . c11 . c00 with the two cup arcs; the cap arcs follow.
struct TwoBridgeForm {
    BraidWord b4{4};
    ArcOrient outer = ArcOrient::RtoL;  // c00
    ArcOrient inner = ArcOrient::LtoR;  // c11

    // First cup arcs (default first) that orient the template; nullopt if none.
    static std::optional<TwoBridgeForm> oriented(const BraidWord& b4);
};

Tangle two_bridge(const TwoBridgeForm& tb);

struct TwoBridgeImage {
    TwoBridgeForm num;
    Tangle den;  // Lambda_f
};
TwoBridgeImage act_two_bridge(const GTPair& p, const TwoBridgeForm& tb);

// phi^up / phi^down, and the closed form of their c-th power.
Tangle twist(Dir d);
Tangle twist_power(Dir d, int64_t c);

}  // namespace tk
