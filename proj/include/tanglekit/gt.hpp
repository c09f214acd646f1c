#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "tanglekit/braid.hpp"
#include "tanglekit/freeword.hpp"

namespace tk {

// Candidate Grothendieck-Teichmueller element (lambda, f): lambda odd and f
// with vanishing exponent sums. The three relations are checked separately.
class GTPair {
public:
    GTPair(int64_t lambda, FreeWord2 f);

    int64_t lambda() const { return lambda_; }
    const FreeWord2& f() const { return f_; }
    int64_t m() const { return (lambda_ - 1) / 2; }

    bool operator==(const GTPair&) const = default;
    std::string str() const;

private:
    int64_t lambda_;
    FreeWord2 f_;
};

// `gt(lambda=-1; f=1)`
GTPair parse_gt(std::string_view text);

// Reduced left-hand sides; the relation holds iff the word is trivial.
FreeWord2 two_cycle_relator(const GTPair& p);
FreeWord2 hexagon_relator(const GTPair& p);
// Both sides of the pentagon in B_4, left then right.
std::pair<BraidWord, BraidWord> pentagon_sides(const GTPair& p);

bool check_two_cycle(const GTPair& p);
bool check_hexagon(const GTPair& p);
bool check_pentagon(const GTPair& p);
bool is_gt(const GTPair& p);

// (lambda2 lambda1, f2 * f1(x^lambda2, f2^-1 y^lambda2 f2))
GTPair compose_gt(const GTPair& p2, const GTPair& p1);

// The braid of f_{1..i-1, i, i+1} conjugating sigma_i in B_n.
BraidWord gt_conjugator(const GTPair& p, int i, int n);
BraidWord act_on_braid(const GTPair& p, const BraidWord& b);

}  // namespace tk
