#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tanglekit/braid.hpp"
#include "tanglekit/word.hpp"

namespace tk {

// Words in F_2 = <x, y>; symbol 0 is x and symbol 1 is y.
using FreeWord2 = FreeWord;

inline FreeWord2 fx(int64_t e = 1) { return FreeWord::gen(0, e); }
inline FreeWord2 fy(int64_t e = 1) { return FreeWord::gen(1, e); }

std::pair<int64_t, int64_t> exp_sums(const FreeWord2& w);

// Image of w under x -> X, y -> Y.
BraidWord subst(const FreeWord2& w, const BraidWord& X, const BraidWord& Y);

// Consecutive strands first..first+size-1; size 0 is the empty block.
struct Block {
    int first = 1;
    int size = 0;
    int last() const { return first + size - 1; }
};

// x_{A,B} as a block generator, the identity when either block is empty.
BraidWord block_pure(Block a, Block b, int n);

// f(x_{A,B}, x_{B,C}) in B_n.
BraidWord f_triple(const FreeWord2& f, Block a, Block b, Block c, int n);

// f_{[m1],[n],[m2]} in B_{m1+n+m2}.
BraidWord f_bracketed(const FreeWord2& f, int m1, int n, int m2);

// Text form `x y^-1 x^3`; `1` or the empty string is the identity.
FreeWord2 parse_free_word(std::string_view text);
std::string to_string(const FreeWord2& w);

}  // namespace tk
