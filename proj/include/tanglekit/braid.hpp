#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tanglekit/word.hpp"

namespace tk {

// sigma_gen^exp; gen is 1-based.
struct Letter {
    int gen;
    int64_t exp;
    bool operator==(const Letter&) const = default;
};

// Permutation of {1..n}; (p * q)(x) = p(q(x)).
class Perm {
public:
    explicit Perm(int n = 0);
    explicit Perm(std::vector<int> images);

    static Perm transposition(int n, int i);
    static Perm longest(int n);

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int k) const { return img_[k - 1]; }
    const std::vector<int>& images() const { return img_; }

    Perm operator*(const Perm& q) const;
    Perm inverse() const;
    bool is_identity() const;
    int length() const;  // number of inversions

    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

private:
    std::vector<int> img_;
};

// A word sigma_{i1}^{e1} ... sigma_{ik}^{ek} in B_n, read top to bottom: the
// leftmost letter is the topmost crossing. Adjacent runs of the same generator
// are merged and zero runs are dropped on construction.
class BraidWord {
public:
    explicit BraidWord(int strands = 1);
    BraidWord(int strands, const std::vector<Letter>& letters);

    static BraidWord sigma(int strands, int i, int64_t exp = 1);

    int strands() const { return n_; }
    const std::vector<Letter>& letters() const { return w_; }
    bool empty() const { return w_.empty(); }
    int64_t crossing_count() const;

    BraidWord inverse() const;
    BraidWord pow(int64_t e) const;
    // this on top, o on the bottom.
    BraidWord operator*(const BraidWord& o) const;
    BraidWord& operator*=(const BraidWord& o);

    // Syntactic equality; use tk::equals for equality in B_n.
    bool operator==(const BraidWord&) const = default;

    std::string str() const;

private:
    void push(int gen, int64_t exp);
    int n_;
    std::vector<Letter> w_;
};

BraidWord compose(const BraidWord& b, const BraidWord& b2);

// perm(b)(k) is the top position of the string that starts at bottom position k.
Perm perm(const BraidWord& b);

// Left normal form Delta^p A_1 ... A_r, every A_i a proper nontrivial simple element.
struct NormalForm {
    int strands = 1;
    int64_t delta_power = 0;
    std::vector<Perm> factors;
    bool operator==(const NormalForm&) const = default;
    auto operator<=>(const NormalForm&) const = default;
};

NormalForm normal_form(const BraidWord& b);
BraidWord normal_word(const BraidWord& b);
BraidWord to_word(const NormalForm& nf);
BraidWord permutation_braid(const Perm& p);
BraidWord delta(int strands);
bool equals(const BraidWord& b, const BraidWord& b2);
bool is_trivial(const BraidWord& b);
std::string normal_form_key(const BraidWord& b);

// Images of the free generators g_1..g_n (symbols 0..n-1) under the Artin
// automorphism determined by b.
std::vector<FreeWord> artin_action(const BraidWord& b);
bool artin_trivial(const BraidWord& b);

BraidWord pure_gen(int i, int j, int n);
BraidWord block_gen(int a, int alpha, int b, int beta, int n);
BraidWord tensor(int m1, const BraidWord& b, int m2);

// Replace the string starting at bottom position k (resp. ending at top
// position k) by n parallel strings. n = 0 deletes the string.
BraidWord cable_bottom(const BraidWord& b, int k, int n);
BraidWord cable_top(const BraidWord& b, int k, int n);

// Add a string from bottom position k to top position k_top that runs behind
// every other string (or in front of every string when front is set).
BraidWord insert_strand(const BraidWord& b, int k, int k_top, bool front);

// Text form `s1 s2^-1 s3^5`; strands = 0 infers max index + 1.
BraidWord parse_braid(std::string_view text, int strands = 0);

}  // namespace tk
