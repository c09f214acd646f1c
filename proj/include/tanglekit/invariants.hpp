#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "tanglekit/tangle.hpp"

namespace tk {

// Integer Laurent polynomial in A.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(int64_t c) { add(0, c); }  // NOLINT: constants convert implicitly
    static LaurentPoly monomial(int64_t e, int64_t c = 1);

    const std::map<int64_t, int64_t>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int64_t coeff(int64_t e) const;
    void add(int64_t e, int64_t c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly pow(int64_t n) const;  // negative n only for monomials
    LaurentPoly mirror() const;        // A -> A^-1

    bool operator==(const LaurentPoly&) const = default;

    // `-A^4 - A^-4`; the zero polynomial prints as `0`.
    std::string str() const;
    // Same polynomial in t = A^-4, when every exponent is divisible by 4.
    std::optional<std::string> str_t() const;
    nlohmann::json to_json() const;

private:
    std::map<int64_t, int64_t> t_;
};

// -A^2 - A^-2
LaurentPoly loop_value();

inline constexpr int kDefaultCrossingCap = 24;

// Oriented crossing signs: sigma_i^e contributes e when the two strings point
// the same way at the crossing and -e otherwise.
int64_t writhe(const Tangle& L);

// Normalised so that the unknot gives 1. The empty link also gives 1.
LaurentPoly kauffman_bracket(const Tangle& L, int64_t crossing_cap = kDefaultCrossingCap);

// (-A^3)^(-writhe) <L>
LaurentPoly jones(const Tangle& L, int64_t crossing_cap = kDefaultCrossingCap);

int64_t crossing_count(const Tangle& T);

}  // namespace tk
