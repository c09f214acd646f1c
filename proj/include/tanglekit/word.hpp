#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tk {

struct Syllable {
    int sym;
    int64_t exp;
    bool operator==(const Syllable&) const = default;
};

// Freely reduced word in a free group; generators are small non-negative ints.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(const std::vector<Syllable>& syllables);

    static FreeWord gen(int sym, int64_t exp = 1);

    const std::vector<Syllable>& syllables() const { return s_; }
    bool is_identity() const { return s_.empty(); }
    std::size_t size() const { return s_.size(); }

    FreeWord inverse() const;
    FreeWord pow(int64_t e) const;
    FreeWord operator*(const FreeWord& o) const;
    FreeWord& operator*=(const FreeWord& o);

    bool operator==(const FreeWord&) const = default;
    auto operator<=>(const FreeWord& o) const {
        return std::lexicographical_compare_three_way(
            s_.begin(), s_.end(), o.s_.begin(), o.s_.end(), [](const Syllable& a, const Syllable& b) {
                if (auto c = a.sym <=> b.sym; c != 0) return c;
                return a.exp <=> b.exp;
            });
    }

    std::string str(const std::function<std::string(int)>& name) const;

private:
    void push(int sym, int64_t exp);
    std::vector<Syllable> s_;
};

// Free reduction of an arbitrary syllable list.
FreeWord reduce(const std::vector<Syllable>& syllables);

// Image of w under sym -> images[sym].
FreeWord substitute(const FreeWord& w, const std::vector<FreeWord>& images);

}  // namespace tk
