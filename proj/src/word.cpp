#include "tanglekit/word.hpp"

#include "tanglekit/error.hpp"

namespace tk {

FreeWord::FreeWord(const std::vector<Syllable>& syllables) {
    for (const auto& s : syllables) push(s.sym, s.exp);
}

FreeWord FreeWord::gen(int sym, int64_t exp) {
    FreeWord w;
    w.push(sym, exp);
    return w;
}

void FreeWord::push(int sym, int64_t exp) {
    if (exp == 0) return;
    if (!s_.empty() && s_.back().sym == sym) {
        s_.back().exp = checked_add(s_.back().exp, exp);
        if (s_.back().exp == 0) s_.pop_back();
        return;
    }
    s_.push_back({sym, exp});
}

FreeWord FreeWord::inverse() const {
    FreeWord w;
    for (auto it = s_.rbegin(); it != s_.rend(); ++it) w.s_.push_back({it->sym, checked_neg(it->exp)});
    return w;
}

FreeWord FreeWord::pow(int64_t e) const {
    if (e < 0) return inverse().pow(checked_neg(e));
    if (s_.size() == 1) return gen(s_[0].sym, checked_mul(s_[0].exp, e));
    FreeWord result, base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

FreeWord& FreeWord::operator*=(const FreeWord& o) {
    for (const auto& s : o.s_) push(s.sym, s.exp);
    return *this;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
    FreeWord w = *this;
    w *= o;
    return w;
}

std::string FreeWord::str(const std::function<std::string(int)>& name) const {
    if (s_.empty()) return "1";
    std::string out;
    for (const auto& s : s_) {
        if (!out.empty()) out += ' ';
        out += name(s.sym);
        if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
}

FreeWord reduce(const std::vector<Syllable>& syllables) { return FreeWord(syllables); }

FreeWord substitute(const FreeWord& w, const std::vector<FreeWord>& images) {
    FreeWord out;
    for (const auto& s : w.syllables()) {
        if (s.sym < 0 || static_cast<std::size_t>(s.sym) >= images.size())
            throw Error("substitution has no image for generator " + std::to_string(s.sym));
        out *= images[s.sym].pow(s.exp);
    }
    return out;
}

}  // namespace tk
