#include "tanglekit/freeword.hpp"

#include <cctype>
#include <charconv>

#include "tanglekit/error.hpp"

namespace tk {

std::pair<int64_t, int64_t> exp_sums(const FreeWord2& w) {
    int64_t sx = 0, sy = 0;
    for (const auto& s : w.syllables()) {
        if (s.sym == 0)
            sx = checked_add(sx, s.exp);
        else if (s.sym == 1)
            sy = checked_add(sy, s.exp);
        else
            throw Error("word is not in the letters x, y");
    }
    return {sx, sy};
}

BraidWord subst(const FreeWord2& w, const BraidWord& X, const BraidWord& Y) {
    if (X.strands() != Y.strands()) throw Error("substitution images have different strand counts");
    BraidWord r(X.strands());
    for (const auto& s : w.syllables()) {
        if (s.sym == 0)
            r *= X.pow(s.exp);
        else if (s.sym == 1)
            r *= Y.pow(s.exp);
        else
            throw Error("word is not in the letters x, y");
    }
    return r;
}

BraidWord block_pure(Block a, Block b, int n) {
    if (a.size == 0 || b.size == 0) return BraidWord(n);
    return block_gen(a.first, a.size - 1, b.first, b.size - 1, n);
}

BraidWord f_triple(const FreeWord2& f, Block a, Block b, Block c, int n) {
    for (const Block* blk : {&a, &b, &c}) {
        if (blk->size < 0) throw Error("negative block size");
        if (blk->size > 0 && (blk->first < 1 || blk->last() > n)) throw Error("block outside 1..n");
    }
    // Non-empty blocks must be increasing and disjoint in the order a, b, c.
    int edge = 0;
    for (const Block* blk : {&a, &b, &c}) {
        if (blk->size == 0) continue;
        if (blk->first <= edge) throw Error("blocks overlap or are out of order");
        edge = blk->last();
    }
    if ((a.size == 0 || b.size == 0 || c.size == 0) && exp_sums(f) != std::pair<int64_t, int64_t>{0, 0})
        throw Error("empty block needs a word with vanishing exponent sums");
    if (f.is_identity()) return BraidWord(n);
    return subst(f, block_pure(a, b, n), block_pure(b, c, n));
}

BraidWord f_bracketed(const FreeWord2& f, int m1, int n, int m2) {
    if (m1 < 0 || m2 < 0 || n < 1) throw Error("bracket sizes out of range");
    if (m1 == 0 && exp_sums(f) != std::pair<int64_t, int64_t>{0, 0})
        throw Error("empty first block needs a word with vanishing exponent sums");
    const int total = m1 + n + m2;
    BraidWord r(total);
    for (int t = n - 1; t >= 1; --t) r *= f_triple(f, {1, m1}, {m1 + 1, t}, {m1 + t + 1, 1}, total);
    return r;
}

FreeWord2 parse_free_word(std::string_view text) {
    std::vector<Syllable> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        std::string_view tok = text.substr(pos, end - pos);
        const int col = static_cast<int>(pos) + 1;
        if (tok == "1") {
            pos = end;
            continue;
        }
        int sym;
        if (tok[0] == 'x')
            sym = 0;
        else if (tok[0] == 'y')
            sym = 1;
        else
            throw ParseError("expected x or y, got '" + std::string(tok) + "'", 1, col);
        int64_t exp = 1;
        if (tok.size() > 1) {
            if (tok[1] != '^' || tok.size() < 3) throw ParseError("expected ^<int> after letter", 1, col + 1);
            std::string_view num = tok.substr(2);
            if (num[0] == '+') num.remove_prefix(1);
            auto res = std::from_chars(num.data(), num.data() + num.size(), exp);
            if (res.ec != std::errc() || res.ptr != num.data() + num.size() || num.empty())
                throw ParseError("bad exponent '" + std::string(tok.substr(2)) + "'", 1, col + 2);
        }
        out.push_back({sym, exp});
        pos = end;
    }
    return reduce(out);
}

std::string to_string(const FreeWord2& w) {
    return w.str([](int s) { return s == 0 ? std::string("x") : s == 1 ? std::string("y") : "g" + std::to_string(s); });
}

}  // namespace tk
