#include "tanglekit/gt.hpp"

#include <cctype>
#include <charconv>
#include <map>

#include "tanglekit/error.hpp"

namespace tk {

GTPair::GTPair(int64_t lambda, FreeWord2 f) : lambda_(lambda), f_(std::move(f)) {
    if (lambda % 2 == 0) throw Error("lambda must be odd, got " + std::to_string(lambda));
    if (exp_sums(f_) != std::pair<int64_t, int64_t>{0, 0})
        throw Error("f must have vanishing exponent sums, got " + to_string(f_));
}

std::string GTPair::str() const { return "gt(lambda=" + std::to_string(lambda_) + "; f=" + to_string(f_) + ")"; }

GTPair parse_gt(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view t = trim(text);
    if (t.substr(0, 3) != "gt(" || t.back() != ')') throw ParseError("expected gt(lambda=<int>; f=<word>)", 1, 1);
    std::string_view body = t.substr(3, t.size() - 4);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) throw ParseError("expected ';' between lambda and f", 1, 4);
    std::string_view lam = trim(body.substr(0, semi)), fw = trim(body.substr(semi + 1));
    if (lam.substr(0, 7) != "lambda=") throw ParseError("expected lambda=<int>", 1, 4);
    if (fw.substr(0, 2) != "f=") throw ParseError("expected f=<word>", 1, static_cast<int>(semi) + 5);
    lam.remove_prefix(7);
    lam = trim(lam);
    int64_t lambda = 0;
    auto res = std::from_chars(lam.data(), lam.data() + lam.size(), lambda);
    if (res.ec != std::errc() || res.ptr != lam.data() + lam.size() || lam.empty())
        throw ParseError("bad lambda '" + std::string(lam) + "'", 1, 11);
    return GTPair(lambda, parse_free_word(fw.substr(2)));
}

FreeWord2 two_cycle_relator(const GTPair& p) {
    return p.f() * substitute(p.f(), {fy(), fx()});
}

FreeWord2 hexagon_relator(const GTPair& p) {
    const FreeWord2 x = fx(), y = fy();
    const FreeWord2 z = (x * y).inverse();
    const int64_t m = p.m();
    return substitute(p.f(), {z, x}) * z.pow(m) * substitute(p.f(), {y, z}) * y.pow(m) * p.f() * x.pow(m);
}

std::pair<BraidWord, BraidWord> pentagon_sides(const GTPair& p) {
    const auto& f = p.f();
    auto F = [&](Block a, Block b, Block c) { return f_triple(f, a, b, c, 4); };
    BraidWord lhs = F({1, 1}, {2, 1}, {3, 2}) * F({1, 2}, {3, 1}, {4, 1});
    BraidWord rhs = F({2, 1}, {3, 1}, {4, 1}) * F({1, 1}, {2, 2}, {4, 1}) * F({1, 1}, {2, 1}, {3, 1});
    return {lhs, rhs};
}

bool check_two_cycle(const GTPair& p) { return two_cycle_relator(p).is_identity(); }
bool check_hexagon(const GTPair& p) { return hexagon_relator(p).is_identity(); }

bool check_pentagon(const GTPair& p) {
    auto [lhs, rhs] = pentagon_sides(p);
    return equals(lhs, rhs);
}

bool is_gt(const GTPair& p) { return check_two_cycle(p) && check_hexagon(p) && check_pentagon(p); }

GTPair compose_gt(const GTPair& p2, const GTPair& p1) {
    const int64_t l2 = p2.lambda();
    const FreeWord2& f2 = p2.f();
    FreeWord2 f = f2 * substitute(p1.f(), {fx(l2), f2.inverse() * fy(l2) * f2});
    return GTPair(checked_mul(l2, p1.lambda()), f);
}

BraidWord gt_conjugator(const GTPair& p, int i, int n) {
    if (i < 2) return BraidWord(n);
    return f_triple(p.f(), {1, i - 1}, {i, 1}, {i + 1, 1}, n);
}

BraidWord act_on_braid(const GTPair& p, const BraidWord& b) {
    const int n = b.strands();
    std::map<int, std::pair<BraidWord, BraidWord>> conj;  // i -> (F_i^-1, F_i)
    BraidWord out(n);
    for (const auto& l : b.letters()) {
        BraidWord core = BraidWord::sigma(n, l.gen, checked_mul(p.lambda(), l.exp));
        if (l.gen == 1 || p.f().is_identity()) {
            out *= core;
            continue;
        }
        auto it = conj.find(l.gen);
        if (it == conj.end()) {
            BraidWord F = gt_conjugator(p, l.gen, n);
            it = conj.emplace(l.gen, std::make_pair(F.inverse(), F)).first;
        }
        out *= it->second.first * core * it->second.second;
    }
    return out;
}

}  // namespace tk
