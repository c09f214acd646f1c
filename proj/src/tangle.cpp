#include "tanglekit/tangle.hpp"

#include <cctype>
#include <numeric>

#include "tanglekit/error.hpp"

namespace tk {

Dir flip(Dir d) { return d == Dir::Up ? Dir::Down : Dir::Up; }
ArcOrient flip(ArcOrient a) { return a == ArcOrient::LtoR ? ArcOrient::RtoL : ArcOrient::LtoR; }

Dirs reversed_dirs(const Dirs& d) {
    Dirs r = d;
    for (auto& x : r) x = flip(x);
    return r;
}

Dirs arc_pair(ArcOrient a) {
    return a == ArcOrient::LtoR ? Dirs{Dir::Up, Dir::Down} : Dirs{Dir::Down, Dir::Up};
}

char dir_char(Dir d) { return d == Dir::Up ? 'u' : 'd'; }

std::string dirs_str(const Dirs& d) {
    std::string s;
    for (Dir x : d) s += dir_char(x);
    return s;
}

Dirs parse_dirs(std::string_view s) {
    Dirs d;
    for (char c : s) {
        if (c == 'u') d.push_back(Dir::Up);
        else if (c == 'd') d.push_back(Dir::Down);
        else if (!std::isspace(static_cast<unsigned char>(c))) throw Error(std::string("bad direction '") + c + "'");
    }
    return d;
}

Fundamental Fundamental::cap(Dirs left, ArcOrient arc, Dirs right) {
    Fundamental g;
    g.kind = Kind::A;
    g.left = std::move(left);
    g.arc = arc;
    g.right = std::move(right);
    return g;
}

Fundamental Fundamental::cup(Dirs left, ArcOrient arc, Dirs right) {
    Fundamental g = cap(std::move(left), arc, std::move(right));
    g.kind = Kind::C;
    return g;
}

Fundamental Fundamental::braid_block(BraidWord b, Dirs eps) {
    if (static_cast<int>(eps.size()) != b.strands())
        throw Error("braid block has " + std::to_string(b.strands()) + " strands but " + std::to_string(eps.size()) +
                    " labels");
    Fundamental g;
    g.kind = Kind::B;
    g.braid = std::move(b);
    g.eps = std::move(eps);
    return g;
}

Boundary boundary(const Fundamental& g) {
    Boundary r;
    if (g.kind == Kind::B) {
        r.source = g.eps;
        const Perm p = perm(g.braid);
        r.target.resize(g.eps.size());
        for (int k = 1; k <= p.size(); ++k) r.target[p(k) - 1] = g.eps[k - 1];
        return r;
    }
    Dirs wide = g.left;
    for (Dir d : arc_pair(g.arc)) wide.push_back(d);
    wide.insert(wide.end(), g.right.begin(), g.right.end());
    Dirs narrow = g.left;
    narrow.insert(narrow.end(), g.right.begin(), g.right.end());
    if (g.kind == Kind::A) {
        r.source = std::move(wide);
        r.target = std::move(narrow);
    } else {
        r.source = std::move(narrow);
        r.target = std::move(wide);
    }
    return r;
}

Tangle::Tangle(Dirs b) : source_(b), target_(std::move(b)) {}

Tangle Tangle::validate(std::vector<Fundamental> seq) {
    Dirs start;
    if (!seq.empty()) start = boundary(seq.front()).source;
    return validate(std::move(seq), std::move(start));
}

Tangle Tangle::validate(std::vector<Fundamental> seq, Dirs empty_boundary) {
    Tangle t(std::move(empty_boundary));
    if (seq.empty()) return t;
    t.source_ = boundary(seq.front()).source;
    Dirs cur = t.source_;
    for (size_t i = 0; i < seq.size(); ++i) {
        Boundary b = boundary(seq[i]);
        if (b.source != cur)
            throw Error("inconsistent tangle at junction " + std::to_string(i) + ": target " + dirs_str(cur) +
                        " does not match source " + dirs_str(b.source));
        cur = std::move(b.target);
    }
    t.target_ = std::move(cur);
    t.seq_ = std::move(seq);
    return t;
}

Dirs Tangle::level(size_t i) const {
    if (i == 0) return source_;
    return boundary(seq_.at(i - 1)).target;
}

Tangle stack(const Tangle& lower, const Tangle& upper) {
    if (lower.target() != upper.source())
        throw Error("cannot stack: " + dirs_str(lower.target()) + " vs " + dirs_str(upper.source()));
    std::vector<Fundamental> s = lower.seq();
    s.insert(s.end(), upper.seq().begin(), upper.seq().end());
    return Tangle::validate(std::move(s), lower.source());
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Skeleton skeleton(const Tangle& t) {
    Skeleton s;
    int total = 0;
    s.offset.push_back(0);
    total += static_cast<int>(t.source().size());
    for (size_t i = 0; i < t.size(); ++i) {
        s.offset.push_back(total);
        total += static_cast<int>(boundary(t[i]).target.size());
    }
    UnionFind uf(total);
    for (size_t i = 0; i < t.size(); ++i) {
        const Fundamental& g = t[i];
        auto lo = [&](int pos) { return s.id(i, pos); };
        auto hi = [&](int pos) { return s.id(i + 1, pos); };
        if (g.kind == Kind::B) {
            const Perm p = perm(g.braid);
            for (int k = 1; k <= p.size(); ++k) uf.unite(lo(k), hi(p(k)));
            continue;
        }
        const int k = g.k(), l = g.l();
        // The wide side has the arc at positions k+1, k+2.
        const bool cap = g.kind == Kind::A;
        auto wide = [&](int pos) { return cap ? lo(pos) : hi(pos); };
        auto narrow = [&](int pos) { return cap ? hi(pos) : lo(pos); };
        for (int j = 1; j <= k; ++j) uf.unite(wide(j), narrow(j));
        uf.unite(wide(k + 1), wide(k + 2));
        for (int j = 1; j <= l; ++j) uf.unite(wide(k + 2 + j), narrow(k + j));
    }
    s.comp.assign(total, -1);
    std::vector<int> label(total, -1);
    for (int x = 0; x < total; ++x) {
        int r = uf.find(x);
        if (label[r] < 0) label[r] = s.components++;
        s.comp[x] = label[r];
    }
    return s;
}

int components(const Tangle& t) { return skeleton(t).components; }
bool is_link(const Tangle& t) { return t.source().empty() && t.target().empty(); }
bool is_knot(const Tangle& t) { return is_link(t) && components(t) == 1; }

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Tangle run() {
        std::vector<Fundamental> seq;
        skip();
        if (eof()) return Tangle();
        Dirs cur;
        for (;;) {
            const size_t at = i_;
            seq.push_back(item());
            Boundary b = boundary(seq.back());
            if (seq.size() > 1 && b.source != cur)
                fail("inconsistent tangle: target " + dirs_str(cur) + " does not match source " + dirs_str(b.source),
                     at);
            cur = std::move(b.target);
            skip();
            if (eof()) break;
            expect(';');
            skip();
            // a trailing separator is allowed
            if (eof()) break;
        }
        return Tangle::validate(std::move(seq));
    }

private:
    std::string_view s_;
    size_t i_ = 0;

    bool eof() const { return i_ >= s_.size(); }

    std::pair<int, int> where(size_t at) const {
        int line = 1, col = 1;
        for (size_t j = 0; j < at && j < s_.size(); ++j) {
            if (s_[j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& msg, size_t at) {
        auto [line, col] = where(at);
        throw ParseError(msg, line, col);
    }

    void skip() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                ++i_;
            } else if (s_[i_] == '#') {
                while (!eof() && s_[i_] != '\n') ++i_;
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip();
        if (eof()) fail(std::string("expected '") + c + "' but input ended", i_);
        if (s_[i_] != c) fail(std::string("expected '") + c + "'", i_);
        ++i_;
    }

    int number() {
        skip();
        size_t b = i_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected a non-negative integer", b);
        if (i_ - b > 6) fail("integer too large", b);
        return std::stoi(std::string(s_.substr(b, i_ - b)));
    }

    Dirs dirs() {
        Dirs d;
        for (;;) {
            skip();
            if (eof()) return d;
            char c = s_[i_];
            if (c == 'u') d.push_back(Dir::Up);
            else if (c == 'd') d.push_back(Dir::Down);
            else return d;
            ++i_;
        }
    }

    Fundamental item() {
        const size_t at = i_;
        char kind = s_[i_++];
        if (kind != 'A' && kind != 'B' && kind != 'C') fail("expected A, B or C", at);
        expect('[');
        if (kind == 'B') {
            skip();
            size_t wb = i_;
            while (!eof() && s_[i_] != ';' && s_[i_] != ']') ++i_;
            std::string_view word = s_.substr(wb, i_ - wb);
            expect(';');
            Dirs eps = dirs();
            expect(']');
            if (eps.empty()) fail("braid block needs at least one strand label", at);
            try {
                return Fundamental::braid_block(parse_braid(word, static_cast<int>(eps.size())), eps);
            } catch (const Error& e) {
                fail(std::string("bad braid block: ") + e.what(), wb);
            }
        }
        const int k = number();
        expect(',');
        const int l = number();
        expect(';');
        Dirs left = dirs();
        skip();
        if (eof() || (s_[i_] != '<' && s_[i_] != '>')) fail("expected arc '<' or '>'", i_);
        const ArcOrient arc = s_[i_++] == '>' ? ArcOrient::LtoR : ArcOrient::RtoL;
        Dirs right = dirs();
        expect(']');
        if (static_cast<int>(left.size()) != k || static_cast<int>(right.size()) != l)
            fail("arc position k,l does not match the number of labels", at);
        return kind == 'A' ? Fundamental::cap(left, arc, right) : Fundamental::cup(left, arc, right);
    }
};

}  // namespace

Tangle parse_tangle(std::string_view text) { return Parser(text).run(); }

std::string serialize(const Fundamental& g) {
    if (g.kind == Kind::B) return "B[" + g.braid.str() + "; " + dirs_str(g.eps) + "]";
    std::string s = g.kind == Kind::A ? "A[" : "C[";
    s += std::to_string(g.k()) + "," + std::to_string(g.l()) + "; ";
    s += dirs_str(g.left);
    s += g.arc == ArcOrient::LtoR ? '>' : '<';
    s += dirs_str(g.right);
    return s + "]";
}

std::string serialize(const Tangle& t) {
    if (t.seq().empty() && !t.source().empty()) return "B[e; " + dirs_str(t.source()) + "]";
    std::string s;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += " ; ";
        s += serialize(t[i]);
    }
    return s;
}

nlohmann::json to_json(const Fundamental& g) {
    nlohmann::json j;
    if (g.kind == Kind::B) {
        j["type"] = "B";
        j["word"] = g.braid.str();
        j["eps"] = dirs_str(g.eps);
        return j;
    }
    j["type"] = g.kind == Kind::A ? "A" : "C";
    j["k"] = g.k();
    j["l"] = g.l();
    j["left"] = dirs_str(g.left);
    j["arc"] = g.arc == ArcOrient::LtoR ? ">" : "<";
    j["right"] = dirs_str(g.right);
    return j;
}

nlohmann::json to_json(const Tangle& t) {
    nlohmann::json j;
    j["order"] = "bottom-to-top";
    j["source"] = dirs_str(t.source());
    j["target"] = dirs_str(t.target());
    j["seq"] = nlohmann::json::array();
    for (const auto& g : t.seq()) j["seq"].push_back(to_json(g));
    return j;
}

Fundamental fundamental_from_json(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "B") {
            Dirs eps = parse_dirs(j.at("eps").get<std::string>());
            return Fundamental::braid_block(parse_braid(j.at("word").get<std::string>(), static_cast<int>(eps.size())),
                                            eps);
        }
        if (type != "A" && type != "C") throw Error("unknown fundamental tangle type '" + type + "'");
        Dirs left = parse_dirs(j.at("left").get<std::string>());
        Dirs right = parse_dirs(j.at("right").get<std::string>());
        const std::string arc = j.at("arc").get<std::string>();
        if (arc != "<" && arc != ">") throw Error("bad arc '" + arc + "'");
        if (j.contains("k") && j["k"].get<int>() != static_cast<int>(left.size())) throw Error("k does not match left");
        if (j.contains("l") && j["l"].get<int>() != static_cast<int>(right.size()))
            throw Error("l does not match right");
        const ArcOrient a = arc == ">" ? ArcOrient::LtoR : ArcOrient::RtoL;
        return type == "A" ? Fundamental::cap(left, a, right) : Fundamental::cup(left, a, right);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad tangle json: ") + e.what());
    }
}

Tangle tangle_from_json(const nlohmann::json& j) {
    try {
        std::vector<Fundamental> seq;
        for (const auto& g : j.at("seq")) seq.push_back(fundamental_from_json(g));
        Dirs b = j.contains("source") ? parse_dirs(j["source"].get<std::string>()) : Dirs{};
        Tangle t = Tangle::validate(std::move(seq), b);
        if (t.source() != b && j.contains("source")) throw Error("source does not match the sequence");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad tangle json: ") + e.what());
    }
}

}  // namespace tk
