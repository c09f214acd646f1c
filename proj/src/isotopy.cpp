#include "tanglekit/isotopy.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>
#include <limits>
#include <unordered_map>

#include "tanglekit/error.hpp"

namespace tk {

namespace {

using Seq = std::vector<Fundamental>;

// Generated elements carry placeholder labels; relabel fills them in.
Dirs ph(int n) { return Dirs(static_cast<size_t>(n), Dir::Up); }
Fundamental cap_at(int k, int l, ArcOrient a = ArcOrient::LtoR) { return Fundamental::cap(ph(k), a, ph(l)); }
Fundamental cup_at(int k, int l, ArcOrient a) { return Fundamental::cup(ph(k), a, ph(l)); }
Fundamental blk(const BraidWord& b) { return Fundamental::braid_block(b, ph(b.strands())); }

int out_width(const Fundamental& g) {
    if (g.kind == Kind::B) return g.braid.strands();
    return g.k() + g.l() + (g.kind == Kind::C ? 2 : 0);
}

// Strings on either side that the element does not touch. A trivial block
// touches nothing; {n, n} keeps it from constraining a run.
struct Idle {
    int left, right;
};

Idle idle(const Fundamental& g) {
    if (g.kind != Kind::B) return {g.k(), g.l()};
    const int n = g.braid.strands();
    if (g.braid.empty()) return {n, n};
    int lo = n, hi = 0;
    for (const auto& l : g.braid.letters()) {
        lo = std::min(lo, l.gen);
        hi = std::max(hi, l.gen);
    }
    return {lo - 1, n - hi - 1};
}

Fundamental strip(const Fundamental& g, int L, int R) {
    switch (g.kind) {
    case Kind::A: return cap_at(g.k() - L, g.l() - R, g.arc);
    case Kind::C: return cup_at(g.k() - L, g.l() - R, g.arc);
    default: break;
    }
    std::vector<Letter> ls;
    for (const auto& l : g.braid.letters()) ls.push_back({l.gen - L, l.exp});
    return blk(BraidWord(g.braid.strands() - L - R, ls));
}

Fundamental embed(const Fundamental& g, int L, int R) {
    switch (g.kind) {
    case Kind::A: return cap_at(g.k() + L, g.l() + R, g.arc);
    case Kind::C: return cup_at(g.k() + L, g.l() + R, g.arc);
    default: return blk(tensor(L, g.braid, R));
    }
}

BraidWord rot_braid(const BraidWord& b) {
    const int n = b.strands();
    std::vector<Letter> ls;
    for (auto it = b.letters().rbegin(); it != b.letters().rend(); ++it) ls.push_back({n - it->gen, it->exp});
    return BraidWord(n, ls);
}

// Half turn in the plane, labels left to relabel.
Seq rot_seq(const Seq& s) {
    Seq r;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (it->kind == Kind::A) r.push_back(cup_at(it->l(), it->k(), it->arc));
        else if (it->kind == Kind::C) r.push_back(cap_at(it->l(), it->k()));
        else r.push_back(blk(rot_braid(it->braid)));
    }
    return r;
}

bool same_element(const Fundamental& a, const Fundamental& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != Kind::B) return a.left == b.left && a.right == b.right && a.arc == b.arc;
    return a.eps == b.eps && a.braid.strands() == b.braid.strands() && equals(a.braid, b.braid);
}

bool same_window(const Seq& a, const Seq& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!same_element(a[i], b[i])) return false;
    return true;
}

Seq window(const Tangle& T, size_t pos, size_t len) {
    return Seq(T.seq().begin() + static_cast<long>(pos), T.seq().begin() + static_cast<long>(pos + len));
}

// Replace a window without any legality check.
Tangle splice(const Tangle& T, size_t pos, size_t len, const Seq& rep) {
    Seq s = window(T, 0, pos);
    s.insert(s.end(), rep.begin(), rep.end());
    s.insert(s.end(), T.seq().begin() + static_cast<long>(pos + len), T.seq().end());
    return Tangle::validate(std::move(s), T.source());
}

// Contiguous elements [i..j] forming a one-string tangle on a single string:
// after removing L idle strings on the left and R on the right the bottom and
// top both have width one.
struct Run {
    size_t i, j;
    int L, R;
};

// A T3 block: a single element or a one-string run.
struct Block {
    size_t i, j;
    int L, R;
    int bot, top;  // interior widths
};

struct Filter {
    const std::string* id = nullptr;
    size_t pos = 0;
    std::vector<int64_t> extra_c;
};

class Generator {
public:
    Generator(const Tangle& T, const MoveOptions& opt, const Filter* f) : T_(T), opt_(opt), f_(f) {
        widths_.push_back(static_cast<int>(T.source().size()));
        for (const auto& g : T.seq()) widths_.push_back(out_width(g));
        find_runs();
    }

    std::vector<Successor> run() {
        t3();
        t4_braid();
        t4_runs();
        t5();
        if (opt_.framed || (f_ && *f_->id == "FT6")) ft6();
        if (!opt_.framed || (f_ && *f_->id == "T6")) t6();
        if (opt_.derived) cca();
        return std::move(out_);
    }

private:
    const Tangle& T_;
    MoveOptions opt_;
    const Filter* f_;
    std::vector<int> widths_;  // widths_[i] = width of level i
    std::vector<Run> runs_;
    std::vector<Successor> out_;

    const Seq& s() const { return T_.seq(); }

    bool wanted(const char* id, size_t pos) const {
        return !f_ || (*f_->id == id && f_->pos == pos);
    }

    std::vector<int64_t> cs() const {
        std::vector<int64_t> c{1, -1};
        if (f_)
            for (int64_t x : f_->extra_c)
                if (x != 0 && std::find(c.begin(), c.end(), x) == c.end()) c.push_back(x);
        return c;
    }

    void emit(const char* id, size_t pos, size_t len, const Seq& rep, nlohmann::json params = nlohmann::json::object()) {
        if (!wanted(id, pos)) return;
        Seq full = window(T_, 0, pos);
        full.insert(full.end(), rep.begin(), rep.end());
        full.insert(full.end(), s().begin() + static_cast<long>(pos + len), s().end());
        auto r = relabel(std::move(full), T_.source());
        if (!r || r->target() != T_.target()) return;
        MoveInstance m;
        m.id = id;
        m.pos = pos;
        m.len = len;
        m.replacement = window(*r, pos, rep.size());
        m.params = std::move(params);
        out_.push_back({std::move(m), std::move(*r)});
    }

    void find_runs() {
        for (size_t i = 0; i < s().size(); ++i) {
            int L = std::numeric_limits<int>::max(), R = L;
            for (size_t j = i; j < s().size(); ++j) {
                Idle d = idle(s()[j]);
                L = std::min(L, d.left);
                R = std::min(R, d.right);
                if (j > i && widths_[i] - L - R == 1 && widths_[j + 1] - L - R == 1) runs_.push_back({i, j, L, R});
            }
        }
    }

    Seq place(size_t i, size_t j, int L, int R, int L2, int R2) const {
        Seq r;
        for (size_t x = i; x <= j; ++x) r.push_back(embed(strip(s()[x], L, R), L2, R2));
        return r;
    }

    Seq rotated(const Run& X, int L2, int R2) const {
        Seq local;
        for (size_t x = X.i; x <= X.j; ++x) local.push_back(strip(s()[x], X.L, X.R));
        Seq r;
        for (const auto& g : rot_seq(local)) r.push_back(embed(g, L2, R2));
        return r;
    }

    std::vector<Block> blocks_ending(size_t j) const {
        std::vector<Block> b;
        const auto& g = s()[j];
        if (!(g.kind == Kind::B && g.braid.empty())) {
            Idle d = idle(g);
            b.push_back({j, j, d.left, d.right, widths_[j] - d.left - d.right, widths_[j + 1] - d.left - d.right});
        }
        for (const auto& r : runs_)
            if (r.j == j) b.push_back({r.i, r.j, r.L, r.R, 1, 1});
        return b;
    }

    std::vector<Block> blocks_starting(size_t i) const {
        std::vector<Block> b;
        const auto& g = s()[i];
        if (!(g.kind == Kind::B && g.braid.empty())) {
            Idle d = idle(g);
            b.push_back({i, i, d.left, d.right, widths_[i] - d.left - d.right, widths_[i + 1] - d.left - d.right});
        }
        for (const auto& r : runs_)
            if (r.i == i) b.push_back({r.i, r.j, r.L, r.R, 1, 1});
        return b;
    }

    // Independent neighbours slide past each other.
    void t3() {
        for (size_t j = 0; j + 1 < s().size(); ++j) {
            const int w = widths_[j + 1];
            for (const Block& X : blocks_ending(j))
                for (const Block& Y : blocks_starting(j + 1)) {
                    const int dx = X.top - X.bot, dy = Y.top - Y.bot;
                    if (w - X.R <= Y.L) {  // X on the left
                        Seq rep = place(Y.i, Y.j, Y.L, Y.R, Y.L - dx, Y.R);
                        Seq up = place(X.i, X.j, X.L, X.R, X.L, X.R + dy);
                        rep.insert(rep.end(), up.begin(), up.end());
                        emit("T3", X.i, Y.j - X.i + 1, rep);
                    }
                    if (w - Y.R <= X.L) {  // Y on the left
                        Seq rep = place(Y.i, Y.j, Y.L, Y.R, Y.L, Y.R - dx);
                        Seq up = place(X.i, X.j, X.L, X.R, X.L + dy, X.R);
                        rep.insert(rep.end(), up.begin(), up.end());
                        emit("T3", X.i, Y.j - X.i + 1, rep);
                    }
                }
        }
    }

    // Caps and cups pulled through a braid block along a parallel pair.
    void t4_braid() {
        for (size_t i = 0; i < s().size(); ++i) {
            const auto& g = s()[i];
            const bool next_b = i + 1 < s().size() && s()[i + 1].kind == Kind::B;
            if (g.kind == Kind::B && i + 1 < s().size() && s()[i + 1].kind == Kind::A) {
                // Cap above the braid moves below it.
                const BraidWord& beta = g.braid;
                const int n = beta.strands();
                const int kk = s()[i + 1].k() + 1;
                const BraidWord b = cable_top(beta, kk + 1, 0);
                if (equals(cable_top(b, kk, 2), beta)) {
                    const int k = perm(b).inverse()(kk);
                    Seq rep{cap_at(k - 1, n - k - 1)};
                    if (n > 2) rep.push_back(blk(cable_bottom(b, k, 0)));
                    emit("T4", i, 2, rep);
                }
            }
            if (g.kind == Kind::A && next_b) {
                // Cap below the braid moves above it, the pair lifted behind or in front.
                const BraidWord& b0 = s()[i + 1].braid;
                const int k = g.k() + 1, m = b0.strands();
                for (int kt = 1; kt <= m + 1; ++kt)
                    for (bool front : {false, true}) {
                        const BraidWord b = cable_bottom(insert_strand(b0, k, kt, front), k, 2);
                        emit("T4", i, 2, {blk(b), cap_at(kt - 1, m + 1 - kt)}, {{"k_top", kt}, {"front", front}});
                    }
            }
            if (g.kind == Kind::C && next_b) {
                const BraidWord& beta = s()[i + 1].braid;
                const int n = beta.strands();
                const int k = g.k() + 1;
                const BraidWord b = cable_bottom(beta, k + 1, 0);
                if (equals(cable_bottom(b, k, 2), beta)) {
                    const int kt = perm(b)(k);
                    Seq rep;
                    if (n > 2) rep.push_back(blk(cable_bottom(b, k, 0)));
                    rep.push_back(cup_at(kt - 1, n - kt - 1, g.arc));
                    emit("T4", i, 2, rep);
                }
            }
            if (g.kind == Kind::B && i + 1 < s().size() && s()[i + 1].kind == Kind::C) {
                const auto& cup = s()[i + 1];
                const BraidWord& b0 = g.braid;
                const int kt = cup.k() + 1, m = b0.strands();
                for (int k = 1; k <= m + 1; ++k)
                    for (bool front : {false, true}) {
                        const BraidWord b = cable_bottom(insert_strand(b0, k, kt, front), k, 2);
                        emit("T4", i, 2, {cup_at(k - 1, m + 1 - k, cup.arc), blk(b)}, {{"k", k}, {"front", front}});
                    }
            }
        }
    }

    // A one-string run slides along its string through a neighbouring braid.
    void t4_runs() {
        for (const Run& X : runs_) {
            const int w = widths_[X.i];
            if (X.j + 1 < s().size() && s()[X.j + 1].kind == Kind::B) {
                const BraidWord& beta = s()[X.j + 1].braid;
                const int p = perm(beta)(X.L + 1);
                Seq rep{blk(beta)};
                Seq up = place(X.i, X.j, X.L, X.R, p - 1, w - p);
                rep.insert(rep.end(), up.begin(), up.end());
                emit("T4", X.i, X.j - X.i + 2, rep);
            }
            if (X.i > 0 && s()[X.i - 1].kind == Kind::B) {
                const BraidWord& beta = s()[X.i - 1].braid;
                const int q = perm(beta).inverse()(X.L + 1);
                Seq rep = place(X.i, X.j, X.L, X.R, q - 1, w - q);
                rep.push_back(blk(beta));
                emit("T4", X.i - 1, X.j - X.i + 2, rep);
            }
        }
    }

    void t5() {
        for (size_t i = 0; i + 1 < s().size(); ++i) {
            const auto& c = s()[i];
            const auto& a = s()[i + 1];
            if (c.kind == Kind::C && a.kind == Kind::A && (a.k() == c.k() + 1 || a.k() + 1 == c.k()))
                emit("T5", i, 2, {});
        }
        if (!opt_.insertions && !(f_ && *f_->id == "T5")) return;
        for (size_t lv = 0; lv <= s().size(); ++lv) {
            const int w = widths_[lv];
            for (int p = 1; p <= w; ++p)
                for (ArcOrient a : {ArcOrient::LtoR, ArcOrient::RtoL}) {
                    emit("T5", lv, 0, {cup_at(p, w - p, a), cap_at(p - 1, w - p + 1)});
                    emit("T5", lv, 0, {cup_at(p - 1, w - p + 1, a), cap_at(p, w - p)});
                }
        }
    }

    // Unframed curl: a crossing of the two legs next to a cup or cap.
    void t6() {
        for (size_t i = 0; i < s().size(); ++i) {
            const auto& g = s()[i];
            if (g.kind == Kind::C) {
                const int n = g.k() + g.l() + 2;
                for (int64_t c : cs()) {
                    const ArcOrient a = c % 2 ? flip(g.arc) : g.arc;
                    const BraidWord sig = BraidWord::sigma(n, g.k() + 1, checked_neg(c));
                    if (i + 1 < s().size() && s()[i + 1].kind == Kind::B)
                        emit("T6", i, 2, {cup_at(g.k(), g.l(), a), blk(s()[i + 1].braid * sig)}, {{"c", c}});
                    else
                        emit("T6", i, 1, {cup_at(g.k(), g.l(), a), blk(sig)}, {{"c", c}});
                }
            } else if (g.kind == Kind::A) {
                const int n = g.k() + g.l() + 2;
                for (int64_t c : cs()) {
                    const BraidWord sig = BraidWord::sigma(n, g.k() + 1, checked_neg(c));
                    if (i > 0 && s()[i - 1].kind == Kind::B)
                        emit("T6", i - 1, 2, {blk(sig * s()[i - 1].braid), cap_at(g.k(), g.l())}, {{"c", c}});
                    else
                        emit("T6", i, 1, {blk(sig), cap_at(g.k(), g.l())}, {{"c", c}});
                }
            }
        }
    }

    static bool single(const Fundamental& g, int gen, int64_t* e) {
        if (g.kind != Kind::B || g.braid.letters().size() != 1 || g.braid.letters()[0].gen != gen) return false;
        *e = g.braid.letters()[0].exp;
        return true;
    }

    // Framed curl pair: two opposite curls cancel; one of them turns the arc.
    void ft6() {
        for (size_t i = 0; i + 4 < s().size(); ++i) {
            const Fundamental* q = &s()[i];
            int64_t c = 0, c2 = 0;
            if (q[0].kind == Kind::C && q[2].kind == Kind::C && q[4].kind == Kind::A) {
                const int k = q[0].k(), l = q[0].l();
                if (single(q[1], k + 1, &c) && q[2].k() == k + 2 && q[2].l() == l && single(q[3], k + 3, &c2) &&
                    c2 == -c && q[4].k() == k + 1 && q[4].l() == l + 1)
                    emit("FT6", i, 5, {cup_at(k, l, c % 2 ? flip(q[0].arc) : q[0].arc)}, {{"c", c}});
            }
            if (q[0].kind == Kind::C && q[2].kind == Kind::A && q[4].kind == Kind::A) {
                const int k = q[4].k(), l = q[4].l();
                if (q[0].k() == k + 1 && q[0].l() == l + 1 && single(q[1], k + 3, &c) && q[2].k() == k + 2 &&
                    q[2].l() == l && single(q[3], k + 1, &c2) && c2 == -c)
                    emit("FT6", i, 5, {cap_at(k, l)}, {{"c", c}});
            }
        }
        for (size_t i = 0; i < s().size(); ++i) {
            const auto& g = s()[i];
            if (g.kind == Kind::B) continue;
            const int k = g.k(), l = g.l();
            for (int64_t c : cs())
                for (ArcOrient inner : {ArcOrient::LtoR, ArcOrient::RtoL}) {
                    if (g.kind == Kind::C) {
                        const int n = k + l + 2;
                        emit("FT6", i, 1,
                             {cup_at(k, l, c % 2 ? flip(g.arc) : g.arc), blk(BraidWord::sigma(n, k + 1, c)),
                              cup_at(k + 2, l, inner), blk(BraidWord::sigma(n + 2, k + 3, checked_neg(c))),
                              cap_at(k + 1, l + 1)},
                             {{"c", c}});
                    } else {
                        const int n = k + l + 4;
                        emit("FT6", i, 1,
                             {cup_at(k + 1, l + 1, inner), blk(BraidWord::sigma(n, k + 3, c)), cap_at(k + 2, l),
                              blk(BraidWord::sigma(n - 2, k + 1, checked_neg(c))), cap_at(k, l)},
                             {{"c", c}});
                    }
                }
        }
    }

    // A one-string run next to a cap or cup moves to the other leg, turned over.
    void cca() {
        for (const Run& X : runs_) {
            const int w = widths_[X.i];
            if (X.j + 1 < s().size() && s()[X.j + 1].kind == Kind::A) {
                const auto& a = s()[X.j + 1];
                Seq rep;
                if (X.L == a.k()) rep = rotated(X, a.k() + 1, w - a.k() - 2);
                else if (X.L == a.k() + 1) rep = rotated(X, a.k(), w - a.k() - 1);
                else continue;
                rep.push_back(a);
                emit("CCA", X.i, X.j - X.i + 2, rep);
            }
            if (X.i > 0 && s()[X.i - 1].kind == Kind::C) {
                const auto& c = s()[X.i - 1];
                Seq rep{c}, moved;
                if (X.L == c.k()) moved = rotated(X, c.k() + 1, w - c.k() - 2);
                else if (X.L == c.k() + 1) moved = rotated(X, c.k(), w - c.k() - 1);
                else continue;
                rep.insert(rep.end(), moved.begin(), moved.end());
                emit("CCA", X.i - 1, X.j - X.i + 2, rep);
            }
        }
    }
};

std::vector<Successor> generate(const Tangle& T, const MoveInstance& m) {
    MoveOptions opt;
    opt.framed = m.id == "FT6";
    opt.derived = m.id == "CCA";
    opt.insertions = m.id == "T5";
    Filter f;
    f.id = &m.id;
    f.pos = m.pos;
    if (m.params.contains("c") && m.params["c"].is_number_integer()) f.extra_c.push_back(m.params["c"].get<int64_t>());
    return Generator(T, opt, &f).run();
}

bool only_braids(const Seq& s) {
    return std::all_of(s.begin(), s.end(), [](const Fundamental& g) { return g.kind == Kind::B; });
}

// Product of a bottom-to-top list of blocks as one word.
BraidWord product(const Seq& s) {
    BraidWord b(s.front().braid.strands());
    for (const auto& g : s) b = g.braid * b;
    return b;
}

void check_direct(const MoveInstance& m, const Seq& before, const Seq& after) {
    if (m.id == "T1") {
        const Seq& gone = before.empty() ? after : before;
        const Seq& kept = before.empty() ? before : after;
        if (gone.size() != 1 || !kept.empty() || gone[0].kind != Kind::B || !is_trivial(gone[0].braid))
            throw IllegalMove("T1: only a trivial braid block may be dropped or inserted");
        return;
    }
    if (before.empty() || after.empty() || before.size() > 2 || after.size() > 2 || !only_braids(before) ||
        !only_braids(after))
        throw IllegalMove("T2: the window and its replacement must be one or two braid blocks");
    if (before.front().eps != after.front().eps || before.front().braid.strands() != after.front().braid.strands())
        throw IllegalMove("T2: boundary labels differ");
    if (!equals(product(before), product(after))) throw IllegalMove("T2: the braid products differ");
}

bool any_match(const std::vector<Successor>& cands, size_t len, const Seq& rep) {
    for (const auto& c : cands)
        if (c.move.len == len && same_window(c.move.replacement, rep)) return true;
    return false;
}

std::string key_of(const Fundamental& g) {
    if (g.kind != Kind::B) return serialize(g);
    return "B{" + normal_form_key(g.braid) + ";" + dirs_str(g.eps) + "}";
}

const char* kIds[] = {"T1", "T2", "T3", "T4", "T5", "T6", "FT6", "CCA"};

}  // namespace

MoveInstance MoveInstance::inverted(const Tangle& before) const {
    MoveInstance r = *this;
    r.len = replacement.size();
    r.replacement = window(before, pos, len);
    r.inverse = !inverse;
    return r;
}

nlohmann::json to_json(const MoveInstance& m) {
    nlohmann::json rep = nlohmann::json::array();
    for (const auto& g : m.replacement) rep.push_back(to_json(g));
    return {{"move", m.id}, {"pos", m.pos}, {"len", m.len}, {"inverse", m.inverse}, {"params", m.params},
            {"replacement", rep}};
}

MoveInstance move_from_json(const nlohmann::json& j) {
    try {
        MoveInstance m;
        m.id = j.at("move").get<std::string>();
        if (std::find(std::begin(kIds), std::end(kIds), m.id) == std::end(kIds)) throw Error("unknown move " + m.id);
        m.pos = j.at("pos").get<size_t>();
        m.len = j.at("len").get<size_t>();
        m.inverse = j.value("inverse", false);
        m.params = j.value("params", nlohmann::json::object());
        for (const auto& g : j.at("replacement")) m.replacement.push_back(fundamental_from_json(g));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad move record: ") + e.what());
    }
}

std::optional<Tangle> relabel(std::vector<Fundamental> seq, const Dirs& source) {
    Dirs cur = source;
    for (auto& g : seq) {
        const int w = static_cast<int>(cur.size());
        if (g.kind == Kind::B) {
            if (g.braid.strands() != w) return std::nullopt;
            g.eps = cur;
        } else if (g.kind == Kind::A) {
            const int k = g.k();
            if (k + 2 > w || g.l() != w - k - 2) return std::nullopt;
            if (cur[k] == cur[k + 1]) return std::nullopt;
            g = Fundamental::cap(Dirs(cur.begin(), cur.begin() + k),
                                 cur[k] == Dir::Up ? ArcOrient::LtoR : ArcOrient::RtoL,
                                 Dirs(cur.begin() + k + 2, cur.end()));
        } else {
            const int k = g.k();
            if (k > w || g.l() != w - k) return std::nullopt;
            g = Fundamental::cup(Dirs(cur.begin(), cur.begin() + k), g.arc, Dirs(cur.begin() + k, cur.end()));
        }
        cur = boundary(g).target;
    }
    return Tangle::validate(std::move(seq), source);
}

Tangle apply_move(const Tangle& T, const MoveInstance& m) {
    if (m.pos + m.len > T.size()) throw IllegalMove(m.id + ": window outside the sequence");
    Tangle R;
    try {
        R = splice(T, m.pos, m.len, m.replacement);
    } catch (const IllegalMove&) {
        throw;
    } catch (const Error& e) {
        throw IllegalMove(m.id + ": replacement does not fit: " + e.what());
    }
    if (R.source() != T.source() || R.target() != T.target()) throw IllegalMove(m.id + ": boundary changed");
    const Seq before = window(T, m.pos, m.len);
    if (m.id == "T1" || m.id == "T2") {
        check_direct(m, before, m.replacement);
        return R;
    }
    if (std::find(std::begin(kIds), std::end(kIds), m.id) == std::end(kIds)) throw IllegalMove("unknown move " + m.id);
    const bool ok = m.inverse ? any_match(generate(R, m), m.replacement.size(), before)
                              : any_match(generate(T, m), m.len, m.replacement);
    if (!ok)
        throw IllegalMove(m.id + (m.inverse ? " (inverse)" : "") + ": no instance of the move at position " +
                          std::to_string(m.pos) + " yields this replacement");
    return R;
}

Tangle replay(const Tangle& T, const std::vector<MoveInstance>& trace) {
    Tangle cur = T;
    for (const auto& m : trace) cur = apply_move(cur, m);
    return cur;
}

std::vector<Successor> successors(const Tangle& T, const MoveOptions& opt) {
    return Generator(T, opt, nullptr).run();
}

Tangle canonicalize(const Tangle& T, std::vector<MoveInstance>* trace) {
    Tangle cur = T;
    for (;;) {
        const auto& s = cur.seq();
        MoveInstance m;
        bool found = false;
        for (size_t i = 0; i < s.size() && !found; ++i) {
            if (s[i].kind != Kind::B) continue;
            if (is_trivial(s[i].braid)) {
                m.id = "T1";
                m.pos = i;
                m.len = 1;
                found = true;
            } else if (i + 1 < s.size() && s[i + 1].kind == Kind::B) {
                BraidWord b = s[i + 1].braid * s[i].braid;
                BraidWord nw = normal_word(b);
                if (nw.letters().size() < b.letters().size()) b = nw;
                m.id = "T2";
                m.pos = i;
                m.len = 2;
                m.replacement = {Fundamental::braid_block(b, s[i].eps)};
                found = true;
            }
        }
        if (!found) return cur;
        Tangle next = splice(cur, m.pos, m.len, m.replacement);
        if (trace) trace->push_back(m);
        cur = std::move(next);
    }
}

std::string state_key(const Tangle& T) {
    std::string k = dirs_str(T.source()) + "|";
    for (const auto& g : T.seq()) k += key_of(g) + ";";
    return k;
}

namespace {

// Lowest applicable reduction: zig-zag cancellation, then curl removal.
std::optional<MoveInstance> reduction(const Tangle& T, bool framed) {
    const auto& s = T.seq();
    for (size_t i = 0; i < s.size(); ++i) {
        const auto& g = s[i];
        if (i + 1 < s.size() && g.kind == Kind::C && s[i + 1].kind == Kind::A &&
            (s[i + 1].k() == g.k() + 1 || s[i + 1].k() + 1 == g.k()))
            return MoveInstance{"T5", i, 2, {}};
        if (framed) {
            if (i + 4 >= s.size()) continue;
            MoveOptions opt;
            opt.framed = true;
            const std::string id = "FT6";
            Filter f{&id, i, {}};
            for (auto& c : Generator(T, opt, &f).run())
                if (c.move.len == 5) return c.move;
            continue;
        }
        // Unframed: strip the letter on the two legs nearest the cup or cap.
        if (g.kind == Kind::C && i + 1 < s.size() && s[i + 1].kind == Kind::B) {
            const int gen = g.k() + 1;
            auto ls = s[i + 1].braid.letters();
            for (size_t x = ls.size(); x-- > 0;) {
                if (ls[x].gen == gen) {
                    const int64_t c = ls[x].exp;
                    ls.erase(ls.begin() + static_cast<long>(x));
                    const ArcOrient a = c % 2 ? flip(g.arc) : g.arc;
                    Seq rep{cup_at(g.k(), g.l(), a), blk(BraidWord(s[i + 1].braid.strands(), ls))};
                    auto r = relabel(rep, T.level(i));
                    if (!r) break;
                    return MoveInstance{"T6", i, 2, r->seq(), false, {{"c", c}}};
                }
                if (std::abs(ls[x].gen - gen) < 2) break;
            }
        }
        if (g.kind == Kind::A && i > 0 && s[i - 1].kind == Kind::B) {
            const int gen = g.k() + 1;
            auto ls = s[i - 1].braid.letters();
            for (size_t x = 0; x < ls.size(); ++x) {
                if (ls[x].gen == gen) {
                    const int64_t c = ls[x].exp;
                    ls.erase(ls.begin() + static_cast<long>(x));
                    Seq rep{blk(BraidWord(s[i - 1].braid.strands(), ls)), cap_at(g.k(), g.l())};
                    auto r = relabel(rep, T.level(i - 1));
                    if (!r) break;
                    return MoveInstance{"T6", i - 1, 2, r->seq(), false, {{"c", c}}};
                }
                if (std::abs(ls[x].gen - gen) < 2) break;
            }
        }
    }
    return std::nullopt;
}

// Canonical form with every zig-zag cancelled; search states are kept in this form.
Tangle tidy(const Tangle& T, std::vector<MoveInstance>* trace) {
    Tangle cur = canonicalize(T, trace);
    for (;;) {
        const auto& s = cur.seq();
        size_t i = 0;
        while (i + 1 < s.size() && !(s[i].kind == Kind::C && s[i + 1].kind == Kind::A &&
                                     (s[i + 1].k() == s[i].k() + 1 || s[i + 1].k() + 1 == s[i].k())))
            ++i;
        if (i + 1 >= s.size()) return cur;
        Tangle next = splice(cur, i, 2, {});
        trace->push_back(MoveInstance{"T5", i, 2, {}});
        cur = canonicalize(next, trace);
    }
}

}  // namespace

Simplified simplify_traced(const Tangle& T, bool framed) {
    Simplified out{T, {}};
    out.tangle = canonicalize(T, &out.trace);
    for (;;) {
        auto m = reduction(out.tangle, framed);
        if (!m) break;
        out.tangle = splice(out.tangle, m->pos, m->len, m->replacement);
        out.trace.push_back(std::move(*m));
        out.tangle = canonicalize(out.tangle, &out.trace);
    }
    return out;
}

Tangle simplify(const Tangle& T, bool framed) { return simplify_traced(T, framed).tangle; }

Tangle rotate(const Tangle& T) {
    Dirs src = reversed_dirs(T.target());
    std::reverse(src.begin(), src.end());
    auto r = relabel(rot_seq(T.seq()), src);
    if (!r) throw Error("rotation produced an inconsistent tangle");
    return *r;
}

Tangle transpose(const Tangle& T, bool second) {
    if (T.source().size() != 1 || T.target() != T.source())
        throw Error("transpose needs a tangle from one string to the same string");
    const Dir x = T.source()[0];
    const ArcOrient same = x == Dir::Up ? ArcOrient::LtoR : ArcOrient::RtoL;  // pair (x, flip x)
    Seq s;
    if (!second) {
        s.push_back(cup_at(1, 0, same));
        for (const auto& g : T.seq()) s.push_back(embed(g, 1, 1));
        s.push_back(cap_at(0, 1));
    } else {
        s.push_back(cup_at(0, 1, flip(same)));
        for (const auto& g : T.seq()) s.push_back(embed(g, 1, 1));
        s.push_back(cap_at(1, 0));
    }
    auto r = relabel(std::move(s), {flip(x)});
    if (!r) throw Error("transpose produced an inconsistent tangle");
    return *r;
}

Tangle standardize(const Tangle& K) {
    if (!is_knot(K)) throw Error("expected a knot (closed, one component)");
    Tangle cur = K;
    auto flip_with = [&](size_t pos, bool cup) {
        MoveOptions opt;
        const std::string id = "T6";
        const size_t at = cup ? pos : (pos > 0 && cur[pos - 1].kind == Kind::B ? pos - 1 : pos);
        Filter f{&id, at, {}};
        for (auto& c : Generator(cur, opt, &f).run()) {
            if (c.move.params.value("c", 0) != 1) continue;
            cur = apply_move(cur, c.move);
            return;
        }
        throw Error("could not standardise the knot");
    };
    if (cur[0].arc != ArcOrient::RtoL) flip_with(0, true);
    if (cur[cur.size() - 1].arc != ArcOrient::RtoL) flip_with(cur.size() - 1, false);
    return cur;
}

Tangle connected_sum(const Tangle& K1, const Tangle& K2) {
    const Tangle a = standardize(K1), b = standardize(K2);
    Seq s(b.seq().begin(), b.seq().end() - 1);
    s.insert(s.end(), a.seq().begin() + 1, a.seq().end());
    return Tangle::validate(std::move(s));
}

std::string EqVerdict::name() const {
    switch (kind) {
    case Kind::Equal: return "Equal";
    case Kind::Distinct: return "Distinct(" + invariant + ")";
    default: return "Unknown";
    }
}

nlohmann::json EqVerdict::to_json() const {
    nlohmann::json j{{"verdict", kind == Kind::Equal ? "Equal" : kind == Kind::Distinct ? "Distinct" : "Unknown"},
                     {"nodes", nodes}};
    if (kind == Kind::Equal) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& m : trace) t.push_back(tk::to_json(m));
        j["trace"] = t;
    }
    if (kind == Kind::Distinct) {
        j["invariant"] = invariant;
        j["left"] = left_value;
        j["right"] = right_value;
    }
    return j;
}

int64_t default_budget() {
    const char* v = std::getenv("TANGLEKIT_BUDGET");
    if (!v || !*v) return kDefaultBudget;
    char* end = nullptr;
    const long long b = std::strtoll(v, &end, 10);
    if (*end || b < 0) throw Error(std::string("bad TANGLEKIT_BUDGET value '") + v + "'");
    return b;
}

namespace {

EqVerdict distinct(std::string name, std::string a, std::string b) {
    EqVerdict v;
    v.kind = EqVerdict::Kind::Distinct;
    v.invariant = std::move(name);
    v.left_value = std::move(a);
    v.right_value = std::move(b);
    return v;
}

struct Node {
    Tangle t;
    int parent;
    std::vector<MoveInstance> steps;  // from the parent to this node
    size_t depth = 0;
};

struct Side {
    std::vector<Node> nodes;
    std::unordered_map<std::string, int> index;
    // Length plus depth first (shorter diagrams are closer to a meeting
    // point), then fewest crossings, then discovery order.
    std::set<std::tuple<size_t, int64_t, int>> frontier;

    void push(int id) {
        const Node& n = nodes[id];
        frontier.emplace(n.t.size() + n.depth, crossing_count(n.t), id);
    }

    // Moves from the root to node n, with the tangle each one starts from.
    std::vector<std::pair<Tangle, MoveInstance>> path(int n) const {
        std::vector<int> chain;
        for (int x = n; x >= 0; x = nodes[x].parent) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        std::vector<std::pair<Tangle, MoveInstance>> out;
        for (size_t c = 1; c < chain.size(); ++c) {
            Tangle cur = nodes[chain[c - 1]].t;
            for (const auto& m : nodes[chain[c]].steps) {
                Tangle next = splice(cur, m.pos, m.len, m.replacement);
                out.emplace_back(cur, m);
                cur = std::move(next);
            }
        }
        return out;
    }
};

std::vector<MoveInstance> invert_steps(const Tangle& start, const std::vector<MoveInstance>& steps) {
    std::vector<std::pair<Tangle, MoveInstance>> seen;
    Tangle cur = start;
    for (const auto& m : steps) {
        Tangle next = splice(cur, m.pos, m.len, m.replacement);
        seen.emplace_back(cur, m);
        cur = std::move(next);
    }
    std::vector<MoveInstance> out;
    for (auto it = seen.rbegin(); it != seen.rend(); ++it) out.push_back(it->second.inverted(it->first));
    return out;
}

}  // namespace

EqVerdict equivalent(const Tangle& T1, const Tangle& T2, bool framed, int64_t budget, const MoveOptions* options) {
    if (T1.source() != T2.source() || T1.target() != T2.target())
        return distinct("boundary", dirs_str(T1.source()) + "->" + dirs_str(T1.target()),
                        dirs_str(T2.source()) + "->" + dirs_str(T2.target()));
    const int c1 = components(T1), c2 = components(T2);
    if (c1 != c2) return distinct("components", std::to_string(c1), std::to_string(c2));
    if (is_link(T1)) {
        try {
            if (framed) {
                const int64_t w1 = writhe(T1), w2 = writhe(T2);
                if (w1 != w2) return distinct("writhe", std::to_string(w1), std::to_string(w2));
                const LaurentPoly b1 = kauffman_bracket(T1), b2 = kauffman_bracket(T2);
                if (b1 != b2) return distinct("bracket", b1.str(), b2.str());
            } else {
                const LaurentPoly j1 = jones(T1), j2 = jones(T2);
                if (j1 != j2) return distinct("jones", j1.str(), j2.str());
            }
        } catch (const Error&) {
            // Too many crossings for the state sum; fall through to the search.
        }
    }

    MoveOptions opt;
    if (options) opt = *options;
    opt.framed = framed;
    const size_t max_len = 2 * std::max(T1.size(), T2.size()) + 8;

    Simplified s1 = simplify_traced(T1, framed), s2 = simplify_traced(T2, framed);
    Side side[2];
    side[0].nodes.push_back({s1.tangle, -1, {}});
    side[1].nodes.push_back({s2.tangle, -1, {}});
    for (int k = 0; k < 2; ++k) {
        side[k].index[state_key(side[k].nodes[0].t)] = 0;
        side[k].push(0);
    }

    EqVerdict v;
    auto finish = [&](int n0, int n1) {
        v.kind = EqVerdict::Kind::Equal;
        v.trace = s1.trace;
        for (auto& [t, m] : side[0].path(n0)) v.trace.push_back(m);
        // Walk back from the meeting point to T2 by inverting its side.
        std::vector<MoveInstance> back = s2.trace;
        for (auto& [t, m] : side[1].path(n1)) back.push_back(m);
        std::vector<MoveInstance> inv = invert_steps(T2, back);
        v.trace.insert(v.trace.end(), inv.begin(), inv.end());
        return v;
    };

    {
        auto it = side[1].index.find(state_key(s1.tangle));
        if (it != side[1].index.end()) return finish(0, it->second);
    }
    int64_t nodes = 2;
    int turn = 1;
    while (nodes < budget && (!side[0].frontier.empty() || !side[1].frontier.empty())) {
        turn = 1 - turn;
        const int k = side[turn].frontier.empty() ? 1 - turn : turn;
        Side& me = side[k];
        Side& other = side[1 - k];
        const int cur = std::get<2>(*me.frontier.begin());
        me.frontier.erase(me.frontier.begin());
        const Tangle base = me.nodes[cur].t;
        for (auto& sc : successors(base, opt)) {
            std::vector<MoveInstance> steps{sc.move};
            Tangle t = tidy(sc.result, &steps);
            if (t.size() > max_len) continue;
            std::string key = state_key(t);
            if (me.index.count(key)) continue;
            const int id = static_cast<int>(me.nodes.size());
            me.nodes.push_back({std::move(t), cur, std::move(steps), me.nodes[cur].depth + 1});
            me.index.emplace(key, id);
            me.push(id);
            ++nodes;
            auto hit = other.index.find(key);
            if (hit != other.index.end()) {
                v.nodes = nodes;
                return k == 0 ? finish(id, hit->second) : finish(hit->second, id);
            }
            if (nodes >= budget) break;
        }
    }
    v.kind = EqVerdict::Kind::Unknown;
    v.nodes = nodes;
    return v;
}

}  // namespace tk
