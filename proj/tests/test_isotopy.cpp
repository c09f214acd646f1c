#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tanglekit/error.hpp"
#include "tanglekit/isotopy.hpp"

using namespace tk;

namespace {

const Dir U = Dir::Up, D = Dir::Down;

const char* kUnknot = "C[0,0; <] ; A[0,0; <]";
const char* kTrefoil = "C[0,0; <] ; C[1,1; d<u] ; B[s1^3; dduu] ; A[1,1; d<u] ; A[0,0; <]";
const char* kKink = "C[0,0; <] ; B[s1; du] ; A[0,0; >]";

Tangle P(const char* s) { return parse_tangle(s); }

// Every successor must replay through apply_move and keep the boundary and
// component count.
void check_successor(const Tangle& T, const Successor& s) {
    CHECK(s.result.source() == T.source());
    CHECK(s.result.target() == T.target());
    CHECK(components(s.result) == components(T));
    Tangle again = apply_move(T, s.move);
    CHECK(state_key(again) == state_key(s.result));
    // The inverse instance undoes it.
    Tangle back = apply_move(s.result, s.move.inverted(T));
    CHECK(state_key(back) == state_key(T));
}

Tangle random_walk_step(const Tangle& T, const MoveOptions& opt, std::mt19937& rng, Successor* used) {
    auto all = successors(T, opt);
    REQUIRE(!all.empty());
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    *used = all[pick(rng)];
    return used->result;
}

}  // namespace

TEST_CASE("worked move examples") {
    // Zig-zag: cup at k then cap at k+1 cancels.
    Tangle zig = P("C[1,0; u <] ; A[0,1; > u]");
    Tangle id = apply_move(zig, MoveInstance{"T5", 0, 2, {}});
    CHECK(id.size() == 0);
    CHECK(id.source() == Dirs{U});

    Tangle two = P("C[0,0; <] ; B[s1; du] ; B[s1^-2; ud] ; A[0,0; >]");
    MoveInstance merge{"T2", 1, 2, {Fundamental::braid_block(parse_braid("s1^-1", 2), {D, U})}};
    Tangle merged = apply_move(two, merge);
    CHECK(merged.size() == 3);
    MoveInstance wrong{"T2", 1, 2, {Fundamental::braid_block(parse_braid("s1", 2), {D, U})}};
    CHECK_THROWS_WITH_AS(apply_move(two, wrong), doctest::Contains("T2"), IllegalMove);

    // sigma_{k+1} above a cup: the cup with its arc flipped.
    Tangle curl = P(kKink);
    MoveInstance t6{"T6", 0, 2, {Fundamental::cup({}, ArcOrient::LtoR, {}),
                                 Fundamental::braid_block(BraidWord(2), {U, D})}, false, {{"c", 1}}};
    Tangle flat = apply_move(curl, t6);
    CHECK(flat[0].arc == ArcOrient::LtoR);
    Tangle circle = apply_move(flat, MoveInstance{"T1", 1, 1, {}});
    CHECK(serialize(circle) == "C[0,0; >] ; A[0,0; >]");

    // A replacement that no move produces.
    MoveInstance bogus{"T3", 0, 2, {Fundamental::cup({}, ArcOrient::RtoL, {}), Fundamental::cap({}, ArcOrient::RtoL, {})}};
    CHECK_THROWS_AS(apply_move(P("C[0,0; <] ; A[0,0; <] ; C[0,0; <] ; A[0,0; <]"), bogus), IllegalMove);
    CHECK_THROWS_AS(apply_move(curl, MoveInstance{"T1", 1, 1, {}}), IllegalMove);
}

TEST_CASE("relabel") {
    Tangle t = P(kTrefoil);
    std::vector<Fundamental> s = t.seq();
    for (auto& g : s) {
        if (g.kind == Kind::B) g.eps.assign(g.eps.size(), U);
        else if (g.kind == Kind::A) g.arc = ArcOrient::LtoR;
    }
    auto r = relabel(s, {});
    REQUIRE(r);
    CHECK(*r == t);
    // A cap on two parallel strings cannot be labelled.
    CHECK(relabel(P("C[0,0; <] ; C[1,1; d<u]").seq(), {}).has_value());
    auto bad = P("C[0,0; <] ; C[0,2; > du]").seq();
    bad.push_back(Fundamental::cap({U}, ArcOrient::LtoR, {U}));
    CHECK_FALSE(relabel(bad, {}));
}

TEST_CASE("simplify") {
    CHECK(serialize(simplify(P("C[0,0; <] ; B[e; du] ; A[0,0; <]"), false)) == kUnknot);
    CHECK(simplify(P("C[1,0; u <] ; A[0,1; > u]"), false).size() == 0);
    CHECK(simplify(P(kKink), false).size() == 2);
    // Framed: a single curl stays.
    CHECK(crossing_count(simplify(P(kKink), true)) == 1);
    // Framed: a cancelling curl pair goes.
    Tangle pair = P("C[0,0; <] ; B[s1; du] ; C[2,0; ud <] ; B[s3^-1; uddu] ; A[1,1; u < d] ; A[0,0; >]");
    CHECK(writhe(pair) == 0);
    CHECK(simplify(pair, true).size() == 2);
    // Already simple.
    CHECK(simplify(P(kTrefoil), false) == P(kTrefoil));

    std::mt19937 rng(3);
    for (int t = 0; t < 60; ++t) {
        Tangle L = tktest::random_link(rng, 8, 6, 3);
        for (bool framed : {false, true}) {
            Simplified s = simplify_traced(L, framed);
            CHECK(state_key(replay(L, s.trace)) == state_key(s.tangle));
            CHECK(s.tangle.size() <= L.size());
            if (framed) {
                CHECK(writhe(s.tangle) == writhe(L));
                CHECK(kauffman_bracket(s.tangle) == kauffman_bracket(L));
            } else {
                CHECK(jones(s.tangle) == jones(L));
            }
        }
    }
}

TEST_CASE("random legal moves preserve boundary, components and jones") {
    std::mt19937 rng(11);
    MoveOptions opt;
    opt.insertions = true;
    int applied = 0;
    for (int t = 0; t < 40; ++t) {
        Tangle T = tktest::random_link(rng, 7, 5, 2);
        if (crossing_count(T) > 6) continue;
        const LaurentPoly j = jones(T);
        for (int step = 0; step < 15; ++step) {
            Successor s;
            Tangle next = random_walk_step(T, opt, rng, &s);
            check_successor(T, s);
            ++applied;
            if (crossing_count(next) <= 12) CHECK(jones(next) == j);
            T = simplify(next, false).size() + 4 < next.size() ? simplify(next, false) : next;
            if (T.size() > 16) break;
        }
    }
    CHECK(applied >= 500);

    // Nested one-string pieces exercise the cap/cup carrying move.
    const Tangle start = P("C[0,0; <] ; C[1,1; d<u] ; B[s1^3; dduu] ; A[1,1; d<u] ; C[1,1; d<u] ; "
                           "B[s2^2 s1 s3^2 s1^-1; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    const LaurentPoly j0 = jones(start);
    for (int walk = 0; walk < 30; ++walk) {
        Tangle T = start;
        for (int step = 0; step < 5; ++step) {
            Successor s;
            Tangle next = random_walk_step(T, MoveOptions{}, rng, &s);
            check_successor(T, s);
            if (crossing_count(next) > 16) break;
            CHECK(jones(next) == j0);
            T = next;
        }
    }
}

TEST_CASE("framed moves preserve writhe and the raw bracket") {
    std::mt19937 rng(12);
    MoveOptions opt;
    opt.framed = true;
    opt.insertions = true;
    int applied = 0;
    for (int t = 0; t < 80; ++t) {
        Tangle T = tktest::random_link(rng, 7, 5, 2);
        if (crossing_count(T) > 6) continue;
        const LaurentPoly b = kauffman_bracket(T);
        const int64_t w = writhe(T);
        for (int step = 0; step < 15; ++step) {
            Successor s;
            Tangle next = random_walk_step(T, opt, rng, &s);
            check_successor(T, s);
            ++applied;
            CHECK(s.move.id != "T6");
            CHECK(writhe(next) == w);
            if (crossing_count(next) <= 14) CHECK(kauffman_bracket(next) == b);
            T = next.size() > 16 ? simplify(next, true) : next;
        }
    }
    CHECK(applied >= 300);
}

TEST_CASE("moves on open tangles") {
    std::mt19937 rng(17);
    Tangle T = P("C[1,1; u < d] ; B[s2 s1^-1; udud] ; A[0,2; < ud] ; B[s1^2; ud]");
    for (int step = 0; step < 60; ++step) {
        Successor s;
        Tangle next = random_walk_step(T, MoveOptions{}, rng, &s);
        check_successor(T, s);
        T = next.size() > 12 ? simplify(next, false) : next;
    }
}

TEST_CASE("trace json round trip") {
    Simplified s = simplify_traced(P("C[0,0; <] ; B[s1 s1^-1; du] ; B[s1; du] ; A[0,0; >]"), false);
    std::vector<MoveInstance> back;
    for (const auto& m : s.trace) back.push_back(move_from_json(nlohmann::json::parse(to_json(m).dump())));
    CHECK(replay(P("C[0,0; <] ; B[s1 s1^-1; du] ; B[s1; du] ; A[0,0; >]"), back) == s.tangle);
    CHECK_THROWS_AS(move_from_json(nlohmann::json{{"move", "T9"}}), Error);
}

TEST_CASE("rotation") {
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
        Tangle L = tktest::random_link(rng, 8, 5, 3);
        Tangle r = rotate(L);
        CHECK(rotate(r) == L);
        CHECK(components(r) == components(L));
        CHECK(kauffman_bracket(r) == kauffman_bracket(L));
        CHECK(writhe(r) == writhe(L));
    }
    Tangle strand = P("C[1,0; u >] ; B[s2; uud] ; A[0,1; > u]");
    CHECK(rotate(strand).source() == Dirs{D});
}

TEST_CASE("equivalent: verdicts") {
    EqVerdict v = equivalent(P(kUnknot), P(kTrefoil), false, 100);
    CHECK(v.kind == EqVerdict::Kind::Distinct);
    CHECK(v.invariant == "jones");
    CHECK(v.name() == "Distinct(jones)");

    v = equivalent(Tangle({U}), Tangle({D}), false, 100);
    CHECK(v.invariant == "boundary");
    v = equivalent(P(kUnknot), P("C[0,0; <] ; A[0,0; <] ; C[0,0; <] ; A[0,0; <]"), false, 100);
    CHECK(v.invariant == "components");
    v = equivalent(P(kKink), P(kUnknot), true, 100);
    CHECK(v.invariant == "writhe");

    Tangle T = P("C[0,0; <] ; C[1,1; d<u] ; B[s1^2 s2 s2^-1; dduu] ; B[s1; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    v = equivalent(T, simplify(T, false), false, kDefaultBudget);
    REQUIRE(v.equal());
    CHECK(state_key(replay(T, v.trace)) == state_key(simplify(T, false)));

    Tangle big1 = P("C[0,0; <] ; C[1,1; d<u] ; B[s1^2 s2^2 s3^-2 s2^2; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    Tangle big2 = P("C[0,0; <] ; C[1,1; d<u] ; B[s2^2 s1^-2 s3^2 s2^-2; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    if (jones(big1) == jones(big2)) CHECK(equivalent(big1, big2, false, 0).kind != EqVerdict::Kind::Distinct);
    CHECK(equivalent(big1, big2, false, 0).kind != EqVerdict::Kind::Equal);
}

TEST_CASE("equivalent finds short isotopies") {
    // A curl slid to the other side of a cap, then removed.
    Tangle a = P("C[0,0; <] ; C[1,1; d<u] ; B[s1^3; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    Tangle b = P("C[0,0; <] ; C[1,1; d<u] ; B[s3^3; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    EqVerdict v = equivalent(a, b, false, kDefaultBudget);
    REQUIRE(v.equal());
    CHECK(state_key(replay(a, v.trace)) == state_key(b));

    // Diagrams scrambled by a few random moves are found again.
    std::mt19937 rng(29);
    const char* knots[] = {kTrefoil, kUnknot, "C[0,0; <] ; C[1,1; d<u] ; B[s1^2 s2^-2; dduu] ; A[1,1; d<u] ; A[0,0; <]"};
    for (const char* k : knots)
        for (int rep = 0; rep < 4; ++rep) {
            Tangle T = P(k);
            for (int step = 0; step < 3; ++step) {
                Successor sc;
                T = random_walk_step(T, MoveOptions{}, rng, &sc);
            }
            v = equivalent(T, P(k), false, kDefaultBudget);
            REQUIRE(v.equal());
            CHECK(state_key(replay(T, v.trace)) == state_key(P(k)));
        }
}

TEST_CASE("transpose") {
    Tangle up({U});
    Tangle tu = transpose(up);
    CHECK(tu.source() == Dirs{D});
    CHECK(equivalent(tu, Tangle({D}), false, kDefaultBudget).equal());
    CHECK(equivalent(transpose(up, true), Tangle({D}), false, kDefaultBudget).equal());

    Tangle kink = P("C[1,0; u >] ; B[s2; uud] ; A[0,1; > u]");
    CHECK(kink.source() == Dirs{U});
    for (bool framed : {false, true}) {
        const Tangle t1 = transpose(kink), t2 = transpose(kink, true);
        CHECK(equivalent(t1, t2, framed, kDefaultBudget).equal());
        CHECK(equivalent(transpose(t1), kink, framed, kDefaultBudget).equal());
    }
    CHECK_THROWS_AS(transpose(Tangle({U, D})), Error);
    CHECK_THROWS_AS(transpose(P("C[0,1; < u]")), Error);
}

TEST_CASE("caps and cups commute with one-string tangles") {
    // Lp on the left leg and Rp on the right leg of a cup (or below a cap).
    auto legs = [](const Tangle& Lp, const Tangle& Rp, bool cup) {
        const Dir l = Lp.source()[0], r = Rp.source()[0];
        std::vector<Fundamental> s;
        if (cup) s.push_back(Fundamental::cup({}, l == U ? ArcOrient::LtoR : ArcOrient::RtoL, {}));
        for (const auto& g : Lp.seq()) {
            Fundamental h = g;
            if (h.kind == Kind::B) h.braid = tensor(0, h.braid, 1);
            else h.right.push_back(r);
            s.push_back(h);
        }
        for (const auto& g : Rp.seq()) {
            Fundamental h = g;
            if (h.kind == Kind::B) h.braid = tensor(1, h.braid, 0);
            else h.left.insert(h.left.begin(), l);
            s.push_back(h);
        }
        if (!cup) s.push_back(Fundamental::cap({}, ArcOrient::LtoR, {}));
        auto t = relabel(s, cup ? Dirs{} : Dirs{l, r});
        REQUIRE(t);
        return *t;
    };
    const std::vector<Tangle> pieces{Tangle({U}), P("C[1,0; u >] ; B[s2; uud] ; A[0,1; > u]")};
    for (const Tangle& X : pieces) {
        const Tangle Xt = transpose(X);
        const Tangle e({flip(X.source()[0])});
        const Tangle ex({X.source()[0]});
        for (bool framed : {false, true})
            for (bool cup : {true, false}) {
                const std::pair<Tangle, Tangle> eqs[] = {{legs(X, e, cup), legs(ex, Xt, cup)},
                                                         {legs(e, X, cup), legs(Xt, ex, cup)}};
                for (const auto& [lhs, rhs] : eqs) {
                    EqVerdict v = equivalent(lhs, rhs, framed, kDefaultBudget);
                    CHECK(v.equal());
                    if (v.equal()) CHECK(state_key(replay(lhs, v.trace)) == state_key(rhs));
                }
            }
    }
}

TEST_CASE("connected sum") {
    Tangle unknot = P(kUnknot), tre = P(kTrefoil);
    Tangle s = connected_sum(unknot, tre);
    CHECK(is_knot(s));
    CHECK(equivalent(s, tre, false, kDefaultBudget).equal());
    CHECK(equivalent(connected_sum(tre, unknot), tre, false, kDefaultBudget).equal());
    // Arc orientations are normalised first.
    Tangle odd = P("C[0,0; >] ; B[s1^3; ud] ; A[0,0; <]");
    CHECK(standardize(odd)[0].arc == ArcOrient::RtoL);
    CHECK(is_knot(connected_sum(odd, odd)));
    CHECK(jones(connected_sum(tre, tre)) == jones(tre) * jones(tre));
    CHECK_THROWS_AS(connected_sum(tre, Tangle({U})), Error);

    Tangle mir = P("C[0,0; <] ; C[1,1; d<u] ; B[s1^-3; dduu] ; A[1,1; d<u] ; A[0,0; <]");
    EqVerdict v = equivalent(connected_sum(tre, mir), connected_sum(mir, tre), false, kDefaultBudget);
    REQUIRE(v.equal());
    CHECK(state_key(replay(connected_sum(tre, mir), v.trace)) == state_key(connected_sum(mir, tre)));
}

TEST_CASE("budget from the environment") {
    CHECK(default_budget() >= 0);
}
