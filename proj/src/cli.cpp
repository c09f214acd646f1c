#include "tanglekit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tanglekit/error.hpp"
#include "tanglekit/gt.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/isotopy.hpp"
#include "tanglekit/knotaction.hpp"

namespace tk::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Tangle load(const std::string& path) { return parse_tangle(slurp(path)); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream o(path);
    if (!o) throw UsageError("cannot write " + path);
    o << text;
}

// Transition rows moving every string from its upper column to its lower one.
void slide(std::vector<std::string>& rows, const std::vector<int>& from, const std::vector<int>& to) {
    int steps = 0;
    for (size_t i = 0; i < from.size(); ++i) steps = std::max(steps, std::abs(to[i] - from[i]));
    for (int t = 1; t < steps; ++t) {
        std::string r;
        for (size_t i = 0; i < from.size(); ++i) {
            const int d = to[i] - from[i];
            const int c = from[i] + (d > 0 ? std::min(t, d) : -std::min(t, -d));
            if (static_cast<int>(r.size()) <= c) r.resize(c + 1, ' ');
            r[c] = (c == to[i]) ? '|' : d > 0 ? '\\' : '/';
        }
        rows.push_back(r);
    }
}

std::string bars(int w) {
    std::string r(std::max(0, 2 * w - 1), ' ');
    for (int j = 0; j < w; ++j) r[2 * j] = '|';
    return r;
}

std::string level_row(const Dirs& d) {
    std::string r(std::max<int>(0, 2 * static_cast<int>(d.size()) - 1), ' ');
    for (size_t j = 0; j < d.size(); ++j) r[2 * j] = d[j] == Dir::Up ? '^' : 'v';
    return r;
}

}  // namespace

std::string render(const Tangle& T) {
    std::vector<std::pair<std::string, std::string>> rows;  // picture, note
    auto push = [&](std::vector<std::string> block, const std::string& note) {
        for (size_t i = 0; i < block.size(); ++i) rows.push_back({block[i], i == 0 ? note : ""});
    };
    for (size_t idx = T.size(); idx-- > 0;) {
        const Fundamental& g = T[idx];
        const Dirs upper = T.level(idx + 1);
        const int w = static_cast<int>(upper.size()), k = g.k();
        std::vector<std::string> b{level_row(upper)};
        if (g.kind == Kind::A) {
            std::vector<int> from, to;
            for (int j = 0; j < w; ++j) {
                from.push_back(2 * j);
                to.push_back(2 * (j < k ? j : j + 2));
            }
            slide(b, from, to);
            std::string r = bars(w + 2);
            r[2 * k] = '.';
            r[2 * k + 1] = '-';
            r[2 * k + 2] = '.';
            b.push_back(r);
        } else if (g.kind == Kind::C) {
            std::string r = bars(w);
            r[2 * k] = '`';
            r[2 * k + 1] = '-';
            r[2 * k + 2] = '\'';
            b.push_back(r);
            std::vector<int> from, to;
            for (int j = 0; j < w; ++j) {
                if (j == k || j == k + 1) continue;
                from.push_back(2 * j);
                to.push_back(2 * (j < k ? j : j - 2));
            }
            slide(b, from, to);
        } else {
            if (g.braid.empty()) b.push_back(bars(w));
            for (const auto& l : g.braid.letters())
                for (int64_t r = 0; r < std::llabs(l.exp); ++r) {
                    const int c = 2 * (l.gen - 1);
                    std::string r1 = bars(w), r2 = bars(w), r3 = bars(w);
                    r1[c] = '\\', r1[c + 2] = '/';
                    r2[c] = ' ', r2[c + 2] = ' ', r2[c + 1] = l.exp > 0 ? '/' : '\\';
                    r3[c] = '/', r3[c + 2] = '\\';
                    b.insert(b.end(), {r1, r2, r3});
                }
        }
        push(b, serialize(g));
    }
    push({level_row(T.source())}, "");
    size_t width = 0;
    for (auto& [p, n] : rows) width = std::max(width, p.size());
    std::string out = "# top first; ^ up, v down; '/' marks s_i, '\\' marks s_i^-1\n";
    for (auto& [p, n] : rows) {
        std::string line = p;
        if (!n.empty()) line += std::string(width - p.size() + 3, ' ') + n;
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tangle calculus, isotopy search and the GT action on knots", "tanglekit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output and diagnostics");

    std::string a, b, gt_text, b4_text, out_prefix;
    bool framed = false;
    int64_t budget = -1;

    auto* parse = app.add_subcommand("parse", "validate a tangle file and echo it");
    parse->add_option("file", a, "tangle file (.tgl), - for stdin")->required();
    auto* simp = app.add_subcommand("simplify", "greedy simplification with its move trace");
    simp->add_option("file", a)->required();
    simp->add_flag("--framed", framed, "use the framed move set");
    auto* inv = app.add_subcommand("invariants", "components, writhe, bracket and jones");
    inv->add_option("file", a)->required();
    auto* sum = app.add_subcommand("sum", "connected sum of two knots");
    sum->add_option("first", a)->required();
    sum->add_option("second", b)->required();
    auto* mir = app.add_subcommand("mirror", "mirror image of a knot");
    mir->add_option("file", a)->required();
    auto* act = app.add_subcommand("act", "image of a knot under a GT pair, as a fraction");
    act->add_option("--gt", gt_text, "pair, e.g. 'gt(lambda=-1; f=1)'")->required();
    act->add_option("file", a)->required();
    act->add_option("--out", out_prefix, "write PREFIX.num.tgl and PREFIX.den.tgl");
    auto* ver = app.add_subcommand("verify-gt", "check the two-cycle, hexagon and pentagon relations");
    ver->add_option("pair", gt_text)->required();
    auto* eq = app.add_subcommand("equiv", "bounded isotopy search");
    eq->add_option("first", a)->required();
    eq->add_option("second", b)->required();
    eq->add_option("--budget", budget, "node budget (default TANGLEKIT_BUDGET or 20000)")
        ->check(CLI::NonNegativeNumber);
    eq->add_flag("--framed", framed, "use the framed move set");
    auto* tb = app.add_subcommand("two-bridge", "two-bridge template around a 4-strand braid");
    tb->add_option("--b4", b4_text, "braid word, e.g. 's1 s2^-1 s3^2'")->required();
    auto* ren = app.add_subcommand("render", "text picture of a tangle");
    ren->add_option("file", a)->required();

    auto fail = [&](const char* kind, const std::string& msg, int code) {
        if (as_json) err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
        else err << "tanglekit: " << msg << "\n";
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
        return fail("usage", e.what(), 2);
    }

    try {
        json j;
        std::string text;
        if (*parse) {
            Tangle T = load(a);
            j = {{"tangle", serialize(T)}, {"elements", to_json(T)}, {"source", dirs_str(T.source())},
                 {"target", dirs_str(T.target())}, {"components", components(T)}, {"is_knot", is_knot(T)}};
            text = serialize(T) + "\n";
        } else if (*simp) {
            Simplified s = simplify_traced(load(a), framed);
            json tr = json::array();
            for (const auto& m : s.trace) tr.push_back(to_json(m));
            j = {{"tangle", serialize(s.tangle)}, {"framed", framed}, {"trace", tr}};
            text = serialize(s.tangle) + "\n# " + std::to_string(s.trace.size()) + " moves\n";
        } else if (*inv) {
            Tangle T = load(a);
            j = {{"components", components(T)}, {"crossings", crossing_count(T)}};
            text = "components: " + std::to_string(components(T)) + "\ncrossings: " + std::to_string(crossing_count(T)) + "\n";
            if (is_link(T)) {
                const int64_t w = writhe(T);
                const LaurentPoly br = kauffman_bracket(T), jo = jones(T);
                const auto jt = jo.str_t();
                j["writhe"] = w;
                j["bracket"] = br.to_json();
                j["jones"] = jo.to_json();
                j["jones_t"] = jt ? json(*jt) : json(nullptr);
                text += "writhe: " + std::to_string(w) + "\nbracket: " + br.str() + "\njones: " + jo.str() + "\n";
                if (jt) text += "jones(t): " + *jt + "\n";
            }
        } else if (*sum) {
            Tangle S = connected_sum(load(a), load(b));
            j = {{"tangle", serialize(S)}};
            text = serialize(S) + "\n";
        } else if (*mir) {
            Tangle M = mirror(load(a));
            j = {{"tangle", serialize(M)}};
            text = serialize(M) + "\n";
        } else if (*act) {
            const GTPair p = parse_gt(gt_text);
            const Tangle K = load(a);
            KnotFraction x = act_knot(p, K);
            const std::string head = "# " + p.str() + " alpha(K)=" + std::to_string(alpha(K));
            const std::string num = head + " numerator alpha=" + std::to_string(alpha(x.num)) + "\n" + serialize(x.num) + "\n";
            const std::string den = head + " denominator Lambda_f^" + std::to_string(alpha(K)) +
                                    " alpha=" + std::to_string(alpha(x.den)) + "\n" + serialize(x.den) + "\n";
            if (!out_prefix.empty()) {
                write_file(out_prefix + ".num.tgl", num);
                write_file(out_prefix + ".den.tgl", den);
            }
            j = x.to_json();
            j["pair"] = p.str();
            j["alpha"] = alpha(K);
            text = num + den;
        } else if (*ver) {
            const GTPair p = parse_gt(gt_text);
            auto [lhs, rhs] = pentagon_sides(p);
            const bool c2 = check_two_cycle(p), hx = check_hexagon(p), pe = equals(lhs, rhs);
            j = {{"pair", p.str()},
                 {"two_cycle", {{"holds", c2}, {"witness", to_string(two_cycle_relator(p))}}},
                 {"hexagon", {{"holds", hx}, {"witness", to_string(hexagon_relator(p))}}},
                 {"pentagon", {{"holds", pe}, {"left", lhs.str()}, {"right", rhs.str()}}},
                 {"is_gt", c2 && hx && pe}};
            auto yn = [](bool v) { return v ? std::string("true") : std::string("false"); };
            text = p.str() + "\ntwo-cycle: " + yn(c2) + "  (relator " + to_string(two_cycle_relator(p)) + ")\n" +
                   "hexagon: " + yn(hx) + "  (relator " + to_string(hexagon_relator(p)) + ")\n" +
                   "pentagon: " + yn(pe) + "  (" + lhs.str() + " vs " + rhs.str() + ")\n";
        } else if (*eq) {
            const Tangle T1 = load(a), T2 = load(b);
            const int64_t n = budget >= 0 ? budget : default_budget();
            EqVerdict v = equivalent(T1, T2, framed, n);
            j = v.to_json();
            j["framed"] = framed;
            j["budget"] = n;
            text = v.name() + " (" + std::to_string(v.nodes) + " nodes)\n";
            if (v.kind == EqVerdict::Kind::Distinct) text += v.left_value + " vs " + v.right_value + "\n";
            for (const auto& m : v.trace) text += to_json(m).dump() + "\n";
        } else if (*tb) {
            const BraidWord w = parse_braid(b4_text, 4);
            if (w.strands() != 4) throw Error("two-bridge braid must have 4 strands");
            auto form = TwoBridgeForm::oriented(w);
            if (!form) throw Error("no orientation fill for this braid");
            Tangle K = two_bridge(*form);
            j = {{"b4", w.str()}, {"tangle", serialize(K)}, {"components", components(K)}};
            text = serialize(K) + "\n";
        } else if (*ren) {
            text = render(load(a));
            j = {{"diagram", text}};
        }
        out << (as_json ? j.dump() + "\n" : text);
        return 0;
    } catch (const UsageError& e) {
        return fail("usage", e.what(), 2);
    } catch (const Error& e) {
        return fail("domain", e.what(), 1);
    }
}

}  // namespace tk::cli
