#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/tangle.hpp"

namespace tk {

// One local rewrite: the window seq[pos, pos+len) is replaced. `id` is one of
// T1..T6, FT6, or CCA (a cap or cup carrying a one-string block over to its
// other leg, derived from T3-T5). An inverse instance undoes the named move
// and is checked by regenerating the forward move from the result.
struct MoveInstance {
    std::string id;
    size_t pos = 0;
    size_t len = 0;
    std::vector<Fundamental> replacement;
    bool inverse = false;
    nlohmann::json params = nlohmann::json::object();

    MoveInstance inverted(const Tangle& before) const;
};

nlohmann::json to_json(const MoveInstance& m);
MoveInstance move_from_json(const nlohmann::json& j);

struct MoveOptions {
    bool framed = false;      // FT6 replaces T6
    bool derived = true;      // allow CCA
    bool insertions = false;  // allow T5 zig-zag insertion
};

// Recompute every orientation label from the source upward. Cup arcs are kept,
// cap arcs are derived; nullopt when some cap meets two parallel strings.
std::optional<Tangle> relabel(std::vector<Fundamental> seq, const Dirs& source);

// Checks legality and returns the rewritten tangle; throws IllegalMove.
Tangle apply_move(const Tangle& T, const MoveInstance& m);
Tangle replay(const Tangle& T, const std::vector<MoveInstance>& trace);

// All legal single-move successors (one per instance), before canonicalisation.
struct Successor {
    MoveInstance move;
    Tangle result;
};
std::vector<Successor> successors(const Tangle& T, const MoveOptions& opt);

// Merge adjacent braid blocks (T2) and drop trivial ones (T1).
Tangle canonicalize(const Tangle& T, std::vector<MoveInstance>* trace = nullptr);
std::string state_key(const Tangle& T);

struct Simplified {
    Tangle tangle;
    std::vector<MoveInstance> trace;
};
Simplified simplify_traced(const Tangle& T, bool framed);
Tangle simplify(const Tangle& T, bool framed);

// 180 degree rotation in the plane of a one-string tangle, and the transpose
// built from a cup and a cap; `second` selects the other cup/cap placement.
Tangle rotate(const Tangle& T);
Tangle transpose(const Tangle& T, bool second = false);

// Rewrites a knot so that it starts with C[0,0; <] and ends with A[0,0; <].
Tangle standardize(const Tangle& K);
Tangle connected_sum(const Tangle& K1, const Tangle& K2);

struct EqVerdict {
    enum class Kind { Equal, Distinct, Unknown } kind = Kind::Unknown;
    std::vector<MoveInstance> trace;  // Equal
    std::string invariant;            // Distinct
    std::string left_value, right_value;
    int64_t nodes = 0;

    bool equal() const { return kind == Kind::Equal; }
    std::string name() const;
    nlohmann::json to_json() const;
};

inline constexpr int64_t kDefaultBudget = 20000;

// Budget from TANGLEKIT_BUDGET when set, else kDefaultBudget.
int64_t default_budget();

EqVerdict equivalent(const Tangle& T1, const Tangle& T2, bool framed, int64_t budget,
                     const MoveOptions* options = nullptr);

}  // namespace tk
