#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tanglekit/braid.hpp"

namespace tk {

enum class Dir : uint8_t { Up, Down };
using Dirs = std::vector<Dir>;

// LtoR is the `>` token: the arc consumes (cap) or produces (cup) the pair
// up-down. RtoL is `<`, the pair down-up.
enum class ArcOrient : uint8_t { LtoR, RtoL };

Dir flip(Dir d);
ArcOrient flip(ArcOrient a);
Dirs reversed_dirs(const Dirs& d);  // every arrow reversed, positions kept
Dirs arc_pair(ArcOrient a);
char dir_char(Dir d);
std::string dirs_str(const Dirs& d);
Dirs parse_dirs(std::string_view s);

enum class Kind : uint8_t { A, B, C };

// a_{k,l} (cap, annihilation), b_n (braid) or c_{k,l} (cup, creation).
struct Fundamental {
    Kind kind = Kind::B;
    Dirs left, right;  // A/C
    ArcOrient arc = ArcOrient::LtoR;
    BraidWord braid;  // B
    Dirs eps;         // B: labels at the bottom

    static Fundamental cap(Dirs left, ArcOrient arc, Dirs right);
    static Fundamental cup(Dirs left, ArcOrient arc, Dirs right);
    static Fundamental braid_block(BraidWord b, Dirs eps);

    int k() const { return static_cast<int>(left.size()); }
    int l() const { return static_cast<int>(right.size()); }

    bool operator==(const Fundamental&) const = default;
};

struct Boundary {
    Dirs source, target;
};
Boundary boundary(const Fundamental& g);

// Consistent sequence of fundamental tangles, stored bottom to top.
class Tangle {
public:
    // Identity tangle on the given boundary.
    explicit Tangle(Dirs boundary = {});

    // Throws Error naming the first inconsistent junction.
    static Tangle validate(std::vector<Fundamental> seq);
    static Tangle validate(std::vector<Fundamental> seq, Dirs empty_boundary);

    const std::vector<Fundamental>& seq() const { return seq_; }
    const Dirs& source() const { return source_; }
    const Dirs& target() const { return target_; }
    size_t size() const { return seq_.size(); }
    const Fundamental& operator[](size_t i) const { return seq_[i]; }

    // Labels at level i: level 0 is the source, level i the target of seq[i-1].
    Dirs level(size_t i) const;

    bool operator==(const Tangle&) const = default;

private:
    std::vector<Fundamental> seq_;
    Dirs source_, target_;
};

// lower first, then upper on top of it.
Tangle stack(const Tangle& lower, const Tangle& upper);

// Endpoints per level with the edges of the skeleton merged by union-find.
struct Skeleton {
    std::vector<int> offset;  // first point id of each level
    std::vector<int> comp;    // component id per point, numbered from 0 in order of appearance
    int components = 0;
    int id(size_t level, int pos) const { return offset[level] + pos - 1; }  // pos is 1-based
};

Skeleton skeleton(const Tangle& t);
int components(const Tangle& t);
bool is_link(const Tangle& t);
bool is_knot(const Tangle& t);

// `C[0,0; <] ; B[s1; du] ; ...` bottom to top; `#` starts a comment.
Tangle parse_tangle(std::string_view text);
std::string serialize(const Fundamental& g);
std::string serialize(const Tangle& t);

nlohmann::json to_json(const Fundamental& g);
nlohmann::json to_json(const Tangle& t);
Fundamental fundamental_from_json(const nlohmann::json& j);
Tangle tangle_from_json(const nlohmann::json& j);

}  // namespace tk
