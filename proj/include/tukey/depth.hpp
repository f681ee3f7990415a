#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tukey/geometry.hpp"
#include "tukey/sampling.hpp"

namespace tukey {

// Per-point depth labels, indices parallel to the point set.
struct DepthLabeling {
    std::vector<int> tukey_depth;   // >= 1 each
    std::vector<int> convex_depth;  // >= 1 each
};

struct LayerPartition {
    enum class Kind { Tukey, Convex };
    Kind kind = Kind::Convex;
    // layers[d-1] is the sorted index set at depth d.  Convex peeling never
    // yields an empty layer, but a Tukey partition may hold empty inner
    // slots (a regular pentagon around its center realizes depths 1 and 3
    // only).  Trailing empties are dropped on both kinds.
    std::vector<std::vector<int>> layers;
};

// Throws std::invalid_argument when two points coincide exactly.
void require_no_duplicates(const PointSet& xs);

// Tukey depth of xs[i] against the full set: 1 + the minimum number of
// points strictly inside an open half-plane whose boundary passes through
// xs[i].  Angular sweep around the point, O(n log n).
int tukey_depth_point(const PointSet& xs, int i);

// Same value by brute force over all lines through xs[i] and one other
// point, O(n^2).  Kept as an independently coded reference.
int tukey_depth_oracle(const PointSet& xs, int i);

// Sweep depth without the global duplicate scan; for callers that have
// already validated the set and loop over many points.
int tukey_depth_point_unchecked(const PointSet& xs, int i);

// All Tukey depths (validates once, then sweeps per point).
std::vector<int> tukey_depth_all(const PointSet& xs);

// Depth-t Tukey layers of the full set; no peeling is involved, a layer is
// simply the set of points whose depth equals t.
LayerPartition tukey_layers(const PointSet& xs);

// Onion peeling: layer t is the extreme points (hull vertices, never
// edge-interior points) of whatever remains after layers 1..t-1 are removed.
LayerPartition convex_layers(const PointSet& xs);

// Peeling stopped after at most max_layers rounds; cheaper when only the
// outer layers matter.
std::vector<std::vector<int>> first_convex_layers(const PointSet& xs,
                                                  int max_layers);

// Union of the first min(t, #layers) layers, sorted.  t = 0 gives {}.
std::vector<int> first_t_union(const LayerPartition& part, int t);

// Both labelings (Tukey and convex) for a set.
DepthLabeling depth_labeling(const PointSet& xs);

// Labelings before and after appending q (q gets index n in the new one).
struct InsertComparison {
    DepthLabeling before;
    DepthLabeling after;
};

InsertComparison convex_depth_after_insert(const PointSet& xs, Point q);

// One structural check; id names the property, witness carries a small JSON
// description of the first violation found (null when passing).
struct LemmaCheck {
    std::string id;
    bool pass = false;
    nlohmann::json witness;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

// Structural properties tying the two layer notions together, checked on a
// concrete set:
//   2.1  every Tukey layer is in strictly convex position
//   2.2  depth-<=t Tukey points are contained in the first t convex layers
//   2.3  no depth-<=t point lies inside or on the hull of layer t+1
//   2.4  under a random bipartition, depth-<=t points of the whole set stay
//        depth-<=t in one of the parts
//   2.5  the same under a random 4-way partition
//   2.6  the t-th convex hulls of both parts lie inside the t-th hull of the
//        whole set, and the first-t convex union of the whole set is covered
//        by the parts' unions
//   2.7  appending a random point changes no convex depth by more than +1
LemmaReport verify_structural_lemmas(const PointSet& xs, int t,
                                     RngStream& rng);

}  // namespace tukey
