#pragma once

#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tukey/geometry.hpp"

namespace tukey {

// Parallelogram spanned by two edge vectors from a corner; the corners are
// corner, corner+u, corner+u+v, corner+v.
struct Parallelogram {
    Point corner;
    Point edge_u;
    Point edge_v;

    std::vector<Point> corners() const;
    ConvexPolygon to_polygon() const;  // throws when u, v are dependent
    double area() const;               // |u x v|
};

bool parallelogram_contains(const Parallelogram& para, Point p);

enum class SearchMode { Pruned, Oracle };

// Outcome of an exclude-t-outliers search.  `shape` holds the residual hull
// (which may be degenerate when the survivors are collinear) or the best
// enclosing parallelogram.  `tau` is the number of points with Tukey depth
// at most t+1, the candidate-outlier pool size for the parallelogram
// search.
struct EnclosingResult {
    std::vector<int> excluded;  // sorted, |excluded| = t
    std::variant<HullResult, Parallelogram> shape;
    double area = 0.0;
    int candidates_considered = 0;
    long long subsets_evaluated = 0;
    int tau = 0;

    nlohmann::json to_json() const;
};

// Smallest-area hull of xs minus t excluded points.  Oracle mode tries all
// t-subsets of xs (refused for n > 20 or more than 2e6 subsets); pruned
// mode only excludes points of the first t convex layers.  Ties go to the
// lexicographically smallest excluded index set.
EnclosingResult min_area_hull_excluding(const PointSet& xs, int t,
                                        SearchMode mode);

// Smallest-area enclosing parallelogram, both side directions searched:
// one flush with a hull edge (every locally optimal enclosing parallelogram
// has a flush side), the other over flush pairings plus sectioned 1-D
// minimization of strip-width x strip-width / |sin(angle)|.  Result is
// within 1e-6 relative of optimal; support bounds are widened by a few ulps
// so exact containment checks admit every input point.
Parallelogram min_area_parallelogram(const PointSet& xs);

// Same exclusion search with an enclosing parallelogram objective.  Pruned
// mode draws exclusion candidates from the points of Tukey depth <= t+1.
// Subsets whose survivors are collinear are skipped (no minimal enclosing
// parallelogram exists for them).
EnclosingResult min_area_parallelogram_excluding(const PointSet& xs, int t,
                                                 SearchMode mode);

// Measured candidate-pool sizes for an instance together with the cost
// models of the two searches evaluated at those sizes (natural log).
struct ComplexityProfile {
    int n = 0;
    int t = 0;
    int v_first_t = 0;           // points on the first t convex layers
    int tau = 0;                 // points of Tukey depth <= t+1
    double parallelogram_cost = 0.0;  // t^3 tau^2 + n^2 ln n
    double hull_cost = 0.0;           // n ln n + C(4t,2t) (3t)^t v_first_t

    nlohmann::json to_json() const;
};

ComplexityProfile complexity_profile(const PointSet& xs, int t);

}  // namespace tukey
