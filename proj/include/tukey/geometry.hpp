#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace tukey {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

// A plain list of points; indices into it identify points everywhere else
// (layer partitions, exclusion sets, depth labelings).
using PointSet = std::vector<Point>;

enum class Orientation : int { Right = -1, Collinear = 0, Left = +1 };

// Sign of the determinant |b-a, c-a|: +1 when the triple a,b,c makes a left
// (counterclockwise) turn.  The sign is exact for all finite inputs; rounded
// double evaluation is used only when a forward error bound proves it safe.
// Throws std::invalid_argument on non-finite coordinates.
Orientation orient(Point a, Point b, Point c);
int orient_sign(Point a, Point b, Point c);

// Strictly convex polygon: at least 3 vertices, counterclockwise, no three
// consecutive vertices collinear (hence no repeated vertices).
struct ConvexPolygon {
    std::vector<Point> vertices;
};

// Validates the strict-convexity contract above; throws std::invalid_argument.
ConvexPolygon make_convex_polygon(std::vector<Point> vertices);

// Positive area of a strictly convex polygon (shoelace, anchored at the first
// vertex for better conditioning).
double polygon_area(const ConvexPolygon& poly);

// Convex hull of a point set in the extreme-point sense: points interior to a
// hull edge are not vertices.  Collinear or tiny inputs degenerate gracefully.
enum class HullKind { Polygon, Segment, Point };

struct HullResult {
    HullKind kind = HullKind::Point;
    // Polygon: CCW vertex cycle starting from the lexicographically smallest
    // vertex.  Segment: the two distinct endpoints.  Point: one point.
    std::vector<Point> vertices;

    bool degenerate() const { return kind != HullKind::Polygon; }
    ConvexPolygon to_polygon() const;  // throws if degenerate
    double area() const;               // 0 for degenerate hulls
};

// Throws std::invalid_argument on an empty input.
HullResult convex_hull(const PointSet& points);

// Hull restricted to a subset of indices; returns the extreme points as
// indices into `points`, CCW.  Coincident points are treated as one location:
// if that location is extreme, every index carrying it is reported.
std::vector<int> hull_extreme_indices(const PointSet& points,
                                      const std::vector<int>& active);

// Monotone chains of a strictly convex polygon.  The upper chain runs
// clockwise from the leftmost vertex (ties broken toward larger y) to the
// rightmost vertex (ties toward larger y); the lower chain runs clockwise
// from the rightmost vertex (ties toward smaller y) to the leftmost (ties
// toward smaller y).  Every vertex lands in at least one chain and the
// chains share at most their endpoints.
struct HullChains {
    std::vector<Point> upper;  // x strictly increasing
    std::vector<Point> lower;  // x strictly decreasing
};

HullChains split_hull(const ConvexPolygon& poly);

enum class ChainKind { Upper, Lower };

// Vertical-ray classification of p against a chain: Above / On / Below when
// p.x lies within the chain's x-extent, OutsideX otherwise (the ray misses
// the chain entirely).  The ChainKind documents and checks the expected
// monotonicity of the chain's x coordinates.
enum class ChainRelation { Above, On, Below, OutsideX };

ChainRelation point_vs_chain(Point p, const std::vector<Point>& chain,
                             ChainKind kind);

// Exact point-vs-convex-region classification.
enum class Region { Inside, Boundary, Outside };

Region point_in_polygon(Point p, const ConvexPolygon& poly);
Region point_in_hull(Point p, const HullResult& hull);

// True when p lies on the closed segment [a, b].
bool on_segment(Point p, Point a, Point b);

}  // namespace tukey
