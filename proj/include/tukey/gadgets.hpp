#pragma once

#include <array>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

// Equal-area grid over a triangle: n fan sectors from the apex (tri[0])
// form the columns, and n cuts parallel to the opposite side form the rows.
// Areas scale with the square of the distance from the apex, so the cut for
// row i sits at scale sqrt(i/n); every one of the n*n cells then has area
// (triangle area)/n^2.  Row 1 touches the apex, column 1 hugs the tri[1]
// side.
struct TriangleGrid {
    std::array<Point, 3> tri;  // apex first
    int n = 1;
};

TriangleGrid build_triangle_grid(const std::array<Point, 3>& tri, int n);

// Corners of cell (row, col), counterclockwise.  Row 1 cells are triangles,
// the rest are trapezoids.
std::vector<Point> cell_corners(const TriangleGrid& grid, int row, int col);
ConvexPolygon cell_polygon(const TriangleGrid& grid, int row, int col);

double grid_triangle_area(const TriangleGrid& grid);

struct GridCell {
    int row = 0;
    int col = 0;
};

// Cell containing q.  Column boundaries are resolved with the exact
// orientation test; points exactly on a boundary go to the larger column,
// then the larger row.  Throws when q lies strictly outside the triangle.
GridCell locate_cell(const TriangleGrid& grid, Point q);

// Flat numbering of the cells relative to a distinguished column j: the
// block left of column j comes first (row-major), then the block right of
// it, then column j itself top to bottom.  Bijection onto 1..n^2.
int cell_index(const TriangleGrid& grid, int i, int l, int j);

// Points of xs strictly inside each open quadrant around p; points sharing
// an x or y coordinate with p land in none.
struct QuadrantCounts {
    int ul = 0;
    int ur = 0;
    int ll = 0;
    int lr = 0;
};

QuadrantCounts quadrant_counts(Point p, const PointSet& xs);

// Checks, for every point with at least t others in both upper quadrants,
// that it does not sit strictly above the upper hull of the points whose
// Tukey depth is t or more (and symmetrically below that hull's lower chain
// for the lower quadrants).  The union matters: depth layers are not nested,
// and the property genuinely fails against the hull of the depth-exactly-t
// points.  Returns the offending indices; when nothing reaches depth t the
// check is vacuous and returns empty.
std::vector<int> check_upper_hull_lemma(const PointSet& xs, int t);

// One quadrant around an anchor inside the unit right triangle, cut into
// cells with a staircase of t "diagonal" cells leading away from the anchor.
struct QuadrantCells {
    std::vector<ConvexPolygon> cells;
    std::vector<int> diagonal;  // indices into cells, anchor outward
};

// Quadrant order used throughout: upper-left, upper-right, lower-left,
// lower-right (matching QuadrantCounts field order).
inline constexpr int kQuadUL = 0;
inline constexpr int kQuadUR = 1;
inline constexpr int kQuadLL = 2;
inline constexpr int kQuadLR = 3;

struct QuadrantPartition {
    Point anchor;
    int t = 1;
    std::array<QuadrantCells, 4> quadrants;
};

// Partition of the four axis-aligned quadrants around p, clipped to the
// triangle (0,0),(1,0),(0,1).  The rectangle and the two trapezoids get t*t
// equal-area cells each; the triangular quadrant gets a half-grid of
// t*(2t+1) cells (its legs are cut into 2t equal pieces, the cells along
// the hypotenuse being corner-to-corner half squares).  Each quadrant's
// diagonal staircase starts at the cell touching p.
QuadrantPartition build_quadrant_cells(Point p, const std::array<Point, 3>& tri,
                                       int t);

// For every point on the first t convex layers, verifies that at least one
// of its 4t diagonal cells holds no other point of xs.  Returns offending
// indices.  All points must lie strictly inside the unit right triangle.
std::vector<int> check_diag_lemma(const PointSet& xs, int t);

enum class RegionShape { Square, Triangle };

// The line p2*x + p1*y = 2*p1*p2 through an anchor near the origin corner
// cuts off a triangle with corners (0,0), (2p1,0), (0,2p2).  `anchor` is the
// corner-frame representative (square anchors get reflected into [0,1/2)^2
// first), `area` is 2*p1*p2 and `mass` the probability of the region under
// uniform sampling of the shape (area for the unit square, twice that for
// the unit right triangle).
struct DividingLineRegion {
    Point anchor;
    std::array<Point, 3> corner_triangle;
    double area = 0.0;
    double mass = 0.0;
};

DividingLineRegion dividing_line_region(Point p, RegionShape shape);

// For every point of xs in the admissible corner range: when fewer than t
// other points fall strictly under its dividing line, the point must lie on
// the first t Tukey layers.  Returns offending indices.
std::vector<int> check_dividing_sufficient(const PointSet& xs, int t,
                                           RegionShape shape);

struct RowStats {
    int i1 = 0;
    int i2 = 0;
    int zj = 0;
};

// Order statistics for a distinguished column j, 1 < j < n.  Rows count
// away from the apex, so "top-down" means row 1 first: i1 is the row of the
// t-th point in that order over columns 1..j-1 (n when fewer than t exist),
// i2 the same over columns j+1..n.  zj is the largest row whose cell lies
// entirely strictly above the upper hull of the points of Tukey depth t or
// more, judged in the grid's own frame (base horizontal, apex up); 0 when
// no cell qualifies or nothing reaches depth t.  For t = 1 zj never exceeds
// i1 + i2.  For larger t the bound holds statistically but not per instance:
// shallow points crowding the fan vertex can sit, in the grid frame, over a
// distant column without shielding its cells, and rare sampled sets realize
// this.
RowStats row_order_statistics(const TriangleGrid& grid, const PointSet& xs,
                              int j, int t);

}  // namespace tukey
