#include "tukey/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tukey/depth.hpp"
#include "tukey/exact.hpp"

namespace tukey {

namespace {

Point base_point(const TriangleGrid& grid, double u) {
    Point b = grid.tri[1], c = grid.tri[2];
    return {b.x + u * (c.x - b.x), b.y + u * (c.y - b.y)};
}

// Point at fraction u across the chord at apex scale s.
Point chord_point(const TriangleGrid& grid, double s, double u) {
    Point a = grid.tri[0];
    Point m = base_point(grid, u);
    return {a.x + s * (m.x - a.x), a.y + s * (m.y - a.y)};
}

void check_cell_range(const TriangleGrid& grid, int row, int col) {
    if (row < 1 || row > grid.n || col < 1 || col > grid.n)
        throw std::invalid_argument("grid cell index out of range");
}

bool grid_ccw(const TriangleGrid& grid) {
    return orient(grid.tri[0], grid.tri[1], grid.tri[2]) == Orientation::Left;
}

}  // namespace

TriangleGrid build_triangle_grid(const std::array<Point, 3>& tri, int n) {
    if (n < 1) throw std::invalid_argument("grid resolution must be >= 1");
    if (orient(tri[0], tri[1], tri[2]) == Orientation::Collinear)
        throw std::invalid_argument("degenerate triangle");
    return TriangleGrid{tri, n};
}

std::vector<Point> cell_corners(const TriangleGrid& grid, int row, int col) {
    check_cell_range(grid, row, col);
    const double n = grid.n;
    double s0 = std::sqrt((row - 1) / n);
    double s1 = row == grid.n ? 1.0 : std::sqrt(row / n);
    double u0 = (col - 1) / n;
    double u1 = col == grid.n ? 1.0 : col / n;

    std::vector<Point> corners;
    if (row == 1) {
        corners = {grid.tri[0], chord_point(grid, s1, u0),
                   chord_point(grid, s1, u1)};
    } else {
        corners = {chord_point(grid, s0, u0), chord_point(grid, s1, u0),
                   chord_point(grid, s1, u1), chord_point(grid, s0, u1)};
    }
    if (!grid_ccw(grid)) std::reverse(corners.begin(), corners.end());
    return corners;
}

ConvexPolygon cell_polygon(const TriangleGrid& grid, int row, int col) {
    return make_convex_polygon(cell_corners(grid, row, col));
}

double grid_triangle_area(const TriangleGrid& grid) {
    Point a = grid.tri[0], b = grid.tri[1], c = grid.tri[2];
    return std::fabs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) /
           2.0;
}

GridCell locate_cell(const TriangleGrid& grid, Point q) {
    Point a = grid.tri[0], b = grid.tri[1], c = grid.tri[2];
    const int inside = grid_ccw(grid) ? +1 : -1;
    if (orient_sign(a, b, q) == -inside || orient_sign(b, c, q) == -inside ||
        orient_sign(c, a, q) == -inside)
        throw std::invalid_argument("point outside the grid triangle");

    // Smallest column whose far boundary ray keeps q strictly on the near
    // side; a point exactly on a ray falls through to the next column.
    int lo = 1, hi = grid.n;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        Point d = base_point(grid, static_cast<double>(mid) / grid.n);
        if (orient_sign(a, d, q) * inside < 0)
            hi = mid;
        else
            lo = mid + 1;
    }

    // Apex scale of q: chords are parallel to the base, so the scale is the
    // ratio of cross products against the base direction.  Row boundaries
    // compare squared scales; ties go to the larger row.
    double num = (q.x - a.x) * (c.y - b.y) - (q.y - a.y) * (c.x - b.x);
    double den = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    double scale = num / den;
    double sq = std::max(0.0, scale * scale);
    int row = static_cast<int>(std::floor(sq * grid.n)) + 1;
    row = std::clamp(row, 1, grid.n);
    return GridCell{row, lo};
}

int cell_index(const TriangleGrid& grid, int i, int l, int j) {
    const int n = grid.n;
    if (i < 1 || i > n || l < 1 || l > n || j < 1 || j > n)
        throw std::invalid_argument("cell index arguments out of range");
    if (l < j) return (j - 1) * (i - 1) + l;
    if (l > j) return (j - 1) * n + (n - j) * (i - 1) + (l - j);
    return (n - 1) * n + i;
}

QuadrantCounts quadrant_counts(Point p, const PointSet& xs) {
    QuadrantCounts qc;
    for (const Point& q : xs) {
        if (q.x == p.x || q.y == p.y) continue;
        if (q.x < p.x)
            (q.y > p.y ? qc.ul : qc.ll)++;
        else
            (q.y > p.y ? qc.ur : qc.lr)++;
    }
    return qc;
}

namespace {

// Upper and lower chains of a hull that may have collapsed to a segment or
// a single point.
HullChains chains_of(const HullResult& hull) {
    switch (hull.kind) {
        case HullKind::Polygon:
            return split_hull(hull.to_polygon());
        case HullKind::Point:
            return HullChains{{hull.vertices[0]}, {hull.vertices[0]}};
        case HullKind::Segment: {
            Point u = hull.vertices[0], v = hull.vertices[1];
            if (u.x == v.x) {
                Point top = u.y > v.y ? u : v;
                Point bot = u.y > v.y ? v : u;
                return HullChains{{top}, {bot}};
            }
            if (u.x > v.x) std::swap(u, v);
            return HullChains{{u, v}, {v, u}};
        }
    }
    throw std::logic_error("unreachable hull kind");
}

}  // namespace

std::vector<int> check_upper_hull_lemma(const PointSet& xs, int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    std::vector<int> depth = tukey_depth_all(xs);

    // Hull of the points of depth t or more.  Depth layers are not nested:
    // a deeper point can stick out past the hull of the depth-exactly-t
    // points (random sets realize this), so the quadrant condition pins a
    // point only against the hull of this union.
    PointSet deep;
    for (size_t i = 0; i < xs.size(); ++i)
        if (depth[i] >= t) deep.push_back(xs[i]);
    if (deep.empty()) return {};
    HullChains chains = chains_of(convex_hull(deep));

    std::vector<int> violations;
    for (size_t i = 0; i < xs.size(); ++i) {
        QuadrantCounts qc = quadrant_counts(xs[i], xs);
        bool bad = false;
        if (qc.ul >= t && qc.ur >= t &&
            point_vs_chain(xs[i], chains.upper, ChainKind::Upper) ==
                ChainRelation::Above)
            bad = true;
        if (qc.ll >= t && qc.lr >= t &&
            point_vs_chain(xs[i], chains.lower, ChainKind::Lower) ==
                ChainRelation::Below)
            bad = true;
        if (bad) violations.push_back(static_cast<int>(i));
    }
    return violations;
}

namespace {

constexpr std::array<Point, 3> kUnitRightTriangle = {
    Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}};

bool is_unit_right_triangle(const std::array<Point, 3>& tri) {
    for (const Point& v : kUnitRightTriangle)
        if (std::count(tri.begin(), tri.end(), v) != 1) return false;
    return true;
}

ConvexPolygon quad_ccw(Point a, Point b, Point c, Point d) {
    return make_convex_polygon({a, b, c, d});
}

// t*t equal-area cells of the trapezoid {0 <= x <= p1, p2 <= y <= 1-x},
// whose lower-right corner is the anchor (p1, p2).  Columns are equal-area
// vertical slabs counted from the anchor outward; each column is split by
// cuts that interpolate between the flat bottom and the slanted top, which
// keeps every strip of a column at the same area.  Staircase cell k is the
// k-th column's k-th strip.
QuadrantCells upper_left_cells(double p1, double p2, int t) {
    const double rim = 1.0 - p2;        // top of the left wall
    const double hyp = 1.0 - p1 - p2;   // height of the wall at x = p1
    const double area = p1 * (rim + hyp) / 2.0;

    // Cut positions, anchor side first.  The closed form for "slab of area
    // c*area/t next to x = p1" is rim - sqrt(hyp^2 + 2c*area/t); the
    // algebraically equal quotient below avoids the cancellation when the
    // anchor sits close to the hypotenuse.
    std::vector<double> cut(t + 1);
    cut[0] = p1;
    cut[t] = 0.0;
    for (int c = 1; c < t; ++c) {
        double rad = std::sqrt(hyp * hyp + 2.0 * c * area / t);
        cut[c] = 2.0 * area * (t - c) / t / (rim + rad);
    }

    auto level = [&](double x, int k) {  // k-th of t cuts between floor & top
        return p2 + (1.0 - x - p2) * k / t;
    };

    QuadrantCells out;
    for (int c = 1; c <= t; ++c) {
        double xl = cut[c], xr = cut[c - 1];
        for (int b = 1; b <= t; ++b) {
            out.cells.push_back(quad_ccw({xl, level(xl, b - 1)},
                                         {xr, level(xr, b - 1)},
                                         {xr, level(xr, b)},
                                         {xl, level(xl, b)}));
        }
    }
    for (int k = 1; k <= t; ++k) out.diagonal.push_back((k - 1) * (t + 1));
    return out;
}

QuadrantCells lower_left_cells(double p1, double p2, int t) {
    QuadrantCells out;
    auto xg = [&](int a) { return p1 * (t - a) / t; };
    auto yg = [&](int b) { return p2 * (t - b) / t; };
    for (int a = 1; a <= t; ++a)
        for (int b = 1; b <= t; ++b)
            out.cells.push_back(quad_ccw({xg(a), yg(b)}, {xg(a - 1), yg(b)},
                                         {xg(a - 1), yg(b - 1)},
                                         {xg(a), yg(b - 1)}));
    for (int k = 1; k <= t; ++k) out.diagonal.push_back((k - 1) * (t + 1));
    return out;
}

// Triangular quadrant: legs of length 1-p1-p2 cut into 2t pieces each; the
// cells on the anti-diagonal are corner-to-corner halves of their squares.
// The staircase runs through the full squares (k, k), k <= t.
QuadrantCells upper_right_cells(double p1, double p2, int t) {
    const double h = (1.0 - p1 - p2) / (2 * t);
    auto u = [&](int a) { return p1 + a * h; };
    auto v = [&](int b) { return p2 + b * h; };

    QuadrantCells out;
    out.diagonal.resize(t);
    for (int a = 1; a <= 2 * t; ++a) {
        for (int b = 1; b + a <= 2 * t + 1; ++b) {
            if (a == b && a <= t)
                out.diagonal[a - 1] = static_cast<int>(out.cells.size());
            if (a + b <= 2 * t) {
                out.cells.push_back(quad_ccw({u(a - 1), v(b - 1)},
                                             {u(a), v(b - 1)}, {u(a), v(b)},
                                             {u(a - 1), v(b)}));
            } else {
                out.cells.push_back(make_convex_polygon(
                    {{u(a - 1), v(b - 1)}, {u(a), v(b - 1)},
                     {u(a - 1), v(b)}}));
            }
        }
    }
    return out;
}

Point swap_xy(Point p) { return {p.y, p.x}; }

QuadrantCells mirror_cells(const QuadrantCells& src) {
    QuadrantCells out;
    out.diagonal = src.diagonal;
    for (const ConvexPolygon& poly : src.cells) {
        std::vector<Point> verts;
        for (auto it = poly.vertices.rbegin(); it != poly.vertices.rend();
             ++it)
            verts.push_back(swap_xy(*it));
        out.cells.push_back(make_convex_polygon(std::move(verts)));
    }
    return out;
}

}  // namespace

QuadrantPartition build_quadrant_cells(Point p, const std::array<Point, 3>& tri,
                                       int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (!is_unit_right_triangle(tri))
        throw std::invalid_argument(
            "quadrant cells are defined on the unit right triangle");
    if (!(p.x > 0.0 && p.y > 0.0 && p.x + p.y < 1.0))
        throw std::invalid_argument(
            "anchor must lie strictly inside the triangle");

    QuadrantPartition part;
    part.anchor = p;
    part.t = t;
    part.quadrants[kQuadUL] = upper_left_cells(p.x, p.y, t);
    part.quadrants[kQuadUR] = upper_right_cells(p.x, p.y, t);
    part.quadrants[kQuadLL] = lower_left_cells(p.x, p.y, t);
    // The lower-right trapezoid is the upper-left one of the transposed
    // anchor, reflected across the main diagonal.
    part.quadrants[kQuadLR] = mirror_cells(upper_left_cells(p.y, p.x, t));
    return part;
}

std::vector<int> check_diag_lemma(const PointSet& xs, int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    for (const Point& q : xs)
        if (!(q.x > 0.0 && q.y > 0.0 && q.x + q.y < 1.0))
            throw std::invalid_argument(
                "points must lie strictly inside the unit right triangle");

    std::vector<int> candidates = first_t_union(convex_layers(xs), t);
    std::vector<int> violations;
    for (int pi : candidates) {
        QuadrantPartition part =
            build_quadrant_cells(xs[pi], kUnitRightTriangle, t);
        bool some_empty = false;
        for (const QuadrantCells& quad : part.quadrants) {
            for (int ci : quad.diagonal) {
                bool occupied = false;
                for (size_t qi = 0; qi < xs.size() && !occupied; ++qi) {
                    if (static_cast<int>(qi) == pi) continue;
                    occupied = point_in_polygon(xs[qi], quad.cells[ci]) !=
                               Region::Outside;
                }
                if (!occupied) {
                    some_empty = true;
                    break;
                }
            }
            if (some_empty) break;
        }
        if (!some_empty) violations.push_back(pi);
    }
    return violations;
}

namespace {

struct CornerFrame {
    bool ok = false;       // anchor within the admissible corner range
    bool flip_x = false;   // square anchors reflect into [0, 1/2)^2
    bool flip_y = false;
    Point anchor;          // corner-frame coordinates
};

CornerFrame corner_frame(Point p, RegionShape shape) {
    CornerFrame f;
    if (shape == RegionShape::Square) {
        if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
            throw std::invalid_argument("anchor outside the unit square");
        if (p.x == 0.5 || p.y == 0.5) return f;
        f.flip_x = p.x > 0.5;
        f.flip_y = p.y > 0.5;
    } else {
        if (p.x < 0.0 || p.y < 0.0 || p.x + p.y > 1.0)
            throw std::invalid_argument("anchor outside the triangle");
        if (p.x >= 0.5 || p.y >= 0.5) return f;
    }
    f.ok = true;
    f.anchor = {f.flip_x ? 1.0 - p.x : p.x, f.flip_y ? 1.0 - p.y : p.y};
    return f;
}

// Strict "under the dividing line" test in the corner frame, exact for the
// given doubles: p2*x + p1*y < 2*p1*p2.
bool strictly_under(Point anchor, Point q) {
    std::array<std::array<double, 2>, 3> terms = {
        {{2.0 * anchor.x, anchor.y}, {-anchor.y, q.x}, {-anchor.x, q.y}}};
    return exact::sign_of_product_sum(terms) > 0;
}

}  // namespace

DividingLineRegion dividing_line_region(Point p, RegionShape shape) {
    CornerFrame f = corner_frame(p, shape);
    if (!f.ok)
        throw std::invalid_argument("anchor outside the admissible range");

    DividingLineRegion region;
    region.anchor = f.anchor;
    region.corner_triangle = {Point{0.0, 0.0}, Point{2.0 * f.anchor.x, 0.0},
                              Point{0.0, 2.0 * f.anchor.y}};
    region.area = 2.0 * f.anchor.x * f.anchor.y;
    region.mass =
        shape == RegionShape::Square ? region.area : 2.0 * region.area;
    return region;
}

std::vector<int> check_dividing_sufficient(const PointSet& xs, int t,
                                           RegionShape shape) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    std::vector<int> u_first = first_t_union(tukey_layers(xs), t);

    std::vector<int> violations;
    for (size_t i = 0; i < xs.size(); ++i) {
        CornerFrame f = corner_frame(xs[i], shape);
        if (!f.ok) continue;
        int under = 0;
        for (size_t q = 0; q < xs.size() && under < t; ++q) {
            if (q == i) continue;
            Point qq = {f.flip_x ? 1.0 - xs[q].x : xs[q].x,
                        f.flip_y ? 1.0 - xs[q].y : xs[q].y};
            if (strictly_under(f.anchor, qq)) ++under;
        }
        if (under < t &&
            !std::binary_search(u_first.begin(), u_first.end(),
                                static_cast<int>(i)))
            violations.push_back(static_cast<int>(i));
    }
    return violations;
}

namespace {

// Rigid map into the grid's own frame: the base along +x from tri[1] and the
// apex on the positive y side.  Row order, chord direction, and "above"
// along the vertical axis then mean the same thing for every input triangle.
struct GridFrame {
    Point origin;
    Point u;  // unit vector along the base
    Point v;  // unit normal pointing from the base toward the apex

    explicit GridFrame(const TriangleGrid& grid) {
        origin = grid.tri[1];
        Point d{grid.tri[2].x - origin.x, grid.tri[2].y - origin.y};
        double len = std::hypot(d.x, d.y);
        u = {d.x / len, d.y / len};
        v = {-u.y, u.x};
        Point a{grid.tri[0].x - origin.x, grid.tri[0].y - origin.y};
        if (a.x * v.x + a.y * v.y < 0) v = {-v.x, -v.y};
    }

    Point map(Point q) const {
        Point r{q.x - origin.x, q.y - origin.y};
        return {r.x * u.x + r.y * u.y, r.x * v.x + r.y * v.y};
    }
};

// Whether the whole cell sits strictly above the chain (upper chain of a
// hull, x increasing).  Corner checks alone are not enough: the chain is
// concave, so a vertex of it can poke up between two corners that are both
// strictly above.  The cell's floor in the grid frame is the single edge
// joining its two lowest corners, so it suffices that every corner clears
// the chain and every chain vertex under the cell stays strictly below that
// floor edge.
bool cell_strictly_above_chain(const std::vector<Point>& corners,
                               const std::vector<Point>& chain) {
    for (const Point& corner : corners)
        if (point_vs_chain(corner, chain, ChainKind::Upper) !=
            ChainRelation::Above)
            return false;

    std::vector<Point> by_height = corners;
    std::sort(by_height.begin(), by_height.end(),
              [](Point a, Point b) { return a.y < b.y; });
    Point bl = by_height[0], br = by_height[1];
    if (bl.x > br.x) std::swap(bl, br);
    for (const Point& w : chain) {
        if (w.x < bl.x || w.x > br.x) continue;
        if (orient(bl, br, w) != Orientation::Right) return false;
    }
    return true;
}

}  // namespace

RowStats row_order_statistics(const TriangleGrid& grid, const PointSet& xs,
                              int j, int t) {
    if (j <= 1 || j >= grid.n)
        throw std::invalid_argument("distinguished column must satisfy 1<j<n");
    if (t < 1) throw std::invalid_argument("t must be >= 1");

    std::vector<int> left_rows, right_rows;
    for (const Point& q : xs) {
        GridCell cell = locate_cell(grid, q);
        if (cell.col < j) left_rows.push_back(cell.row);
        if (cell.col > j) right_rows.push_back(cell.row);
    }
    auto nth_row = [&](std::vector<int>& rows) {
        if (static_cast<int>(rows.size()) < t) return grid.n;
        std::nth_element(rows.begin(), rows.begin() + (t - 1), rows.end());
        return rows[t - 1];
    };

    RowStats stats;
    stats.i1 = nth_row(left_rows);
    stats.i2 = nth_row(right_rows);

    std::vector<int> depth = tukey_depth_all(xs);
    GridFrame frame(grid);
    PointSet deep;
    for (size_t i = 0; i < xs.size(); ++i)
        if (depth[i] >= t) deep.push_back(frame.map(xs[i]));
    if (deep.empty()) return stats;
    HullChains chains = chains_of(convex_hull(deep));

    for (int i = 1; i <= grid.n; ++i) {
        std::vector<Point> corners = cell_corners(grid, i, j);
        for (Point& corner : corners) corner = frame.map(corner);
        if (cell_strictly_above_chain(corners, chains.upper)) stats.zj = i;
    }
    return stats;
}

}  // namespace tukey
