#include "tukey/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tukey/exact.hpp"

namespace tukey {

namespace {

void require_finite(Point p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("non-finite coordinate");
}

bool lex_less(Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

Orientation from_sign(int s) {
    return s > 0 ? Orientation::Left
                 : (s < 0 ? Orientation::Right : Orientation::Collinear);
}

}  // namespace

Orientation orient(Point a, Point b, Point c) {
    require_finite(a);
    require_finite(b);
    require_finite(c);

    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;
    double detsum = std::fabs(detleft) + std::fabs(detright);

    // Static forward error bound for the rounded evaluation above.  When the
    // magnitudes are sane and |det| clears the bound, the sign is certain.
    constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
    constexpr double kBound = (3.0 + 16.0 * eps) * eps;
    if (detsum > 1e-280 && detsum < 1e280 && std::fabs(det) > kBound * detsum)
        return from_sign(det > 0 ? +1 : -1);

    const std::array<std::array<double, 2>, 6> terms = {{
        {a.x, b.y},
        {-a.x, c.y},
        {-b.y, c.x},
        {-a.y, b.x},
        {a.y, c.x},
        {b.x, c.y},
    }};
    return from_sign(exact::sign_of_product_sum(terms));
}

int orient_sign(Point a, Point b, Point c) {
    return static_cast<int>(orient(a, b, c));
}

ConvexPolygon make_convex_polygon(std::vector<Point> vertices) {
    if (vertices.size() < 3)
        throw std::invalid_argument("convex polygon needs at least 3 vertices");
    const size_t m = vertices.size();
    for (size_t i = 0; i < m; ++i) {
        Point a = vertices[i];
        Point b = vertices[(i + 1) % m];
        Point c = vertices[(i + 2) % m];
        if (orient(a, b, c) != Orientation::Left)
            throw std::invalid_argument(
                "vertices are not in strictly convex counterclockwise order");
    }
    return ConvexPolygon{std::move(vertices)};
}

double polygon_area(const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    double acc = 0.0;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
        double ax = v[i].x - v[0].x, ay = v[i].y - v[0].y;
        double bx = v[i + 1].x - v[0].x, by = v[i + 1].y - v[0].y;
        acc += ax * by - ay * bx;
    }
    return acc / 2.0;
}

ConvexPolygon HullResult::to_polygon() const {
    if (kind != HullKind::Polygon)
        throw std::invalid_argument("degenerate hull has no polygon form");
    return ConvexPolygon{vertices};
}

double HullResult::area() const {
    if (kind != HullKind::Polygon) return 0.0;
    return polygon_area(ConvexPolygon{vertices});
}

namespace {

// Andrew's monotone chain over lexicographically sorted distinct points.
// The strict Left test drops collinear mid-edge points, so only extreme
// points survive as vertices.
std::vector<Point> monotone_chain(const std::vector<Point>& sorted) {
    const size_t m = sorted.size();
    std::vector<Point> out;
    out.reserve(m + 1);

    auto build = [&](auto begin, auto end) {
        size_t base = out.size();
        for (auto it = begin; it != end; ++it) {
            while (out.size() >= base + 2 &&
                   orient(out[out.size() - 2], out.back(), *it) !=
                       Orientation::Left)
                out.pop_back();
            out.push_back(*it);
        }
        out.pop_back();  // endpoint re-added by the other chain
    };

    build(sorted.begin(), sorted.end());
    build(sorted.rbegin(), sorted.rend());
    return out;
}

}  // namespace

HullResult convex_hull(const PointSet& points) {
    if (points.empty())
        throw std::invalid_argument("convex hull of an empty set");
    for (Point p : points) require_finite(p);

    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    if (sorted.size() == 1) return {HullKind::Point, {sorted[0]}};

    std::vector<Point> cycle = monotone_chain(sorted);
    if (cycle.size() == 2) return {HullKind::Segment, std::move(cycle)};
    return {HullKind::Polygon, std::move(cycle)};
}

std::vector<int> hull_extreme_indices(const PointSet& points,
                                      const std::vector<int>& active) {
    PointSet sub;
    sub.reserve(active.size());
    for (int idx : active) sub.push_back(points[idx]);
    HullResult hull = convex_hull(sub);

    std::vector<Point> verts = hull.vertices;
    std::sort(verts.begin(), verts.end(), lex_less);
    std::vector<int> out;
    for (int idx : active) {
        if (std::binary_search(verts.begin(), verts.end(), points[idx],
                               lex_less))
            out.push_back(idx);
    }
    // CCW order of the reported indices, grouped per hull vertex.
    std::vector<int> ccw;
    ccw.reserve(out.size());
    for (const Point& v : hull.vertices)
        for (int idx : out)
            if (points[idx] == v) ccw.push_back(idx);
    return ccw;
}

HullChains split_hull(const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    const int m = static_cast<int>(v.size());

    auto pick = [&](auto better) {
        int best = 0;
        for (int i = 1; i < m; ++i)
            if (better(v[i], v[best])) best = i;
        return best;
    };
    int p1 = pick([](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y > b.y);
    });
    int q1 = pick([](Point a, Point b) {
        return a.x > b.x || (a.x == b.x && a.y > b.y);
    });
    int q2 = pick([](Point a, Point b) {
        return a.x > b.x || (a.x == b.x && a.y < b.y);
    });
    int p2 = pick([](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });

    // Clockwise traversal of a CCW cycle walks indices downward.
    auto walk_cw = [&](int from, int to) {
        std::vector<Point> chain;
        for (int i = from;; i = (i + m - 1) % m) {
            chain.push_back(v[i]);
            if (i == to) break;
        }
        return chain;
    };

    return HullChains{walk_cw(p1, q1), walk_cw(q2, p2)};
}

ChainRelation point_vs_chain(Point p, const std::vector<Point>& chain,
                             ChainKind kind) {
    if (chain.empty()) throw std::invalid_argument("empty chain");
    require_finite(p);
    for (size_t i = 1; i < chain.size(); ++i) {
        bool increasing = chain[i - 1].x < chain[i].x;
        if (increasing != (kind == ChainKind::Upper))
            throw std::invalid_argument("chain x-order does not match kind");
    }

    double lo = std::min(chain.front().x, chain.back().x);
    double hi = std::max(chain.front().x, chain.back().x);
    if (p.x < lo || p.x > hi) return ChainRelation::OutsideX;

    if (chain.size() == 1) {
        if (p.y > chain[0].y) return ChainRelation::Above;
        if (p.y < chain[0].y) return ChainRelation::Below;
        return ChainRelation::On;
    }

    // Locate the segment whose x-extent contains p.x and classify against
    // its left-to-right orientation.
    for (size_t i = 1; i < chain.size(); ++i) {
        Point a = chain[i - 1], b = chain[i];
        if (a.x > b.x) std::swap(a, b);
        if (p.x < a.x || p.x > b.x) continue;
        switch (orient(a, b, p)) {
            case Orientation::Left:
                return ChainRelation::Above;
            case Orientation::Right:
                return ChainRelation::Below;
            case Orientation::Collinear:
                return ChainRelation::On;
        }
    }
    throw std::logic_error("chain segment lookup failed");
}

Region point_in_polygon(Point p, const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    const size_t m = v.size();
    bool boundary = false;
    for (size_t i = 0; i < m; ++i) {
        Point a = v[i], b = v[(i + 1) % m];
        Orientation o = orient(a, b, p);
        if (o == Orientation::Right) return Region::Outside;
        if (o == Orientation::Collinear && on_segment(p, a, b))
            boundary = true;
    }
    return boundary ? Region::Boundary : Region::Inside;
}

Region point_in_hull(Point p, const HullResult& hull) {
    switch (hull.kind) {
        case HullKind::Polygon:
            return point_in_polygon(p, ConvexPolygon{hull.vertices});
        case HullKind::Segment:
            return on_segment(p, hull.vertices[0], hull.vertices[1])
                       ? Region::Boundary
                       : Region::Outside;
        case HullKind::Point:
            return p == hull.vertices[0] ? Region::Boundary : Region::Outside;
    }
    throw std::logic_error("unreachable");
}

bool on_segment(Point p, Point a, Point b) {
    if (orient(a, b, p) != Orientation::Collinear) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace tukey
