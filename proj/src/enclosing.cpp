#include "tukey/enclosing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tukey/depth.hpp"

namespace tukey {

std::vector<Point> Parallelogram::corners() const {
    return {corner,
            {corner.x + edge_u.x, corner.y + edge_u.y},
            {corner.x + edge_u.x + edge_v.x, corner.y + edge_u.y + edge_v.y},
            {corner.x + edge_v.x, corner.y + edge_v.y}};
}

ConvexPolygon Parallelogram::to_polygon() const {
    std::vector<Point> cs = corners();
    double cr = edge_u.x * edge_v.y - edge_u.y * edge_v.x;
    if (cr < 0) std::reverse(cs.begin(), cs.end());
    return make_convex_polygon(std::move(cs));
}

double Parallelogram::area() const {
    return std::fabs(edge_u.x * edge_v.y - edge_u.y * edge_v.x);
}

bool parallelogram_contains(const Parallelogram& para, Point p) {
    return point_in_polygon(p, para.to_polygon()) != Region::Outside;
}

namespace {

constexpr double kPi = std::numbers::pi;

// C(n, k), capped once it exceeds the desk-scale subset budget.
double binom_capped(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > 4e6) return r;
    }
    return r;
}

constexpr double kSubsetBudget = 2e6;

// Lexicographic enumeration of k-subsets of {0, .., pool-1}; fn receives
// each subset as sorted positions into the pool.
template <typename Fn>
void for_each_combination(int pool, int k, Fn&& fn) {
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    if (k == 0) {
        fn(comb);
        return;
    }
    if (pool < k) return;
    while (true) {
        fn(comb);
        int i = k - 1;
        while (i >= 0 && comb[i] == pool - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
}

struct SupportWidths {
    // Support interval of the points along the normal of direction theta.
    double lo = 0.0;
    double hi = 0.0;
};

SupportWidths support(const std::vector<Point>& pts, double theta) {
    double nx = -std::sin(theta), ny = std::cos(theta);
    SupportWidths s{std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
    for (const Point& p : pts) {
        double d = nx * p.x + ny * p.y;
        s.lo = std::min(s.lo, d);
        s.hi = std::max(s.hi, d);
    }
    return s;
}

double width(const std::vector<Point>& pts, double theta) {
    SupportWidths s = support(pts, theta);
    return s.hi - s.lo;
}

double golden_min(double a, double b, const auto& f, int iters) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

Parallelogram build_parallelogram(const std::vector<Point>& pts, double t1,
                                  double t2) {
    double n1x = -std::sin(t1), n1y = std::cos(t1);
    double n2x = -std::sin(t2), n2y = std::cos(t2);
    SupportWidths s1 = support(pts, t1);
    SupportWidths s2 = support(pts, t2);

    // Widen the strips by a few ulps: the corner solve below rounds, and
    // the exact containment predicate must still admit every support point.
    auto pad = [](SupportWidths& s) {
        double scale = std::max({std::fabs(s.lo), std::fabs(s.hi), 1e-12});
        double eps = 64.0 * std::numeric_limits<double>::epsilon() * scale;
        s.lo -= eps;
        s.hi += eps;
    };
    pad(s1);
    pad(s2);

    double det = n1x * n2y - n1y * n2x;  // sin(t2 - t1), nonzero by caller
    Point corner = {(s1.lo * n2y - s2.lo * n1y) / det,
                    (s2.lo * n1x - s1.lo * n2x) / det};
    double d1x = std::cos(t1), d1y = std::sin(t1);
    double d2x = std::cos(t2), d2y = std::sin(t2);
    double su = (s2.hi - s2.lo) / (d1x * n2x + d1y * n2y);
    double sv = (s1.hi - s1.lo) / (d2x * n1x + d2y * n1y);
    return Parallelogram{corner, {su * d1x, su * d1y}, {sv * d2x, sv * d2y}};
}

}  // namespace

Parallelogram min_area_parallelogram(const PointSet& xs) {
    HullResult hull = convex_hull(xs);
    if (hull.degenerate())
        throw std::invalid_argument(
            "needs at least 3 non-collinear points");
    const std::vector<Point>& verts = hull.vertices;
    const int h = static_cast<int>(verts.size());

    std::vector<double> dirs;
    for (int i = 0; i < h; ++i) {
        Point a = verts[i], b = verts[(i + 1) % h];
        double theta = std::atan2(b.y - a.y, b.x - a.x);
        if (theta < 0) theta += kPi;
        if (theta >= kPi) theta -= kPi;
        dirs.push_back(theta);
    }
    std::sort(dirs.begin(), dirs.end());

    double best_area = std::numeric_limits<double>::infinity();
    double best_t1 = 0.0, best_t2 = 0.0;
    auto consider = [&](double t1, double t2, double w1) {
        double s = std::fabs(std::sin(t2 - t1));
        if (s < 1e-9) return;
        double a = w1 * width(verts, t2) / s;
        if (a < best_area) {
            best_area = a;
            best_t1 = t1;
            best_t2 = t2;
        }
    };

    constexpr int kRestarts = 64;
    for (double t1 : dirs) {
        double w1 = width(verts, t1);
        for (double t2 : dirs)
            if (t2 != t1) consider(t1, t2, w1);
        auto slice = [&](double t2) {
            double s = std::sin(t2 - t1);
            return w1 * width(verts, t2) / s;
        };
        for (int r = 0; r < kRestarts; ++r) {
            double a = t1 + kPi * (r + 0.001) / kRestarts;
            double b = t1 + kPi * (r + 0.999) / kRestarts;
            double t2 = golden_min(a, b, slice, 40);
            consider(t1, t2 < kPi ? t2 : t2 - kPi, w1);
        }
    }
    return build_parallelogram(verts, best_t1, best_t2);
}

namespace {

struct ExclusionSearch {
    const PointSet& xs;
    int t;
    SearchMode mode;
    std::vector<int> pool;  // candidate exclusion indices, sorted

    EnclosingResult run(bool hull_objective) {
        const int n = static_cast<int>(xs.size());
        if (t < 0) throw std::invalid_argument("t must be >= 0");
        if (n - t < 3)
            throw std::invalid_argument("need at least 3 remaining points");
        if (mode == SearchMode::Oracle && n > 20)
            throw std::invalid_argument("oracle mode refuses n > 20");
        if (static_cast<int>(pool.size()) < t)
            throw std::invalid_argument(
                "exclusion candidate pool smaller than t");
        if (binom_capped(static_cast<int>(pool.size()), t) > kSubsetBudget)
            throw std::invalid_argument("subset budget exceeded (2e6)");

        EnclosingResult best;
        best.area = std::numeric_limits<double>::infinity();
        best.candidates_considered = static_cast<int>(pool.size());

        std::vector<char> keep(n, 1);
        PointSet residual;
        residual.reserve(n - t);
        for_each_combination(
            static_cast<int>(pool.size()), t, [&](const std::vector<int>& c) {
                ++best.subsets_evaluated;
                for (int ci : c) keep[pool[ci]] = 0;
                residual.clear();
                for (int i = 0; i < n; ++i)
                    if (keep[i]) residual.push_back(xs[i]);
                for (int ci : c) keep[pool[ci]] = 1;

                if (hull_objective) {
                    HullResult hull = convex_hull(residual);
                    double a = hull.area();
                    if (a < best.area) {
                        best.area = a;
                        best.shape = std::move(hull);
                        record_excluded(best, c);
                    }
                } else {
                    HullResult hull = convex_hull(residual);
                    if (hull.degenerate()) return;  // no minimal enclosure
                    Parallelogram para = min_area_parallelogram(residual);
                    double a = para.area();
                    if (a < best.area) {
                        best.area = a;
                        best.shape = para;
                        record_excluded(best, c);
                    }
                }
            });
        if (!std::isfinite(best.area))
            throw std::runtime_error(
                "every exclusion subset leaves a collinear residual");
        return best;
    }

    void record_excluded(EnclosingResult& best, const std::vector<int>& c) {
        best.excluded.clear();
        for (int ci : c) best.excluded.push_back(pool[ci]);
    }
};

}  // namespace

EnclosingResult min_area_hull_excluding(const PointSet& xs, int t,
                                        SearchMode mode) {
    std::vector<int> pool;
    if (mode == SearchMode::Oracle) {
        pool.resize(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) pool[i] = static_cast<int>(i);
    } else {
        pool = first_t_union(convex_layers(xs), t);
    }
    ExclusionSearch search{xs, t, mode, std::move(pool)};
    EnclosingResult result = search.run(true);
    result.tau = static_cast<int>(first_t_union(tukey_layers(xs), t + 1).size());
    return result;
}

EnclosingResult min_area_parallelogram_excluding(const PointSet& xs, int t,
                                                 SearchMode mode) {
    std::vector<int> candidates = first_t_union(tukey_layers(xs), t + 1);
    std::vector<int> pool;
    if (mode == SearchMode::Oracle) {
        pool.resize(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) pool[i] = static_cast<int>(i);
    } else {
        pool = candidates;
    }
    ExclusionSearch search{xs, t, mode, std::move(pool)};
    EnclosingResult result = search.run(false);
    result.tau = static_cast<int>(candidates.size());
    return result;
}

ComplexityProfile complexity_profile(const PointSet& xs, int t) {
    ComplexityProfile prof;
    prof.n = static_cast<int>(xs.size());
    prof.t = t;
    prof.v_first_t =
        static_cast<int>(first_t_union(convex_layers(xs), t).size());
    prof.tau = static_cast<int>(first_t_union(tukey_layers(xs), t + 1).size());

    double n = prof.n, tt = t, tau = prof.tau;
    double logn = prof.n > 1 ? std::log(n) : 0.0;
    prof.parallelogram_cost = tt * tt * tt * tau * tau + n * n * logn;
    double enum_factor = binom_capped(4 * t, 2 * t) * std::pow(3.0 * tt, tt);
    prof.hull_cost = n * logn + enum_factor * prof.v_first_t;
    return prof;
}

nlohmann::json EnclosingResult::to_json() const {
    nlohmann::json j;
    j["excluded"] = excluded;
    j["area"] = area;
    j["candidates_considered"] = candidates_considered;
    j["subsets_evaluated"] = subsets_evaluated;
    j["tau"] = tau;
    if (std::holds_alternative<Parallelogram>(shape)) {
        const auto& para = std::get<Parallelogram>(shape);
        j["shape"] = {{"kind", "parallelogram"},
                      {"corner", {para.corner.x, para.corner.y}},
                      {"edge_u", {para.edge_u.x, para.edge_u.y}},
                      {"edge_v", {para.edge_v.x, para.edge_v.y}}};
    } else {
        const auto& hull = std::get<HullResult>(shape);
        nlohmann::json verts = nlohmann::json::array();
        for (const Point& p : hull.vertices) verts.push_back({p.x, p.y});
        const char* kind = hull.kind == HullKind::Polygon    ? "polygon"
                           : hull.kind == HullKind::Segment ? "segment"
                                                            : "point";
        j["shape"] = {{"kind", kind}, {"vertices", verts}};
    }
    return j;
}

nlohmann::json ComplexityProfile::to_json() const {
    return {{"n", n},
            {"t", t},
            {"v_first_t", v_first_t},
            {"tau", tau},
            {"parallelogram_cost", parallelogram_cost},
            {"hull_cost", hull_cost}};
}

}  // namespace tukey
