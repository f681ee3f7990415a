#include "tukey/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tukey {

namespace {

// Filtered orientation without the per-call finite checks of the public
// entry point; callers validate coordinates once up front.  Falls through
// to the exact path on inconclusive magnitudes.
inline int fast_orient(Point a, Point b, Point c) {
    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;
    double detsum = std::fabs(detleft) + std::fabs(detright);
    constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
    constexpr double kBound = (3.0 + 16.0 * eps) * eps;
    if (detsum > 1e-280 && detsum < 1e280 && std::fabs(det) > kBound * detsum)
        return det > 0 ? +1 : -1;
    return orient_sign(a, b, c);
}

void validate_indexed(const PointSet& xs, int i) {
    if (i < 0 || static_cast<size_t>(i) >= xs.size())
        throw std::invalid_argument("point index out of range");
}

}  // namespace

void require_no_duplicates(const PointSet& xs) {
    std::vector<int> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return xs[a].x < xs[b].x || (xs[a].x == xs[b].x && xs[a].y < xs[b].y);
    });
    for (size_t i = 1; i < order.size(); ++i)
        if (xs[order[i - 1]] == xs[order[i]])
            throw std::invalid_argument("ambiguous depth under duplicates");
}

int tukey_depth_point_unchecked(const PointSet& xs, int i) {
    const Point p = xs[i];
    const int n = static_cast<int>(xs.size());
    const int m = n - 1;
    if (m == 0) return 1;

    // Order the other points by angle around p without ever evaluating an
    // angle: a half-plane split (is the direction in [0,pi)?) plus an exact
    // cross-product comparison inside each half.
    std::vector<int> order;
    order.reserve(m);
    std::vector<signed char> half(n, 0);
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        half[j] = (xs[j].y > p.y || (xs[j].y == p.y && xs[j].x > p.x)) ? 0 : 1;
        order.push_back(j);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (half[a] != half[b]) return half[a] < half[b];
        int o = fast_orient(p, xs[a], xs[b]);
        if (o != 0) return o > 0;
        return a < b;
    });

    // Collapse points sharing a ray from p into groups.
    std::vector<int> rep, cnt;
    for (int idx : order) {
        if (!rep.empty() && half[rep.back()] == half[idx] &&
            fast_orient(p, xs[rep.back()], xs[idx]) == 0) {
            ++cnt.back();
        } else {
            rep.push_back(idx);
            cnt.push_back(1);
        }
    }
    const int g = static_cast<int>(rep.size());
    std::vector<int> prefix(g + 1, 0);
    for (int t = 0; t < g; ++t) prefix[t + 1] = prefix[t] + cnt[t];

    auto range_count = [&](int a, int b) {  // groups in circular [a, b)
        if (a >= b) return 0;
        if (b <= g) return prefix[b] - prefix[a];
        return prefix[g] - prefix[a] + prefix[b - g];
    };

    // For each boundary ray through p and a group, count points strictly on
    // each open side.  The candidate window is contiguous in angle order, so
    // one monotone pointer serves all groups.
    int best = std::numeric_limits<int>::max();
    int e = 1;
    for (int s = 0; s < g; ++s) {
        if (e < s + 1) e = s + 1;
        while (e < s + g && fast_orient(p, xs[rep[s]], xs[rep[e % g]]) > 0)
            ++e;
        int left = range_count(s + 1, e);
        int anti = 0;
        if (e < s + g &&
            fast_orient(p, xs[rep[s]], xs[rep[e % g]]) == 0)
            anti = cnt[e % g];
        int right = m - cnt[s] - anti - left;
        best = std::min(best, std::min(left, right));
        if (best == 0) break;
    }
    return best + 1;
}

int tukey_depth_point(const PointSet& xs, int i) {
    validate_indexed(xs, i);
    require_no_duplicates(xs);
    return tukey_depth_point_unchecked(xs, i);
}

int tukey_depth_oracle(const PointSet& xs, int i) {
    validate_indexed(xs, i);
    require_no_duplicates(xs);
    const Point p = xs[i];
    const int n = static_cast<int>(xs.size());
    if (n == 1) return 1;

    int best = std::numeric_limits<int>::max();
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        int left = 0, right = 0;
        for (int u = 0; u < n; ++u) {
            if (u == i || u == j) continue;
            int s = orient_sign(p, xs[j], xs[u]);
            if (s > 0) ++left;
            if (s < 0) ++right;
        }
        best = std::min(best, std::min(left, right));
    }
    return best + 1;
}

std::vector<int> tukey_depth_all(const PointSet& xs) {
    require_no_duplicates(xs);
    std::vector<int> depth(xs.size());
    for (size_t i = 0; i < xs.size(); ++i)
        depth[i] = tukey_depth_point_unchecked(xs, static_cast<int>(i));
    return depth;
}

LayerPartition tukey_layers(const PointSet& xs) {
    std::vector<int> depth = tukey_depth_all(xs);
    LayerPartition part;
    part.kind = LayerPartition::Kind::Tukey;
    if (xs.empty()) return part;

    const int n = static_cast<int>(xs.size());
    int maxd = *std::max_element(depth.begin(), depth.end());
    if (maxd > (n - 1) / 2 + 1)
        throw std::logic_error("tukey depth exceeds its ceiling");

    part.layers.assign(maxd, {});
    for (int i = 0; i < n; ++i) part.layers[depth[i] - 1].push_back(i);
    return part;
}

std::vector<std::vector<int>> first_convex_layers(const PointSet& xs,
                                                  int max_layers) {
    std::vector<int> active(xs.size());
    std::iota(active.begin(), active.end(), 0);
    std::vector<std::vector<int>> layers;
    while (!active.empty() &&
           static_cast<int>(layers.size()) < max_layers) {
        std::vector<int> layer = hull_extreme_indices(xs, active);
        std::sort(layer.begin(), layer.end());
        std::vector<int> rest;
        rest.reserve(active.size() - layer.size());
        std::set_difference(active.begin(), active.end(), layer.begin(),
                            layer.end(), std::back_inserter(rest));
        layers.push_back(std::move(layer));
        active = std::move(rest);
    }
    return layers;
}

LayerPartition convex_layers(const PointSet& xs) {
    LayerPartition part;
    part.kind = LayerPartition::Kind::Convex;
    part.layers =
        first_convex_layers(xs, std::numeric_limits<int>::max());
    return part;
}

std::vector<int> first_t_union(const LayerPartition& part, int t) {
    if (t < 0) throw std::invalid_argument("negative layer count");
    std::vector<int> out;
    int take = std::min<int>(t, static_cast<int>(part.layers.size()));
    for (int s = 0; s < take; ++s)
        out.insert(out.end(), part.layers[s].begin(), part.layers[s].end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> convex_depths_of(const PointSet& xs) {
    LayerPartition part = convex_layers(xs);
    std::vector<int> depth(xs.size(), 0);
    for (size_t t = 0; t < part.layers.size(); ++t)
        for (int idx : part.layers[t]) depth[idx] = static_cast<int>(t) + 1;
    return depth;
}

}  // namespace

DepthLabeling depth_labeling(const PointSet& xs) {
    DepthLabeling lab;
    lab.tukey_depth = tukey_depth_all(xs);
    lab.convex_depth = convex_depths_of(xs);
    return lab;
}

InsertComparison convex_depth_after_insert(const PointSet& xs, Point q) {
    for (const Point& p : xs)
        if (p == q)
            throw std::invalid_argument("inserted point duplicates the set");
    InsertComparison cmp;
    cmp.before = depth_labeling(xs);
    PointSet ys = xs;
    ys.push_back(q);
    cmp.after = depth_labeling(ys);
    return cmp;
}

bool LemmaReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json LemmaReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"lemma_id", c.id},
                       {"pass", c.pass},
                       {"witness", c.witness}});
    return arr;
}

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Indices of xs (relative to the original set) whose Tukey depth in the
// sub-set selected by `subset` is at most t.
std::vector<int> tukey_union_of_subset(const PointSet& xs,
                                       const std::vector<int>& subset,
                                       int t) {
    PointSet sub;
    sub.reserve(subset.size());
    for (int idx : subset) sub.push_back(xs[idx]);
    std::vector<int> out;
    if (sub.empty()) return out;
    for (size_t j = 0; j < sub.size(); ++j)
        if (tukey_depth_point_unchecked(sub, static_cast<int>(j)) <= t)
            out.push_back(subset[j]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> sorted_union(std::vector<std::vector<int>> parts) {
    std::vector<int> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

nlohmann::json index_witness(const char* key, const std::vector<int>& bad) {
    nlohmann::json w;
    w[key] = bad;
    return w;
}

}  // namespace

LemmaReport verify_structural_lemmas(const PointSet& xs, int t,
                                     RngStream& rng) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    require_no_duplicates(xs);

    LemmaReport report;
    auto add = [&](std::string id, bool pass, nlohmann::json witness) {
        report.checks.push_back({std::move(id), pass, std::move(witness)});
    };

    LayerPartition tuk = tukey_layers(xs);
    LayerPartition con = convex_layers(xs);

    // 2.1: each Tukey layer is in strictly convex position.
    {
        bool pass = true;
        nlohmann::json witness;
        for (size_t s = 0; s < tuk.layers.size() && pass; ++s) {
            const auto& layer = tuk.layers[s];
            if (layer.size() <= 2) continue;
            std::vector<int> extreme = hull_extreme_indices(xs, layer);
            std::sort(extreme.begin(), extreme.end());
            if (extreme.size() != layer.size()) {
                std::vector<int> interior;
                std::set_difference(layer.begin(), layer.end(),
                                    extreme.begin(), extreme.end(),
                                    std::back_inserter(interior));
                pass = false;
                witness = {{"layer", s + 1}, {"non_extreme", interior}};
            }
        }
        add("2.1", pass, witness);
    }

    std::vector<int> u_first = first_t_union(tuk, t);
    std::vector<int> v_first = first_t_union(con, t);

    // 2.2: U_[t] within V_[t].
    {
        bool pass = subset_of(u_first, v_first);
        nlohmann::json witness;
        if (!pass) {
            std::vector<int> bad;
            std::set_difference(u_first.begin(), u_first.end(),
                                v_first.begin(), v_first.end(),
                                std::back_inserter(bad));
            witness = index_witness("outside_convex_union", bad);
        }
        add("2.2", pass, witness);
    }

    // 2.3: U_[t] avoids the hull of layer t+1 entirely.
    {
        bool pass = true;
        nlohmann::json witness;
        if (static_cast<int>(tuk.layers.size()) > t &&
            !tuk.layers[t].empty()) {
            PointSet shell;
            for (int idx : tuk.layers[t]) shell.push_back(xs[idx]);
            HullResult hull = convex_hull(shell);
            for (int idx : u_first) {
                if (point_in_hull(xs[idx], hull) != Region::Outside) {
                    pass = false;
                    witness = {{"point", idx}};
                    break;
                }
            }
        }
        add("2.3", pass, witness);
    }

    // 2.4 / 2.5: random partitions preserve shallow points in some part.
    auto partition_check = [&](int parts) {
        std::vector<std::vector<int>> groups(parts);
        for (size_t i = 0; i < xs.size(); ++i)
            groups[rng.next_below(parts)].push_back(static_cast<int>(i));
        std::vector<std::vector<int>> unions;
        for (const auto& grp : groups)
            unions.push_back(tukey_union_of_subset(xs, grp, t));
        std::vector<int> covered = sorted_union(unions);
        bool pass = subset_of(u_first, covered);
        nlohmann::json witness;
        if (!pass) {
            std::vector<int> bad;
            std::set_difference(u_first.begin(), u_first.end(),
                                covered.begin(), covered.end(),
                                std::back_inserter(bad));
            witness = index_witness("lost_points", bad);
        }
        return std::pair{pass, witness};
    };
    {
        auto [pass, witness] = partition_check(2);
        add("2.4", pass, witness);
    }
    {
        auto [pass, witness] = partition_check(4);
        add("2.5", pass, witness);
    }

    // 2.6: part hulls at layer t nest inside the whole set's layer-t hull,
    // and the whole set's first-t convex union is covered by the parts'.
    {
        std::vector<std::vector<int>> groups(2);
        for (size_t i = 0; i < xs.size(); ++i)
            groups[rng.next_below(2)].push_back(static_cast<int>(i));

        bool pass = true;
        nlohmann::json witness;

        std::vector<std::vector<std::vector<int>>> part_layers;
        for (const auto& grp : groups) {
            PointSet sub;
            for (int idx : grp) sub.push_back(xs[idx]);
            part_layers.push_back(first_convex_layers(
                sub, std::numeric_limits<int>::max()));
        }

        if (static_cast<int>(con.layers.size()) >= t) {
            PointSet whole_layer;
            for (int idx : con.layers[t - 1]) whole_layer.push_back(xs[idx]);
            HullResult whole_hull = convex_hull(whole_layer);
            for (int side = 0; side < 2 && pass; ++side) {
                if (static_cast<int>(part_layers[side].size()) < t) continue;
                for (int local : part_layers[side][t - 1]) {
                    Point v = xs[groups[side][local]];
                    if (point_in_hull(v, whole_hull) == Region::Outside) {
                        pass = false;
                        witness = {{"part", side},
                                   {"point", groups[side][local]}};
                        break;
                    }
                }
            }
        } else {
            // The whole set has no layer t; the parts must not either.
            for (int side = 0; side < 2; ++side)
                if (static_cast<int>(part_layers[side].size()) >= t) {
                    pass = false;
                    witness = {{"part", side}, {"reason", "extra layer"}};
                }
        }

        if (pass) {
            std::vector<std::vector<int>> unions;
            for (int side = 0; side < 2; ++side) {
                std::vector<int> u;
                int take = std::min<int>(t, part_layers[side].size());
                for (int s = 0; s < take; ++s)
                    for (int local : part_layers[side][s])
                        u.push_back(groups[side][local]);
                std::sort(u.begin(), u.end());
                unions.push_back(std::move(u));
            }
            std::vector<int> covered = sorted_union(unions);
            if (!subset_of(v_first, covered)) {
                pass = false;
                std::vector<int> bad;
                std::set_difference(v_first.begin(), v_first.end(),
                                    covered.begin(), covered.end(),
                                    std::back_inserter(bad));
                witness = index_witness("lost_points", bad);
            }
        }
        add("2.6", pass, witness);
    }

    // 2.7: appending a random in-range point never bumps a convex depth by
    // more than one.
    {
        double minx = xs[0].x, maxx = xs[0].x, miny = xs[0].y, maxy = xs[0].y;
        for (const Point& p : xs) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        Point q;
        do {
            q = {minx + (maxx - minx) * rng.next_double(),
                 miny + (maxy - miny) * rng.next_double()};
        } while (std::find(xs.begin(), xs.end(), q) != xs.end());

        InsertComparison cmp = convex_depth_after_insert(xs, q);
        bool pass = true;
        nlohmann::json witness;
        for (size_t i = 0; i < xs.size(); ++i) {
            int delta = cmp.after.convex_depth[i] - cmp.before.convex_depth[i];
            if (delta != 0 && delta != 1) {
                pass = false;
                witness = {{"point", i},
                           {"before", cmp.before.convex_depth[i]},
                           {"after", cmp.after.convex_depth[i]},
                           {"inserted", {q.x, q.y}}};
                break;
            }
        }
        add("2.7", pass, witness);
    }

    return report;
}

}  // namespace tukey
