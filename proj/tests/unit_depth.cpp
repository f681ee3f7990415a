#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tukey/depth.hpp"
#include "tukey/sampling.hpp"

using namespace tukey;

namespace {

// Mixed instance pool: uniform squares, exact grids (collinear triples,
// shared rays), and concentric rings (many points on one ray through the
// center), all tough cases for the angular sweep's group collapsing.
PointSet stress_instance(RngStream& rng, int which, int n) {
    if (which == 0) return testsupport::random_square_points(rng, n);
    if (which == 1) {
        int w = 2 + int(rng.next_below(5));
        PointSet xs;
        for (int i = 0; i < w && int(xs.size()) < n; ++i)
            for (int j = 0; j < w && int(xs.size()) < n; ++j)
                xs.push_back({double(i), double(j)});
        return xs;
    }
    PointSet xs = {{0.0, 0.0}};
    int k = 5 + int(rng.next_below(4));
    for (int ring = 1; int(xs.size()) < n && ring <= 4; ++ring)
        for (int a = 0; a < k && int(xs.size()) < n; ++a) {
            double th = 2 * std::numbers::pi * a / k;
            xs.push_back({ring * std::cos(th), ring * std::sin(th)});
        }
    return xs;
}

std::vector<int> sorted_all_indices(size_t n) {
    std::vector<int> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = int(i);
    return v;
}

}  // namespace

TEST_CASE("tukey depth frozen small configurations") {
    // Unit square with center: the center sees two corners on each side of
    // any line through it, so its depth is 2; corners are depth 1.
    PointSet square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    std::vector<int> depths = tukey_depth_all(square);
    CHECK(depths == std::vector<int>{1, 1, 1, 1, 2});
    for (int i = 0; i < 5; ++i) {
        CHECK(tukey_depth_oracle(square, i) == depths[i]);
        CHECK(testsupport::rational_tukey_depth(square, i) == depths[i]);
    }

    LayerPartition layers = tukey_layers(square);
    CHECK(layers.kind == LayerPartition::Kind::Tukey);
    REQUIRE(layers.layers.size() == 2);
    CHECK(layers.layers[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(layers.layers[1] == std::vector<int>{4});

    // Single point and a pair.
    CHECK(tukey_depth_all(PointSet{{2, 3}}) == std::vector<int>{1});
    CHECK(tukey_depth_all(PointSet{{0, 0}, {1, 1}}) ==
          std::vector<int>{1, 1});

    // Three collinear points: every point, including the middle one, has an
    // empty open half-plane along the common line.
    PointSet collinear = {{0, 0}, {1, 1}, {2, 2}};
    CHECK(tukey_depth_all(collinear) == std::vector<int>{1, 1, 1});
}

TEST_CASE("regular pentagon with center realizes a depth gap") {
    PointSet xs;
    for (int a = 0; a < 5; ++a) {
        double th = 2 * std::numbers::pi * a / 5;
        xs.push_back({std::cos(th), std::sin(th)});
    }
    xs.push_back({0.0, 0.0});

    std::vector<int> depths = tukey_depth_all(xs);
    CHECK(depths == std::vector<int>{1, 1, 1, 1, 1, 3});
    CHECK(testsupport::rational_tukey_depth(xs, 5) == 3);

    // Depth 2 is unrealized: the partition carries an empty middle slot.
    LayerPartition layers = tukey_layers(xs);
    REQUIRE(layers.layers.size() == 3);
    CHECK(layers.layers[0].size() == 5);
    CHECK(layers.layers[1].empty());
    CHECK(layers.layers[2] == std::vector<int>{5});

    // Convex peeling of the same set has no empty layer.
    LayerPartition conv = convex_layers(xs);
    REQUIRE(conv.layers.size() == 2);
    CHECK(conv.layers[0].size() == 5);
    CHECK(conv.layers[1] == std::vector<int>{5});
}

TEST_CASE("sweep equals both oracles on stress instances") {
    RngStream rng(41, 0);
    for (int rep = 0; rep < 150; ++rep) {
        int which = rep % 3;
        int n = 1 + int(rng.next_below(36));
        PointSet xs = stress_instance(rng, which, n);
        n = int(xs.size());

        int max_depth = 0;
        for (int i = 0; i < n; ++i) {
            int sweep = tukey_depth_point(xs, i);
            CHECK(sweep == tukey_depth_oracle(xs, i));
            CHECK(sweep == testsupport::rational_tukey_depth(xs, i));
            max_depth = std::max(max_depth, sweep);
        }
        CHECK(max_depth <= (n - 1) / 2 + 1);
    }
}

TEST_CASE("depth input validation") {
    PointSet xs = {{0, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(tukey_depth_point(xs, -1), std::invalid_argument);
    CHECK_THROWS_AS(tukey_depth_point(xs, 3), std::invalid_argument);
    PointSet dup = {{0, 0}, {1, 0}, {0, 0}};
    CHECK_THROWS_AS(tukey_depth_point(dup, 0), std::invalid_argument);
    CHECK_THROWS_AS(tukey_depth_all(dup), std::invalid_argument);
    CHECK_THROWS_AS(require_no_duplicates(dup), std::invalid_argument);
}

TEST_CASE("tukey_layers is a depth-indexed partition") {
    RngStream rng(42, 0);
    for (int rep = 0; rep < 60; ++rep) {
        PointSet xs = stress_instance(rng, rep % 3, 4 + int(rng.next_below(40)));
        std::vector<int> depths = tukey_depth_all(xs);
        LayerPartition part = tukey_layers(xs);

        REQUIRE(!part.layers.empty());
        CHECK(!part.layers.back().empty());
        std::vector<int> seen;
        for (size_t d = 0; d < part.layers.size(); ++d) {
            for (int i : part.layers[d]) {
                CHECK(depths[i] == int(d) + 1);
                seen.push_back(i);
            }
            CHECK(std::is_sorted(part.layers[d].begin(),
                                 part.layers[d].end()));
        }
        std::sort(seen.begin(), seen.end());
        CHECK(seen == sorted_all_indices(xs.size()));
    }
}

TEST_CASE("convex_layers equals independent rational peeling") {
    RngStream rng(43, 0);
    for (int rep = 0; rep < 60; ++rep) {
        PointSet xs = stress_instance(rng, rep % 3, 4 + int(rng.next_below(40)));
        LayerPartition part = convex_layers(xs);
        std::vector<std::vector<int>> expect = testsupport::rational_peel(xs);
        REQUIRE(part.layers.size() == expect.size());
        for (size_t d = 0; d < expect.size(); ++d) {
            CHECK(!part.layers[d].empty());
            CHECK(part.layers[d] == expect[d]);
        }

        // The truncated form is a prefix of the full peeling.
        for (int L : {0, 1, 2, int(expect.size()), int(expect.size()) + 3}) {
            std::vector<std::vector<int>> head = first_convex_layers(xs, L);
            size_t want = std::min<size_t>(L, expect.size());
            REQUIRE(head.size() == want);
            for (size_t d = 0; d < want; ++d) CHECK(head[d] == expect[d]);
        }
    }
}

TEST_CASE("first_t_union basics") {
    PointSet xs = {{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2},
                   {1, 2}, {2, 1}, {3, 2}, {2, 3}};
    LayerPartition conv = convex_layers(xs);
    CHECK(first_t_union(conv, 0).empty());
    CHECK_THROWS_AS(first_t_union(conv, -1), std::invalid_argument);

    std::vector<int> all = first_t_union(conv, 100);
    CHECK(all == sorted_all_indices(xs.size()));

    std::vector<int> one = first_t_union(conv, 1);
    CHECK(one == std::vector<int>{0, 1, 2, 3});
    std::vector<int> two = first_t_union(conv, 2);
    CHECK(std::is_sorted(two.begin(), two.end()));
    CHECK(two.size() == 8);
}

TEST_CASE("points in convex position are all depth 1, both notions") {
    ConvexPolygon tenGon = regular_kgon(10, 4.0);
    PointSet xs(tenGon.vertices.begin(), tenGon.vertices.end());
    std::vector<int> depths = tukey_depth_all(xs);
    for (int d : depths) CHECK(d == 1);
    CHECK(tukey_layers(xs).layers.size() == 1);
    CHECK(convex_layers(xs).layers.size() == 1);
}

TEST_CASE("in general position the first layers coincide") {
    RngStream rng(44, 0);
    for (int rep = 0; rep < 40; ++rep) {
        PointSet xs = testsupport::random_square_points(
            rng, 5 + int(rng.next_below(50)));
        LayerPartition tuk = tukey_layers(xs);
        LayerPartition conv = convex_layers(xs);
        CHECK(tuk.layers[0] == conv.layers[0]);
    }
}

TEST_CASE("depth_labeling matches the layer partitions") {
    RngStream rng(45, 0);
    PointSet xs = testsupport::random_square_points(rng, 35);
    DepthLabeling lab = depth_labeling(xs);
    std::vector<int> tukey = tukey_depth_all(xs);
    CHECK(lab.tukey_depth == tukey);

    LayerPartition conv = convex_layers(xs);
    for (size_t d = 0; d < conv.layers.size(); ++d)
        for (int i : conv.layers[d]) CHECK(lab.convex_depth[i] == int(d) + 1);
}

TEST_CASE("convex_depth_after_insert moves depths by at most one, never down") {
    RngStream rng(46, 0);
    for (int rep = 0; rep < 50; ++rep) {
        PointSet xs = testsupport::random_square_points(
            rng, 4 + int(rng.next_below(30)));
        Point q{rng.next_double() * 1.6 - 0.3, rng.next_double() * 1.6 - 0.3};
        InsertComparison cmp = convex_depth_after_insert(xs, q);
        REQUIRE(cmp.before.convex_depth.size() == xs.size());
        REQUIRE(cmp.after.convex_depth.size() == xs.size() + 1);
        for (size_t i = 0; i < xs.size(); ++i) {
            int delta =
                cmp.after.convex_depth[i] - cmp.before.convex_depth[i];
            CHECK(delta >= 0);
            CHECK(delta <= 1);
        }
        CHECK(cmp.after.convex_depth.back() >= 1);
    }
    PointSet xs = {{0, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(convex_depth_after_insert(xs, Point{0, 0}),
                    std::invalid_argument);
}

TEST_CASE("verify_structural_lemmas passes on random instances") {
    RngStream rng(47, 0);
    ConvexPolygon hexagon = regular_kgon(6, 1.0);
    for (int rep = 0; rep < 60; ++rep) {
        int n = 6 + int(rng.next_below(75));
        PointSet xs = rep % 2 == 0
                          ? testsupport::random_square_points(rng, n)
                          : testsupport::random_in_polygon(hexagon, n, rng);
        int t = 1 + int(rng.next_below(3));
        RngStream part_rng(470, rep);
        LemmaReport report = verify_structural_lemmas(xs, t, part_rng);
        if (!report.all_pass()) {
            CAPTURE(report.to_json().dump());
        }
        CHECK(report.all_pass());
        REQUIRE(report.checks.size() == 7);
        std::vector<std::string> ids;
        for (const auto& c : report.checks) {
            ids.push_back(c.id);
            CHECK(c.pass);
            CHECK(c.witness.is_null());
        }
        CHECK(ids == std::vector<std::string>{"2.1", "2.2", "2.3", "2.4",
                                              "2.5", "2.6", "2.7"});
    }
}

TEST_CASE("lemma report JSON shape") {
    RngStream rng(48, 0);
    PointSet xs = testsupport::random_square_points(rng, 25);
    RngStream part_rng(480, 0);
    LemmaReport report = verify_structural_lemmas(xs, 2, part_rng);
    auto j = report.to_json();
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 7);
    for (const auto& row : j) {
        CHECK(row.contains("lemma_id"));
        CHECK(row.contains("pass"));
        CHECK(row.contains("witness"));
    }
}
