#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

// Counter-style splittable generator: the draw sequence is a pure function
// of (master_seed, stream_id), so trial j of an experiment can always use
// stream j and reproduce bit-identically no matter how work is scheduled.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_id() const { return stream_; }

    std::uint64_t next_u64();
    double next_double();  // uniform in [0, 1), 53 random bits
    // Uniform integer in [0, bound); bound must be positive.
    std::uint64_t next_below(std::uint64_t bound);

  private:
    std::uint64_t master_;
    std::uint64_t stream_;
    std::uint64_t state_;
};

// Regular k-gon centered at the origin, first vertex on the positive x axis,
// scaled to the requested area.  k >= 3, area > 0.
ConvexPolygon regular_kgon(int k, double area);

// Fan triangulation from vertex 0 with cumulative area fractions, the
// sampling backbone: pick a triangle by inverting the cumulative masses,
// then map two uniforms into it.
struct TriangulatedRegion {
    ConvexPolygon source;
    std::vector<std::array<Point, 3>> triangles;  // k-2 fan triangles
    std::vector<double> cumulative;  // strictly increasing, last == 1.0
};

TriangulatedRegion triangulate_fan(const ConvexPolygon& poly);

// n independent uniform points from the region; consumes exactly 3 draws per
// point from the stream regardless of the triangle count.
PointSet sample_uniform(const TriangulatedRegion& region, int n,
                        RngStream& rng);

// Polygon descriptions accepted by the CLI and the experiment configs:
//   "regular:k=6,area=2.5"          (area defaults to 1 when omitted)
//   "vertices:0,0;4,0;4,4;0,4"      (counterclockwise, strictly convex)
ConvexPolygon parse_shape_spec(const std::string& spec);

// Same polygon rescaled about the origin to unit area.
ConvexPolygon scale_to_unit_area(const ConvexPolygon& poly);

}  // namespace tukey
