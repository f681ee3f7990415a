#include "tukey/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tukey/pointset_io.hpp"

namespace tukey {

namespace {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), stream_(stream_id) {
    // Decorrelate the stream origin from both inputs before walking the
    // Weyl sequence; distinct (seed, stream) pairs land far apart.
    state_ = mix64(master_seed + kGamma) ^ mix64(stream_id * kGamma + 1);
}

std::uint64_t RngStream::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below(0)");
    // Multiply-shift map; bias is ~bound/2^64, irrelevant at our scales.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

ConvexPolygon regular_kgon(int k, double area) {
    if (k < 3) throw std::invalid_argument("regular polygon needs k >= 3");
    if (!(area > 0.0) || !std::isfinite(area))
        throw std::invalid_argument("polygon area must be positive");
    const double step = 2.0 * std::numbers::pi / k;
    const double radius = std::sqrt(2.0 * area / (k * std::sin(step)));
    std::vector<Point> v(k);
    for (int i = 0; i < k; ++i)
        v[i] = {radius * std::cos(step * i), radius * std::sin(step * i)};
    return make_convex_polygon(std::move(v));
}

TriangulatedRegion triangulate_fan(const ConvexPolygon& poly) {
    TriangulatedRegion region;
    region.source = poly;
    const auto& v = poly.vertices;
    double total = polygon_area(poly);
    double acc = 0.0;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
        std::array<Point, 3> tri = {v[0], v[i], v[i + 1]};
        double a = ((tri[1].x - tri[0].x) * (tri[2].y - tri[0].y) -
                    (tri[1].y - tri[0].y) * (tri[2].x - tri[0].x)) /
                   2.0;
        acc += a;
        region.triangles.push_back(tri);
        region.cumulative.push_back(acc / total);
    }
    region.cumulative.back() = 1.0;
    for (size_t i = 1; i < region.cumulative.size(); ++i)
        if (!(region.cumulative[i] > region.cumulative[i - 1]))
            throw std::logic_error("fan cumulative masses not increasing");
    return region;
}

PointSet sample_uniform(const TriangulatedRegion& region, int n,
                        RngStream& rng) {
    if (n < 0) throw std::invalid_argument("negative sample count");
    PointSet out;
    out.reserve(n);
    const auto& cum = region.cumulative;
    for (int i = 0; i < n; ++i) {
        double pick = rng.next_double();
        size_t idx = std::upper_bound(cum.begin(), cum.end(), pick) -
                     cum.begin();
        if (idx >= region.triangles.size()) idx = region.triangles.size() - 1;
        const auto& t = region.triangles[idx];
        // Square-root map: uniform over the triangle.
        double su = std::sqrt(rng.next_double());
        double v = rng.next_double();
        double w0 = 1.0 - su, w1 = su * (1.0 - v), w2 = su * v;
        out.push_back({w0 * t[0].x + w1 * t[1].x + w2 * t[2].x,
                       w0 * t[0].y + w1 * t[1].y + w2 * t[2].y});
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

ConvexPolygon parse_shape_spec(const std::string& spec) {
    size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("shape spec needs 'regular:' or 'vertices:'");
    std::string head = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);

    if (head == "regular") {
        int k = 0;
        double area = 1.0;
        bool saw_k = false;
        for (const std::string& kv : split(body, ',')) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("bad shape option: '" + kv + "'");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "k") {
                k = static_cast<int>(io::parse_double(val));
                saw_k = true;
            } else if (key == "area") {
                area = io::parse_double(val);
            } else {
                throw std::invalid_argument("unknown shape option: '" + key +
                                            "'");
            }
        }
        if (!saw_k) throw std::invalid_argument("regular shape needs k=");
        return regular_kgon(k, area);
    }

    if (head == "vertices") {
        std::vector<Point> v;
        for (const std::string& pair : split(body, ';')) {
            auto xy = split(pair, ',');
            if (xy.size() != 2)
                throw std::invalid_argument("bad vertex: '" + pair + "'");
            v.push_back({io::parse_double(xy[0]), io::parse_double(xy[1])});
        }
        return make_convex_polygon(std::move(v));
    }

    throw std::invalid_argument("unknown shape kind: '" + head + "'");
}

ConvexPolygon scale_to_unit_area(const ConvexPolygon& poly) {
    double s = 1.0 / std::sqrt(polygon_area(poly));
    std::vector<Point> v = poly.vertices;
    for (Point& p : v) {
        p.x *= s;
        p.y *= s;
    }
    return make_convex_polygon(std::move(v));
}

}  // namespace tukey
