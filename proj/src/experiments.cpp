#include "tukey/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "tukey/depth.hpp"
#include "tukey/pointset_io.hpp"
#include "tukey/sampling.hpp"

namespace tukey {

namespace {

constexpr double kCi95 = 1.96;

struct MetricToken {
    Metric metric;
    const char* token;
};

constexpr MetricToken kMetricTokens[] = {
    {Metric::UFirstT, "U_first_t"},   {Metric::VFirstT, "V_first_t"},
    {Metric::HullSize, "hull_size"},  {Metric::HullArea, "hull_area"},
    {Metric::TukeyAreaT, "tukey_area_t"}, {Metric::EfronGap, "efron_gap"},
    {Metric::Lemma29Gap, "lemma29_gap"},  {Metric::Tau, "tau"},
};

// Deepest Tukey layer a metric evaluated at parameter t needs to know about.
int depth_need(Metric m, int t) {
    switch (m) {
        case Metric::UFirstT:
        case Metric::VFirstT:
        case Metric::TukeyAreaT:
            return t;
        case Metric::HullSize:
        case Metric::HullArea:
        case Metric::EfronGap:
            return 1;
        case Metric::Lemma29Gap:
        case Metric::Tau:
            return t + 1;
    }
    throw std::logic_error("unhandled metric");
}

bool is_saturated(int n, int t) { return t >= (n - 1) / 2 + 1; }

// Same filtered orientation as the depth sweep: callers guarantee finite
// coordinates, the exact path handles inconclusive magnitudes.
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

// Tukey depth of `p` in the full sample, truncated at cap + 1, computed from
// the pruned side only.  `mates` holds the other members of the first `cap`
// convex layers and `barrier` the hull vertices of the remaining points.
//
// Why this is exact up to the cap: an open half-plane bounded by a line
// through p that contains c <= cap - 1 sample points can contain only points
// of depth at most c (slide the boundary onto any member), so every point of
// such a half-plane sits on the first c convex layers and is a mate.  The
// minimizing direction can likewise be rotated onto a line through p and a
// mate without raising the count.  Conversely a side containing any point
// from behind the barrier holds at least cap + 1 points, so whenever the
// mate-only count of a side is small we only need to confirm that no barrier
// point crosses it, a support test against the barrier hull.
int capped_tukey_depth(const PointSet& xs, Point p,
                       const std::vector<int>& mates,
                       const std::vector<Point>& barrier, int cap) {
    const int m = static_cast<int>(mates.size());
    if (m == 0) return 1;

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<signed char> half(m, 0);
    for (int a = 0; a < m; ++a) {
        const Point q = xs[mates[a]];
        half[a] = (q.y > p.y || (q.y == p.y && q.x > p.x)) ? 0 : 1;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (half[a] != half[b]) return half[a] < half[b];
        int o = fast_orient(p, xs[mates[a]], xs[mates[b]]);
        if (o != 0) return o > 0;
        return a < b;
    });

    std::vector<int> rep, cnt;
    for (int pos : order) {
        if (!rep.empty() && half[rep.back()] == half[pos] &&
            fast_orient(p, xs[mates[rep.back()]], xs[mates[pos]]) == 0) {
            ++cnt.back();
        } else {
            rep.push_back(pos);
            cnt.push_back(1);
        }
    }
    const int g = static_cast<int>(rep.size());
    std::vector<int> prefix(g + 1, 0);
    for (int t = 0; t < g; ++t) prefix[t + 1] = prefix[t] + cnt[t];
    auto range_count = [&](int a, int b) {
        if (a >= b) return 0;
        if (b <= g) return prefix[b] - prefix[a];
        return prefix[g] - prefix[a] + prefix[b - g];
    };

    auto side_clear = [&](int s, int sign) {
        const Point q = xs[mates[rep[s]]];
        for (const Point& v : barrier)
            if (fast_orient(p, q, v) == sign) return false;
        return true;
    };

    int best = cap;  // anything at or past the cap classifies the same way
    int e = 1;
    for (int s = 0; s < g && best > 0; ++s) {
        if (e < s + 1) e = s + 1;
        while (e < s + g &&
               fast_orient(p, xs[mates[rep[s]]], xs[mates[rep[e % g]]]) > 0)
            ++e;
        int left = range_count(s + 1, e);
        int anti = 0;
        if (e < s + g &&
            fast_orient(p, xs[mates[rep[s]]], xs[mates[rep[e % g]]]) == 0)
            anti = cnt[e % g];
        int right = m - cnt[s] - anti - left;
        if (left < best && side_clear(s, +1)) best = left;
        if (right < best && side_clear(s, -1)) best = right;
    }
    return best + 1;
}

// Everything one sample contributes, with Tukey depths known exactly up to
// `cap` and truncated beyond.
struct TrialStats {
    int n = 0;
    int cap = 0;
    std::vector<int> conv_sizes;    // sizes of the first cap convex layers
    std::vector<int> cand;          // members of those layers, sorted
    std::vector<int> depth;        // per cand: min(tukey depth, cap + 1)
    int hull_size = 0;
    double hull_area = 0.0;

    int u_first(int s) const {
        int c = 0;
        for (int d : depth) c += d <= s;
        return c;
    }
    int v_first(int s) const {
        int c = 0;
        for (size_t i = 0; i < conv_sizes.size() && i < size_t(s); ++i)
            c += conv_sizes[i];
        return c;
    }
};

TrialStats compute_trial_stats(const PointSet& xs, int cap) {
    require_no_duplicates(xs);
    TrialStats st;
    st.n = static_cast<int>(xs.size());
    st.cap = cap;

    std::vector<std::vector<int>> conv = first_convex_layers(xs, cap);
    st.conv_sizes.reserve(conv.size());
    for (const auto& layer : conv) {
        st.conv_sizes.push_back(static_cast<int>(layer.size()));
        st.cand.insert(st.cand.end(), layer.begin(), layer.end());
    }
    std::sort(st.cand.begin(), st.cand.end());

    HullResult whole = convex_hull(xs);
    st.hull_size = st.conv_sizes.empty() ? 0 : st.conv_sizes.front();
    st.hull_area = whole.area();

    std::vector<Point> barrier;
    if (st.cand.size() < xs.size()) {
        PointSet rest;
        rest.reserve(xs.size() - st.cand.size());
        size_t next = 0;
        for (int i = 0; i < st.n; ++i) {
            if (next < st.cand.size() && st.cand[next] == i) {
                ++next;
            } else {
                rest.push_back(xs[i]);
            }
        }
        barrier = convex_hull(rest).vertices;
    }

    st.depth.resize(st.cand.size());
    std::vector<int> mates(st.cand.size() > 0 ? st.cand.size() - 1 : 0);
    for (size_t c = 0; c < st.cand.size(); ++c) {
        size_t w = 0;
        for (size_t o = 0; o < st.cand.size(); ++o)
            if (o != c) mates[w++] = st.cand[o];
        st.depth[c] =
            capped_tukey_depth(xs, xs[st.cand[c]], mates, barrier, cap);
    }
    return st;
}

double layer_hull_area(const PointSet& xs, const TrialStats& st, int s) {
    PointSet layer;
    for (size_t c = 0; c < st.cand.size(); ++c)
        if (st.depth[c] == s) layer.push_back(xs[st.cand[c]]);
    if (layer.empty()) return 0.0;
    return convex_hull(layer).area();
}

double evaluate_metric(const PointSet& xs, const TrialStats& st, Metric m,
                       int t) {
    switch (m) {
        case Metric::UFirstT:
            return st.u_first(t);
        case Metric::VFirstT:
            return st.v_first(t);
        case Metric::HullSize:
            return st.hull_size;
        case Metric::HullArea:
            return st.hull_area;
        case Metric::TukeyAreaT:
            return layer_hull_area(xs, st, t);
        case Metric::EfronGap:
            return st.hull_size - st.n * (1.0 - st.hull_area);
        case Metric::Lemma29Gap:
            return st.n * (1.0 - layer_hull_area(xs, st, t + 1)) -
                   st.u_first(t);
        case Metric::Tau:
            return st.u_first(t + 1);
    }
    throw std::logic_error("unhandled metric");
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.shape.vertices.size() < 3)
        throw std::invalid_argument("experiment shape is not a polygon");
    if (cfg.n_values.empty())
        throw std::invalid_argument("experiment needs at least one n");
    for (int n : cfg.n_values)
        if (n < 1) throw std::invalid_argument("sample sizes must be >= 1");
    if (cfg.t_values.empty())
        throw std::invalid_argument("experiment needs at least one t");
    for (int t : cfg.t_values)
        if (t < 1) throw std::invalid_argument("layer depths must be >= 1");
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (cfg.metrics.empty())
        throw std::invalid_argument("experiment needs at least one metric");
    if (cfg.threads < 0)
        throw std::invalid_argument("threads must be >= 0");
}

std::string format_cell(double v) { return io::format_double(v); }

}  // namespace

std::string metric_name(Metric m) {
    for (const auto& row : kMetricTokens)
        if (row.metric == m) return row.token;
    throw std::logic_error("unhandled metric");
}

Metric metric_from_string(const std::string& token) {
    if (token == "V_first_t_size") return Metric::VFirstT;
    for (const auto& row : kMetricTokens)
        if (token == row.token) return row.metric;
    throw std::invalid_argument("unknown metric: " + token);
}

double TrialTable::at(int n_index, int t_index, int metric_index,
                      int trial) const {
    if (n_index < 0 || size_t(n_index) >= n_values.size() || t_index < 0 ||
        size_t(t_index) >= t_values.size() || metric_index < 0 ||
        size_t(metric_index) >= metrics.size() || trial < 0 ||
        trial >= trials)
        throw std::out_of_range("trial table index out of range");
    const size_t T = t_values.size();
    const size_t M = metrics.size();
    size_t idx = ((size_t(n_index) * T + t_index) * M + metric_index) *
                     size_t(trials) +
                 trial;
    return values.at(idx);
}

std::vector<EstimateRecord> run_estimate(const ExperimentConfig& cfg,
                                         TrialTable* table) {
    validate_config(cfg);
    const ConvexPolygon shape = scale_to_unit_area(cfg.shape);
    const TriangulatedRegion region = triangulate_fan(shape);
    const int k = static_cast<int>(shape.vertices.size());
    const size_t T = cfg.t_values.size();
    const size_t M = cfg.metrics.size();
    const int trials = cfg.trials;

    int cap = 1;
    for (int t : cfg.t_values)
        for (Metric m : cfg.metrics) cap = std::max(cap, depth_need(m, t));

    if (table) {
        table->n_values = cfg.n_values;
        table->t_values = cfg.t_values;
        table->metrics = cfg.metrics;
        table->trials = trials;
        table->values.assign(cfg.n_values.size() * T * M * size_t(trials),
                             0.0);
    }

    unsigned hw = std::thread::hardware_concurrency();
    int workers = cfg.threads > 0 ? cfg.threads : std::max(1u, hw);
    workers = std::min<int>(workers, trials);

    std::vector<EstimateRecord> records;
    records.reserve(cfg.n_values.size() * T * M);

    for (size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const int n = cfg.n_values[ni];
        const auto started = std::chrono::steady_clock::now();

        // slot layout: [t_index][metric_index][trial], written by whichever
        // worker drew the trial, so aggregation order never depends on the
        // schedule.
        std::vector<double> slots(T * M * size_t(trials), 0.0);
        std::atomic<int> next_trial{0};
        std::atomic<bool> failed{false};
        std::string failure;
        std::mutex failure_mutex;

        auto body = [&]() {
            for (;;) {
                int trial = next_trial.fetch_add(1);
                if (trial >= trials || failed.load()) return;
                try {
                    RngStream rng(cfg.master_seed,
                                  static_cast<std::uint64_t>(trial));
                    PointSet xs = sample_uniform(region, n, rng);
                    TrialStats st = compute_trial_stats(xs, cap);
                    for (size_t ti = 0; ti < T; ++ti)
                        for (size_t mi = 0; mi < M; ++mi)
                            slots[(ti * M + mi) * trials + trial] =
                                evaluate_metric(xs, st, cfg.metrics[mi],
                                                cfg.t_values[ti]);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    failed.store(true);
                    if (failure.empty()) failure = e.what();
                    return;
                }
            }
        };

        if (workers == 1) {
            body();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) pool.emplace_back(body);
            for (auto& th : pool) th.join();
        }
        if (failed.load())
            throw std::runtime_error("trial failed: " + failure);

        double elapsed = 0.0;
        if (cfg.measure_time) {
            elapsed = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
        }

        for (size_t ti = 0; ti < T; ++ti) {
            for (size_t mi = 0; mi < M; ++mi) {
                const double* vals = &slots[(ti * M + mi) * trials];
                double sum = 0.0;
                for (int j = 0; j < trials; ++j) sum += vals[j];
                double mean = sum / trials;
                double ss = 0.0;
                for (int j = 0; j < trials; ++j) {
                    double d = vals[j] - mean;
                    ss += d * d;
                }
                double variance = trials > 1 ? ss / (trials - 1) : 0.0;
                double se = std::sqrt(variance / trials);

                EstimateRecord rec;
                rec.k = k;
                rec.n = n;
                rec.t = cfg.t_values[ti];
                rec.trials = trials;
                rec.metric = metric_name(cfg.metrics[mi]);
                rec.mean = mean;
                rec.variance = variance;
                rec.std_error = se;
                rec.ci95_low = mean - kCi95 * se;
                rec.ci95_high = mean + kCi95 * se;
                rec.seconds = elapsed;
                rec.saturated = is_saturated(n, rec.t);
                if (cfg.metrics[mi] == Metric::UFirstT) {
                    TheoreticalBounds b = theoretical_bounds(n, k, rec.t + 1);
                    rec.has_bound = true;
                    rec.bound_value = k == 3 ? b.tukey_triangle_upper
                                             : b.tukey_kgon_upper;
                }
                records.push_back(rec);

                if (table) {
                    double* dst =
                        &table->values[((ni * T + ti) * M + mi) * trials];
                    std::copy(vals, vals + trials, dst);
                }
            }
        }
    }
    return records;
}

TheoreticalBounds theoretical_bounds(int n, int k, int t) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (k < 3) throw std::invalid_argument("k must be >= 3");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    TheoreticalBounds b;
    b.n = n;
    b.k = k;
    b.t = t;
    b.constrains_first_t = t - 1;
    const double ln_n = std::log(static_cast<double>(n));
    b.tukey_triangle_upper = 4.0 * t * ln_n + 4.0 * t + 10.0;
    b.tukey_kgon_upper =
        4.0 * t * k * std::log(static_cast<double>(n) / k) + 4.0 * t * k +
        10.0 * k;
    const double damp = 1.0 - double(t) * t / (2.0 * n);
    b.square_lower_reference = 2.0 * damp * t * ln_n;
    b.triangle_lower_reference = 0.25 * damp * t * ln_n;
    b.hull_size_reference = (2.0 / 3.0) * k * ln_n;
    return b;
}

FitResult fit_log_slope(const std::vector<EstimateRecord>& records) {
    if (records.size() < 3)
        throw std::invalid_argument("fit needs at least 3 records");
    for (const auto& r : records) {
        if (r.k != records.front().k || r.t != records.front().t ||
            r.metric != records.front().metric)
            throw std::invalid_argument(
                "fit records must share k, t, and metric");
        if (r.n < 1) throw std::invalid_argument("fit records need n >= 1");
    }

    const size_t m = records.size();
    double mx = 0.0, my = 0.0;
    for (const auto& r : records) {
        mx += std::log(static_cast<double>(r.n));
        my += r.mean;
    }
    mx /= double(m);
    my /= double(m);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& r : records) {
        double dx = std::log(static_cast<double>(r.n)) - mx;
        double dy = r.mean - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit needs at least two distinct n");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = syy - fit.slope * sxy;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points_used = static_cast<int>(m);
    return fit;
}

std::string render_records(const std::vector<EstimateRecord>& records,
                           EmitFormat format) {
    if (format == EmitFormat::Csv) {
        std::string out =
            "k,n,t,trials,metric,mean,variance,stderr,ci95_low,ci95_high,"
            "bound_value,seconds\n";
        for (const auto& r : records) {
            out += std::to_string(r.k);
            out += ',';
            out += std::to_string(r.n);
            out += ',';
            out += std::to_string(r.t);
            out += ',';
            out += std::to_string(r.trials);
            out += ',';
            out += r.metric;
            out += ',';
            out += format_cell(r.mean);
            out += ',';
            out += format_cell(r.variance);
            out += ',';
            out += format_cell(r.std_error);
            out += ',';
            out += format_cell(r.ci95_low);
            out += ',';
            out += format_cell(r.ci95_high);
            out += ',';
            if (r.has_bound) out += format_cell(r.bound_value);
            out += ',';
            out += format_cell(r.seconds);
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json row;
        row["k"] = r.k;
        row["n"] = r.n;
        row["t"] = r.t;
        row["trials"] = r.trials;
        row["metric"] = r.metric;
        row["mean"] = r.mean;
        row["variance"] = r.variance;
        row["stderr"] = r.std_error;
        row["ci95_low"] = r.ci95_low;
        row["ci95_high"] = r.ci95_high;
        if (r.has_bound)
            row["bound_value"] = r.bound_value;
        else
            row["bound_value"] = nullptr;
        row["seconds"] = r.seconds;
        row["saturated"] = r.saturated;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

void emit_records(const std::vector<EstimateRecord>& records,
                  EmitFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << render_records(records, format);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<EstimateRecord> parse_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty records file: " + path);
    const std::string header =
        "k,n,t,trials,metric,mean,variance,stderr,ci95_low,ci95_high,"
        "bound_value,seconds";
    if (line == header + "\r") line.pop_back();
    if (line != header)
        throw std::runtime_error("unexpected header in " + path);

    std::vector<EstimateRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (cells.size() != 12)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     " of " + path + ": expected 12 cells");
        EstimateRecord r;
        r.k = std::stoi(cells[0]);
        r.n = std::stoi(cells[1]);
        r.t = std::stoi(cells[2]);
        r.trials = std::stoi(cells[3]);
        r.metric = cells[4];
        r.mean = io::parse_double(cells[5]);
        r.variance = io::parse_double(cells[6]);
        r.std_error = io::parse_double(cells[7]);
        r.ci95_low = io::parse_double(cells[8]);
        r.ci95_high = io::parse_double(cells[9]);
        r.has_bound = !cells[10].empty();
        if (r.has_bound) r.bound_value = io::parse_double(cells[10]);
        r.seconds = io::parse_double(cells[11]);
        r.saturated = is_saturated(r.n, r.t);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace tukey
