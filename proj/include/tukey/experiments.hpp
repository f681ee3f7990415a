#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

// Per-trial quantities the estimator can aggregate.  Names below match the
// CSV metric tokens accepted by the CLI.
//
//   U_first_t     number of points whose Tukey depth is at most t
//   V_first_t     number of points on the first t convex layers
//                 ("V_first_t_size" is accepted as an input alias)
//   hull_size     number of extreme points of the whole sample
//   hull_area     area of the convex hull of the whole sample
//   tukey_area_t  area of the hull of the points at Tukey depth exactly t
//                 (0 when no point reaches that depth)
//   efron_gap     hull_size - n * (1 - hull_area), a signed per-trial
//                 identity gap whose mean should sit near zero
//   lemma29_gap   n * (1 - area of the hull of depth-(t+1) points) minus
//                 U_first_t, the slack of the expected-count inequality
//   tau           number of points whose Tukey depth is at most t + 1
enum class Metric {
    UFirstT,
    VFirstT,
    HullSize,
    HullArea,
    TukeyAreaT,
    EfronGap,
    Lemma29Gap,
    Tau,
};

// Canonical token, e.g. Metric::UFirstT -> "U_first_t".
std::string metric_name(Metric m);

// Inverse of metric_name; also maps the alias "V_first_t_size" to
// Metric::VFirstT.  Throws std::invalid_argument on unknown tokens.
Metric metric_from_string(const std::string& token);

struct ExperimentConfig {
    ConvexPolygon shape;           // sampling region, rescaled to unit area
    std::vector<int> n_values;     // sample sizes, each >= 1
    std::vector<int> t_values;     // layer depths, each >= 1
    int trials = 200;
    std::uint64_t master_seed = 0;
    std::vector<Metric> metrics;
    int threads = 0;               // 0 picks the hardware concurrency
    // Leave false to keep the seconds column at exactly 0.0, which makes the
    // emitted bytes a pure function of (config, seed).
    bool measure_time = false;
};

// One aggregated cell of a sweep.  std_error is sqrt(variance / trials) and
// the confidence interval uses the familiar 1.96 multiplier.
struct EstimateRecord {
    int k = 0;       // vertex count of the sampling polygon
    int n = 0;
    int t = 0;
    int trials = 0;
    std::string metric;
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    bool has_bound = false;  // bound_value column is empty when false
    double bound_value = 0.0;
    double seconds = 0.0;
    // True when t is at or past the depth ceiling floor((n-1)/2) + 1, in
    // which case every point has depth <= t and the mean is exactly n.
    bool saturated = false;

    friend bool operator==(const EstimateRecord&,
                           const EstimateRecord&) = default;
};

// Raw per-trial values behind the aggregates, laid out as a dense
// [n_index][t_index][metric_index][trial] array.  Useful when a consumer
// needs per-trial comparisons instead of means (for example checking that a
// monotone relation holds trial by trial, not just in expectation).
struct TrialTable {
    std::vector<int> n_values;
    std::vector<int> t_values;
    std::vector<Metric> metrics;
    int trials = 0;
    std::vector<double> values;

    double at(int n_index, int t_index, int metric_index, int trial) const;
};

// Runs the full sweep: for every n in n_values, `trials` independent samples
// are drawn (trial j always uses rng stream j, so results are bit-identical
// no matter how many worker threads run), and every (n, t, metric) cell is
// aggregated from those shared samples in ascending trial order.  When
// `table` is non-null the per-trial values are stored there as well.
// Records are ordered by (n_index, t_index, metric_index).
std::vector<EstimateRecord> run_estimate(const ExperimentConfig& cfg,
                                         TrialTable* table = nullptr);

// Closed-form reference values for a sweep cell.  The two upper bounds
// constrain the expected number of points of depth at most t - 1 (that is,
// a bound stored against U_first_s uses t = s + 1); `constrains_first_t`
// records that shifted index.  The lower references give the leading
// log-slope term for E[U_first_t] itself, damped by (1 - t^2 / (2n)), and
// hull_size_reference is the classical (2/3) k ln n expected hull size.
struct TheoreticalBounds {
    int n = 0;
    int k = 0;
    int t = 0;
    int constrains_first_t = 0;        // = t - 1, for the two upper bounds
    double tukey_triangle_upper = 0.0;  // 4 t ln n + 4 t + 10        (k == 3)
    double tukey_kgon_upper = 0.0;      // 4 t k ln(n/k) + 4 t k + 10 k
    double square_lower_reference = 0.0;    // 2 (1 - t^2/2n) t ln n  (k == 4)
    double triangle_lower_reference = 0.0;  // (1/4) (1 - t^2/2n) t ln n
    double hull_size_reference = 0.0;       // (2/3) k ln n
};

// n >= 1, k >= 3, t >= 1; natural logarithms throughout.
TheoreticalBounds theoretical_bounds(int n, int k, int t);

// Least-squares fit of record means against ln n.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

// Requires at least 3 records sharing (k, t, metric) with at least two
// distinct n values; throws std::invalid_argument otherwise.
FitResult fit_log_slope(const std::vector<EstimateRecord>& records);

enum class EmitFormat { Csv, Json };

// CSV layout, one record per line after the fixed header
//   k,n,t,trials,metric,mean,variance,stderr,ci95_low,ci95_high,bound_value,seconds
// with shortest round-trip formatting for reals and an empty bound_value
// cell when no closed form applies.  JSON is an array of objects with the
// same fields (bound_value null when absent) plus the saturated flag.
std::string render_records(const std::vector<EstimateRecord>& records,
                           EmitFormat format);

// render_records written to a file; throws std::runtime_error naming the
// path on I/O failure.
void emit_records(const std::vector<EstimateRecord>& records,
                  EmitFormat format, const std::string& path);

// Reads back a CSV produced by emit_records; emit then parse is lossless.
std::vector<EstimateRecord> parse_records_csv(const std::string& path);

}  // namespace tukey
