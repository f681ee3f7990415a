// Command line front end: estimate sweeps, depth and layer queries, the
// structural checkers, the exclusion searches, and log-slope fits.
//
// Exit codes: 0 on success, 2 when a requested invariant check found a
// violation, 1 on any other error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "tukey/depth.hpp"
#include "tukey/enclosing.hpp"
#include "tukey/experiments.hpp"
#include "tukey/gadgets.hpp"
#include "tukey/geometry.hpp"
#include "tukey/pointset_io.hpp"
#include "tukey/sampling.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

std::vector<int> split_ints(const std::string& list) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= list.size()) {
        size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        std::string cell = list.substr(pos, comma - pos);
        if (cell.empty()) throw CLI::ValidationError("empty integer in list");
        size_t used = 0;
        int v = std::stoi(cell, &used);
        if (used != cell.size())
            throw CLI::ValidationError("bad integer: " + cell);
        out.push_back(v);
        pos = comma + 1;
        if (comma == list.size()) break;
    }
    return out;
}

std::vector<tukey::Metric> split_metrics(const std::string& list) {
    std::vector<tukey::Metric> out;
    size_t pos = 0;
    while (pos <= list.size()) {
        size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        out.push_back(tukey::metric_from_string(list.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == list.size()) break;
    }
    return out;
}

struct EstimateArgs {
    std::string shape = "regular:k=3,area=1";
    std::string n_list;
    std::string t_list = "1";
    int trials = 200;
    std::uint64_t seed = 0;
    std::string metrics = "U_first_t";
    std::string out_path;
    std::string format = "csv";
    int workers = 0;
    bool measure_time = false;
};

int run_estimate_cmd(const EstimateArgs& args) {
    tukey::ExperimentConfig cfg;
    cfg.shape = tukey::parse_shape_spec(args.shape);
    cfg.n_values = split_ints(args.n_list);
    cfg.t_values = split_ints(args.t_list);
    cfg.trials = args.trials;
    cfg.master_seed = args.seed;
    cfg.metrics = split_metrics(args.metrics);
    cfg.threads = args.workers;
    cfg.measure_time = args.measure_time;

    auto records = tukey::run_estimate(cfg);
    tukey::EmitFormat fmt = args.format == "json" ? tukey::EmitFormat::Json
                                                  : tukey::EmitFormat::Csv;
    if (args.out_path.empty()) {
        std::cout << tukey::render_records(records, fmt);
    } else {
        tukey::emit_records(records, fmt, args.out_path);
    }
    return kExitOk;
}

int run_depth_cmd(const std::string& points_path) {
    tukey::PointSet xs = tukey::io::read_points_file(points_path);
    tukey::DepthLabeling labels = tukey::depth_labeling(xs);
    json out;
    out["n"] = xs.size();
    out["tukey_depth"] = labels.tukey_depth;
    out["convex_depth"] = labels.convex_depth;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_layers_cmd(const std::string& points_path, const std::string& kind) {
    tukey::PointSet xs = tukey::io::read_points_file(points_path);
    tukey::LayerPartition part =
        kind == "tukey" ? tukey::tukey_layers(xs) : tukey::convex_layers(xs);
    json out;
    out["kind"] = kind;
    out["layers"] = part.layers;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct GadgetArgs {
    std::string check = "lemmas";
    std::string shape = "regular:k=4,area=1";
    std::string region = "triangle";  // dividing-line shape
    int n = 40;
    int t = 2;
    int trials = 20;
    std::uint64_t seed = 0;
};

int run_gadget_cmd(const GadgetArgs& args) {
    using tukey::RngStream;
    tukey::ConvexPolygon shape;
    if (args.check == "diag") {
        shape = tukey::make_convex_polygon(
            {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    } else if (args.check == "dividing") {
        if (args.region == "square") {
            shape = tukey::make_convex_polygon(
                {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
        } else {
            shape = tukey::make_convex_polygon(
                {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
        }
    } else {
        shape = tukey::scale_to_unit_area(tukey::parse_shape_spec(args.shape));
    }
    tukey::TriangulatedRegion region = tukey::triangulate_fan(shape);

    int violations = 0;
    json first_witness;
    for (int trial = 0; trial < args.trials; ++trial) {
        RngStream sample_rng(args.seed, 2 * std::uint64_t(trial));
        tukey::PointSet xs = tukey::sample_uniform(region, args.n, sample_rng);

        if (args.check == "lemmas") {
            RngStream part_rng(args.seed, 2 * std::uint64_t(trial) + 1);
            tukey::LemmaReport report =
                tukey::verify_structural_lemmas(xs, args.t, part_rng);
            if (!report.all_pass()) {
                ++violations;
                if (first_witness.is_null()) first_witness = report.to_json();
            }
            continue;
        }

        std::vector<int> bad;
        if (args.check == "upper_hull") {
            bad = tukey::check_upper_hull_lemma(xs, args.t);
        } else if (args.check == "diag") {
            bad = tukey::check_diag_lemma(xs, args.t);
        } else if (args.check == "dividing") {
            bad = tukey::check_dividing_sufficient(
                xs, args.t,
                args.region == "square" ? tukey::RegionShape::Square
                                        : tukey::RegionShape::Triangle);
        } else {
            throw CLI::ValidationError("unknown check: " + args.check);
        }
        if (!bad.empty()) {
            ++violations;
            if (first_witness.is_null())
                first_witness = {{"trial", trial}, {"indices", bad}};
        }
    }

    json out;
    out["check"] = args.check;
    out["n"] = args.n;
    out["t"] = args.t;
    out["trials"] = args.trials;
    out["violations"] = violations;
    out["first_witness"] = first_witness;
    std::cout << out.dump(2) << "\n";
    return violations == 0 ? kExitOk : kExitViolation;
}

struct EncloseArgs {
    std::string points_path;
    std::string objective = "hull";
    std::string mode = "pruned";
    int t = 1;
};

int run_enclose_cmd(const EncloseArgs& args) {
    tukey::PointSet xs = tukey::io::read_points_file(args.points_path);
    tukey::SearchMode mode = args.mode == "oracle" ? tukey::SearchMode::Oracle
                                                   : tukey::SearchMode::Pruned;
    tukey::EnclosingResult result =
        args.objective == "parallelogram"
            ? tukey::min_area_parallelogram_excluding(xs, args.t, mode)
            : tukey::min_area_hull_excluding(xs, args.t, mode);
    json out = result.to_json();
    out["profile"] = tukey::complexity_profile(xs, args.t).to_json();
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct FitArgs {
    std::string records_path;
    std::string metric = "U_first_t";
    int k = 0;  // 0 means no filter
    int t = 0;
};

int run_fit_cmd(const FitArgs& args) {
    auto records = tukey::parse_records_csv(args.records_path);
    std::vector<tukey::EstimateRecord> kept;
    for (const auto& r : records) {
        if (r.metric != args.metric) continue;
        if (args.k > 0 && r.k != args.k) continue;
        if (args.t > 0 && r.t != args.t) continue;
        kept.push_back(r);
    }
    tukey::FitResult fit = tukey::fit_log_slope(kept);
    json out;
    out["metric"] = args.metric;
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["r_squared"] = fit.r_squared;
    out["points_used"] = fit.points_used;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tukey layer and convex layer toolkit"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* est_cmd =
        app.add_subcommand("estimate", "Monte Carlo sweep over (n, t) cells");
    est_cmd->add_option("--shape", est.shape,
                        "regular:k=K,area=A or vertices:x,y;x,y;...");
    est_cmd->add_option("--n", est.n_list, "comma list of sample sizes")
        ->required();
    est_cmd->add_option("--t", est.t_list, "comma list of layer depths");
    est_cmd->add_option("--trials", est.trials, "trials per cell");
    est_cmd->add_option("--seed", est.seed, "master seed");
    est_cmd->add_option("--metrics", est.metrics, "comma list of metrics");
    est_cmd->add_option("--out", est.out_path, "output file (default stdout)");
    est_cmd->add_option("--format", est.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    est_cmd->add_option("--workers", est.workers,
                        "worker threads, 0 = hardware");
    est_cmd->add_flag("--measure-time", est.measure_time,
                      "fill the seconds column (breaks byte reproducibility)");

    std::string depth_points;
    auto* depth_cmd =
        app.add_subcommand("depth", "Tukey and convex depth of every point");
    depth_cmd->add_option("--points", depth_points, "points file, one x,y per line")
        ->required();

    std::string layers_points, layers_kind = "tukey";
    auto* layers_cmd = app.add_subcommand("layers", "layer partition of a set");
    layers_cmd->add_option("--points", layers_points, "points file")
        ->required();
    layers_cmd->add_option("--kind", layers_kind, "tukey or convex")
        ->check(CLI::IsMember({"tukey", "convex"}));

    GadgetArgs gad;
    auto* gadget_cmd = app.add_subcommand(
        "gadget", "randomized structural checks (exit 2 on violation)");
    gadget_cmd->add_option("--check", gad.check,
                           "lemmas, upper_hull, diag, or dividing")
        ->check(CLI::IsMember({"lemmas", "upper_hull", "diag", "dividing"}));
    gadget_cmd->add_option("--shape", gad.shape,
                           "sampling shape for lemmas/upper_hull");
    gadget_cmd->add_option("--region", gad.region,
                           "dividing-line region: square or triangle")
        ->check(CLI::IsMember({"square", "triangle"}));
    gadget_cmd->add_option("--n", gad.n, "points per trial");
    gadget_cmd->add_option("--t", gad.t, "layer depth");
    gadget_cmd->add_option("--trials", gad.trials, "number of trials");
    gadget_cmd->add_option("--seed", gad.seed, "master seed");

    EncloseArgs enc;
    auto* enclose_cmd = app.add_subcommand(
        "enclose", "minimum-area enclosure after excluding t points");
    enclose_cmd->add_option("--points", enc.points_path, "points file")
        ->required();
    enclose_cmd->add_option("--objective", enc.objective,
                            "hull or parallelogram")
        ->check(CLI::IsMember({"hull", "parallelogram"}));
    enclose_cmd->add_option("--mode", enc.mode, "pruned or oracle")
        ->check(CLI::IsMember({"pruned", "oracle"}));
    enclose_cmd->add_option("--t", enc.t, "points to exclude");

    FitArgs fit;
    auto* fit_cmd =
        app.add_subcommand("fit", "least squares of cell means against ln n");
    fit_cmd->add_option("--records", fit.records_path, "CSV from estimate")
        ->required();
    fit_cmd->add_option("--metric", fit.metric, "metric to fit");
    fit_cmd->add_option("--k", fit.k, "restrict to this shape k");
    fit_cmd->add_option("--t", fit.t, "restrict to this t");

    CLI11_PARSE(app, argc, argv);

    try {
        if (est_cmd->parsed()) return run_estimate_cmd(est);
        if (depth_cmd->parsed()) return run_depth_cmd(depth_points);
        if (layers_cmd->parsed())
            return run_layers_cmd(layers_points, layers_kind);
        if (gadget_cmd->parsed()) return run_gadget_cmd(gad);
        if (enclose_cmd->parsed()) return run_enclose_cmd(enc);
        if (fit_cmd->parsed()) return run_fit_cmd(fit);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
