#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qubofold/benchmark.hpp"
#include "qubofold/json_io.hpp"
#include "qubofold/plot.hpp"
#include "qubofold/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qubofold;

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::vector<std::string>> methods;
    std::optional<double> lambda;
};

BenchmarkConfig load_config(const CommonArgs& args) {
    BenchmarkConfig cfg = args.config_path.empty()
                              ? BenchmarkConfig::defaults()
                              : BenchmarkConfig::from_json(
                                    read_json_file(args.config_path));
    if (args.seed) cfg.master_seed = *args.seed;
    if (args.out) cfg.out_dir = *args.out;
    if (args.lambda) cfg.lambda = *args.lambda;
    if (args.methods) {
        cfg.methods.clear();
        for (const auto& name : *args.methods) {
            cfg.methods.push_back(method_from_name(name));
        }
    }
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--seed", args.seed, "master seed override");
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--methods", args.methods, "method subset (MI IBU SVD CD ANNEAL)")
        ->delimiter(',');
    cmd->add_option("--lambda", args.lambda, "regularization strength override");
}

int cmd_generate(const CommonArgs& args, const std::string& dist_name) {
    BenchmarkConfig cfg = load_config(args);
    std::size_t index = 0;
    if (!dist_name.empty()) {
        const auto kind = DistributionSpec::kind_from_name(dist_name);
        bool found = false;
        for (std::size_t d = 0; d < cfg.distributions.size(); ++d) {
            if (cfg.distributions[d].kind == kind) {
                index = d;
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::invalid_argument("generate: distribution " + dist_name +
                                        " is not in the config");
        }
    }
    const Dataset data = make_dataset(cfg, cfg.distributions[index], index);

    fs::create_directories(cfg.out_dir);
    write_json_file(histogram_to_json(data.truth),
                    (fs::path(cfg.out_dir) / "truth.json").string());
    write_json_file(histogram_to_json(data.measured),
                    (fs::path(cfg.out_dir) / "measured.json").string());
    write_json_file(response_to_json(data.response),
                    (fs::path(cfg.out_dir) / "response.json").string());

    const DetectorModel detector = cfg.detector_for(data.spec);
    json provenance{
        {"distribution",
         {{"kind", data.spec.kind_name()},
          {"params", {data.spec.p1, data.spec.p2}},
          {"range", {data.spec.lo, data.spec.hi}}}},
        {"detector",
         {{"smear_sigma", detector.smear_sigma},
          {"bias", detector.bias},
          {"efficiency", detector.efficiency}}},
        {"n_events", cfg.n_events},
        {"response_events", cfg.response_events},
        {"master_seed", cfg.master_seed},
        {"seeds",
         {{"truth", data.truth_seed},
          {"response", data.response_seed},
          {"pseudo_data", data.data_seed}}},
        {"poisson_fluctuations", cfg.poisson_fluctuations},
    };
    write_json_file(provenance, (fs::path(cfg.out_dir) / "provenance.json").string());
    std::cout << "wrote truth.json, measured.json, response.json, provenance.json to "
              << cfg.out_dir << "\n";
    return 0;
}

int cmd_unfold(const CommonArgs& args, const std::string& response_path,
               const std::string& measured_path, const std::string& truth_path) {
    BenchmarkConfig cfg = load_config(args);
    const ResponseMatrix response = response_from_json(read_json_file(response_path));
    const Histogram measured =
        histogram_from_json(read_json_file(measured_path), /*integral=*/true);
    const Histogram background =
        measured.with_counts(std::vector<double>(measured.size(), 0.0));

    std::optional<Histogram> truth;
    if (!truth_path.empty()) {
        truth = histogram_from_json(read_json_file(truth_path));
    }

    json results = json::array();
    for (const Method method : cfg.methods) {
        UnfoldResult result;
        switch (method) {
            case Method::MI:
                result = unfold_mi(response, measured, background);
                break;
            case Method::IBU:
                result = unfold_ibu(response, measured, cfg.ibu);
                break;
            case Method::SVD:
                result = unfold_svd(response, measured, background, cfg.svd);
                break;
            case Method::CD: {
                QuadUnfoldOptions opt;
                opt.lambda = cfg.lambda;
                opt.headroom = cfg.headroom;
                opt.seed = cfg.master_seed;
                result = unfold_cd(response, measured, background, opt);
                break;
            }
            case Method::ANNEAL: {
                AnnealUnfoldOptions opt;
                opt.lambda = cfg.lambda;
                opt.headroom = cfg.headroom;
                opt.schedule = cfg.anneal;
                if (opt.schedule.seed == 0) opt.schedule.seed = cfg.master_seed;
                result = unfold_anneal(response, measured, background, opt);
                break;
            }
            default:
                throw std::invalid_argument("unfold: unsupported method");
        }
        if (truth) result.chi2 = chi2(*truth, result.estimate);
        results.push_back(unfold_result_to_json(result));
    }

    if (args.out) {
        fs::create_directories(fs::path(*args.out).parent_path().empty()
                                   ? "."
                                   : fs::path(*args.out).parent_path().string());
        write_json_file(results, *args.out);
        std::cout << "wrote " << *args.out << "\n";
    } else {
        std::cout << results.dump(2) << "\n";
    }
    return 0;
}

int cmd_benchmark(const CommonArgs& args) {
    const BenchmarkConfig cfg = load_config(args);
    const BenchmarkOutput output = run_benchmark(cfg);
    for (const auto& f : output.files) std::cout << "wrote " << f << "\n";
    return 0;
}

int cmd_scan_lambda(const CommonArgs& args, std::vector<double> grid) {
    const BenchmarkConfig cfg = load_config(args);
    if (grid.empty()) {
        // Geometric default grid plus the unregularized point.
        grid.push_back(0.0);
        for (double l = 1e-4; l <= 10.0 + 1e-12; l *= 10.0) grid.push_back(l);
    }
    const auto rows = scan_lambda(cfg, grid);
    const std::string csv = scan_to_csv(rows);
    if (args.out) {
        fs::create_directories(cfg.out_dir);
        const std::string path = (fs::path(cfg.out_dir) / "scan.csv").string();
        std::ofstream out(path, std::ios::binary);
        out << csv;
        std::cout << "wrote " << path << "\n";
    } else {
        std::cout << csv;
    }
    return 0;
}

int cmd_plot(const CommonArgs& args, const std::string& results_path,
             const std::string& dist_name, const std::string& out_path) {
    const json results = read_json_file(results_path);
    std::vector<BenchmarkRecord> records;
    std::vector<double> edges;
    for (const auto& j : results.at("records")) {
        if (!dist_name.empty() && j.at("distribution") != dist_name) continue;
        BenchmarkRecord r;
        r.distribution = j.at("distribution");
        r.method = j.at("method");
        r.lambda = j.at("lambda");
        r.chi2 = j.at("chi2");
        r.edges = j.at("edges").get<std::vector<double>>();
        r.truth = j.at("truth").get<std::vector<double>>();
        r.measured = j.at("measured").get<std::vector<double>>();
        r.estimate = j.at("estimate").get<std::vector<double>>();
        r.errors = j.at("errors").get<std::vector<double>>();
        r.ratio = j.at("ratio").get<std::vector<double>>();
        r.failed = j.contains("failure");
        edges = r.edges;
        records.push_back(std::move(r));
    }
    if (records.empty()) {
        throw std::invalid_argument("plot: no matching records in " + results_path);
    }
    emit_plot(plot_input_from_records(records, edges), out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical unfolding as regularized quadratic/QUBO optimization"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* generate = app.add_subcommand("generate", "write a synthetic dataset");
    std::string gen_dist;
    add_common(generate, args);
    generate->add_option("--dist", gen_dist, "distribution kind to generate");

    auto* unfold = app.add_subcommand("unfold", "unfold a measured histogram");
    std::string response_path, measured_path, truth_path;
    add_common(unfold, args);
    unfold->add_option("--response", response_path, "response matrix JSON")->required();
    unfold->add_option("--measured", measured_path, "measured histogram JSON")->required();
    unfold->add_option("--truth", truth_path, "optional truth histogram for chi2");

    auto* benchmark = app.add_subcommand("benchmark", "run the full comparison");
    add_common(benchmark, args);

    auto* scan = app.add_subcommand("scan-lambda", "chi2 over a lambda grid");
    std::vector<double> grid;
    add_common(scan, args);
    scan->add_option("--grid", grid, "lambda values")->delimiter(',');

    auto* plot = app.add_subcommand("plot", "render an SVG from benchmark results");
    std::string results_path, plot_dist, plot_out = "plot.svg";
    add_common(plot, args);
    plot->add_option("--results", results_path, "results.json from benchmark")->required();
    plot->add_option("--dist", plot_dist, "distribution to draw (default: first)");
    plot->add_option("--plot-out", plot_out, "output SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(args, gen_dist);
        if (unfold->parsed()) return cmd_unfold(args, response_path, measured_path, truth_path);
        if (benchmark->parsed()) return cmd_benchmark(args);
        if (scan->parsed()) return cmd_scan_lambda(args, grid);
        if (plot->parsed()) return cmd_plot(args, results_path, plot_dist, plot_out);
    } catch (const std::exception& e) {
        const json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 1;
}
