#include "qubofold/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qubofold/json_io.hpp"
#include "qubofold/plot.hpp"
#include "qubofold/rng.hpp"

namespace qubofold {

using nlohmann::json;

BenchmarkConfig BenchmarkConfig::defaults() {
    BenchmarkConfig cfg;
    using Kind = DistributionSpec::Kind;
    cfg.distributions = {
        DistributionSpec::default_for(Kind::Normal),
        DistributionSpec::default_for(Kind::Exponential),
        DistributionSpec::default_for(Kind::Gamma),
        DistributionSpec::default_for(Kind::BreitWigner),
    };
    return cfg;
}

void BenchmarkConfig::validate() const {
    if (distributions.empty()) {
        throw std::invalid_argument("config: need at least one distribution");
    }
    if (n_bins < 3) {
        throw std::invalid_argument("config: n_bins must be >= 3");
    }
    if (n_events < 1 || response_events < 1) {
        throw std::invalid_argument("config: event counts must be >= 1");
    }
    if (methods.empty()) {
        throw std::invalid_argument("config: methods must be non-empty");
    }
    if (lambda < 0.0) {
        throw std::invalid_argument("config: lambda must be non-negative");
    }
    if (bootstrap_toys == 1) {
        throw std::invalid_argument("config: bootstrap_toys must be 0 or >= 2");
    }
    for (const auto& d : distributions) d.validate();
    DetectorModel probe{smear_bins, bias_bins, efficiency};
    probe.validate();
}

DetectorModel BenchmarkConfig::detector_for(const DistributionSpec& spec) const {
    const double width = (spec.hi - spec.lo) / static_cast<double>(n_bins);
    return DetectorModel{smear_bins * width, bias_bins * width, efficiency};
}

namespace {

json distribution_to_json(const DistributionSpec& spec) {
    return json{{"kind", spec.kind_name()},
                {"params", {spec.p1, spec.p2}},
                {"range", {spec.lo, spec.hi}}};
}

DistributionSpec distribution_from_json(const json& j) {
    const auto kind = DistributionSpec::kind_from_name(j.at("kind").get<std::string>());
    if (!j.contains("params") && !j.contains("range")) {
        return DistributionSpec::default_for(kind);
    }
    DistributionSpec base = DistributionSpec::default_for(kind);
    if (j.contains("range")) {
        const auto range = j.at("range").get<std::vector<double>>();
        if (range.size() != 2) {
            throw std::invalid_argument("config: range must be [low, high]");
        }
        base = DistributionSpec::default_for(kind, range[0], range[1]);
    }
    if (j.contains("params")) {
        const auto params = j.at("params").get<std::vector<double>>();
        if (params.size() > 0) base.p1 = params[0];
        if (params.size() > 1) base.p2 = params[1];
    }
    base.validate();
    return base;
}

}  // namespace

json BenchmarkConfig::to_json() const {
    json dists = json::array();
    for (const auto& d : distributions) dists.push_back(distribution_to_json(d));
    json methods_j = json::array();
    for (Method m : methods) methods_j.push_back(method_name(m));
    return json{
        {"distributions", dists},
        {"n_events", n_events},
        {"n_bins", n_bins},
        {"response_events", response_events},
        {"detector",
         {{"smear_bins", smear_bins}, {"bias_bins", bias_bins}, {"efficiency", efficiency}}},
        {"methods", methods_j},
        {"lambda", lambda},
        {"headroom", headroom},
        {"ibu",
         {{"iterations", ibu.iterations},
          {"prior", ibu.prior == IbuConfig::Prior::Uniform ? "uniform" : "measured"}}},
        {"svd", {{"rank", svd.rank}}},
        {"anneal",
         {{"sweeps", anneal.sweeps},
          {"reads", anneal.reads},
          {"beta_start", anneal.beta_start},
          {"beta_end", anneal.beta_end}}},
        {"bootstrap_toys", bootstrap_toys},
        {"poisson_fluctuations", poisson_fluctuations},
        {"master_seed", master_seed},
        {"out_dir", out_dir},
    };
}

BenchmarkConfig BenchmarkConfig::from_json(const json& j) {
    BenchmarkConfig cfg = defaults();
    if (j.contains("distributions")) {
        cfg.distributions.clear();
        for (const auto& d : j.at("distributions")) {
            cfg.distributions.push_back(distribution_from_json(d));
        }
    }
    cfg.n_events = j.value("n_events", cfg.n_events);
    cfg.n_bins = j.value("n_bins", cfg.n_bins);
    cfg.response_events = j.value("response_events", cfg.response_events);
    if (j.contains("detector")) {
        const auto& d = j.at("detector");
        cfg.smear_bins = d.value("smear_bins", cfg.smear_bins);
        cfg.bias_bins = d.value("bias_bins", cfg.bias_bins);
        cfg.efficiency = d.value("efficiency", cfg.efficiency);
    }
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : j.at("methods")) {
            cfg.methods.push_back(method_from_name(m.get<std::string>()));
        }
    }
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.headroom = j.value("headroom", cfg.headroom);
    if (j.contains("ibu")) {
        const auto& b = j.at("ibu");
        cfg.ibu.iterations = b.value("iterations", cfg.ibu.iterations);
        const std::string prior = b.value("prior", std::string("uniform"));
        if (prior == "uniform") {
            cfg.ibu.prior = IbuConfig::Prior::Uniform;
        } else if (prior == "measured") {
            cfg.ibu.prior = IbuConfig::Prior::Measured;
        } else {
            throw std::invalid_argument("config: ibu.prior must be uniform or measured");
        }
    }
    if (j.contains("svd")) {
        cfg.svd.rank = j.at("svd").value("rank", cfg.svd.rank);
    }
    if (j.contains("anneal")) {
        const auto& a = j.at("anneal");
        cfg.anneal.sweeps = a.value("sweeps", cfg.anneal.sweeps);
        cfg.anneal.reads = a.value("reads", cfg.anneal.reads);
        cfg.anneal.beta_start = a.value("beta_start", cfg.anneal.beta_start);
        cfg.anneal.beta_end = a.value("beta_end", cfg.anneal.beta_end);
    }
    cfg.bootstrap_toys = j.value("bootstrap_toys", cfg.bootstrap_toys);
    cfg.poisson_fluctuations = j.value("poisson_fluctuations", cfg.poisson_fluctuations);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.validate();
    return cfg;
}

Dataset make_dataset(const BenchmarkConfig& config, const DistributionSpec& spec,
                     std::size_t dist_index) {
    const std::uint64_t sub = rng::distribution_seed(config.master_seed, dist_index);
    const DetectorModel detector = config.detector_for(spec);

    Dataset data{spec,
                 Histogram::zeros(spec.lo, spec.hi, config.n_bins),
                 Histogram::zeros(spec.lo, spec.hi, config.n_bins),
                 Histogram::zeros(spec.lo, spec.hi, config.n_bins),
                 ResponseMatrix::identity(config.n_bins),
                 rng::derive_seed(sub, rng::kTruthSample),
                 rng::derive_seed(sub, rng::kResponseTruth),
                 rng::derive_seed(sub, rng::kPseudoData)};

    // Stream A: the truth-level sample under study.
    const auto truth_values = sample_truth(spec, config.n_events, data.truth_seed);
    data.truth = Histogram::fill(truth_values, spec.lo, spec.hi, config.n_bins);

    // Stream B: an independent, larger MC sample for the response estimate.
    const auto mc_truth = sample_truth(spec, config.response_events, data.response_seed);
    const auto mc_sample = apply_detector(
        mc_truth, detector, rng::derive_seed(sub, rng::kResponseDetector));
    data.response = build_response(mc_sample, data.truth.edges());

    // Stream C: Poisson pseudo-data around the expected spectrum.
    data.expected = fold(data.response, data.truth);
    data.measured = config.poisson_fluctuations
                        ? poissonize(data.expected, data.data_seed)
                        : data.expected;
    return data;
}

namespace {

UnfoldResult dispatch_method(const BenchmarkConfig& config, const Dataset& data,
                             Method method, const Histogram& measured,
                             std::uint64_t anneal_seed) {
    const Histogram background =
        measured.with_counts(std::vector<double>(measured.size(), 0.0));
    switch (method) {
        case Method::MI:
            return unfold_mi(data.response, measured, background);
        case Method::IBU:
            return unfold_ibu(data.response, measured, config.ibu);
        case Method::SVD:
            return unfold_svd(data.response, measured, background, config.svd);
        case Method::CD: {
            QuadUnfoldOptions opt;
            opt.lambda = config.lambda;
            opt.headroom = config.headroom;
            return unfold_cd(data.response, measured, background, opt);
        }
        case Method::ANNEAL: {
            AnnealUnfoldOptions opt;
            opt.lambda = config.lambda;
            opt.headroom = config.headroom;
            opt.schedule = config.anneal;
            opt.schedule.seed = anneal_seed;
            return unfold_anneal(data.response, measured, background, opt);
        }
        case Method::BRUTE:
            break;
    }
    throw std::invalid_argument("benchmark: unsupported method " + method_name(method));
}

}  // namespace

BenchmarkRecord run_method(const BenchmarkConfig& config, const Dataset& data,
                           Method method, std::size_t dist_index) {
    const std::uint64_t sub = rng::distribution_seed(config.master_seed, dist_index);
    const std::uint64_t anneal_seed = rng::derive_seed(sub, rng::kAnneal);

    BenchmarkRecord record;
    record.distribution = data.spec.kind_name();
    record.method = method_name(method);
    record.lambda = (method == Method::CD || method == Method::ANNEAL) ? config.lambda : 0.0;
    record.seed = config.master_seed;
    record.edges = data.truth.edges();
    record.truth = data.truth.counts();
    record.measured = data.measured.counts();
    try {
        UnfoldResult result = dispatch_method(config, data, method, data.measured,
                                              anneal_seed);
        record.estimate = result.estimate;
        record.errors = result.errors;
        record.diagnostics = result.diagnostics;
        record.chi2 = chi2(data.truth, result.estimate);
        record.ratio = binwise_ratio(data.truth, result.estimate);
    } catch (const std::exception& e) {
        record.failed = true;
        record.failure = e.what();
        record.chi2 = std::numeric_limits<double>::quiet_NaN();
        record.estimate.assign(data.truth.size(),
                               std::numeric_limits<double>::quiet_NaN());
        record.errors.assign(data.truth.size(), 0.0);
        record.ratio.assign(data.truth.size(),
                            std::numeric_limits<double>::quiet_NaN());
    }
    return record;
}

std::vector<BenchmarkRecord> run_benchmark_records(const BenchmarkConfig& config) {
    config.validate();
    std::vector<BenchmarkRecord> records;
    for (std::size_t d = 0; d < config.distributions.size(); ++d) {
        const Dataset data = make_dataset(config, config.distributions[d], d);
        const std::uint64_t sub = rng::distribution_seed(config.master_seed, d);
        for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
            const Method method = config.methods[mi];
            BenchmarkRecord record = run_method(config, data, method, d);
            if (!record.failed && config.bootstrap_toys >= 2) {
                const std::uint64_t boot_seed =
                    rng::derive_seed(rng::derive_seed(sub, rng::kBootstrap), mi);
                Unfolder unfolder = [&](const Histogram& toy) {
                    return dispatch_method(config, data, method, toy,
                                           rng::derive_seed(sub, rng::kAnneal))
                        .estimate;
                };
                std::size_t failed = 0;
                record.errors = bootstrap_errors(unfolder, data.measured,
                                                 config.bootstrap_toys, boot_seed,
                                                 &failed);
                if (failed > 0) {
                    record.diagnostics["bootstrap_failed_toys"] =
                        static_cast<double>(failed);
                }
            }
            records.push_back(std::move(record));
        }
    }
    std::sort(records.begin(), records.end(),
              [](const BenchmarkRecord& a, const BenchmarkRecord& b) {
                  return std::tie(a.distribution, a.method) <
                         std::tie(b.distribution, b.method);
              });
    return records;
}

namespace {

std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string records_to_csv(const std::vector<BenchmarkRecord>& records) {
    std::ostringstream csv;
    csv << "distribution,method,lambda,chi2,bin_index,truth,measured,estimate,error,"
           "ratio\n";
    for (const auto& r : records) {
        for (std::size_t i = 0; i < r.truth.size(); ++i) {
            csv << r.distribution << ',' << r.method << ',' << fmt_value(r.lambda)
                << ',' << fmt_value(r.chi2) << ',' << i << ',' << fmt_value(r.truth[i])
                << ',' << fmt_value(r.measured[i]) << ',' << fmt_value(r.estimate[i])
                << ',' << fmt_value(r.errors[i]) << ',' << fmt_value(r.ratio[i])
                << '\n';
        }
    }
    return csv.str();
}

std::string scan_to_csv(const std::vector<LambdaScanRow>& rows) {
    std::ostringstream csv;
    csv << "distribution,lambda,method,chi2,is_argmin\n";
    for (const auto& r : rows) {
        csv << r.distribution << ',' << fmt_value(r.lambda) << ',' << r.method << ','
            << fmt_value(r.chi2) << ',' << (r.is_argmin ? 1 : 0) << '\n';
    }
    return csv.str();
}

json record_to_json(const BenchmarkRecord& record) {
    json j{{"distribution", record.distribution},
           {"method", record.method},
           {"lambda", record.lambda},
           {"chi2", record.chi2},
           {"seed", record.seed},
           {"edges", record.edges},
           {"truth", record.truth},
           {"measured", record.measured},
           {"estimate", record.estimate},
           {"errors", record.errors},
           {"ratio", record.ratio},
           {"diagnostics", record.diagnostics}};
    if (record.failed) j["failure"] = record.failure;
    return j;
}

BenchmarkOutput run_benchmark(const BenchmarkConfig& config) {
    namespace fs = std::filesystem;
    BenchmarkOutput output;
    output.records = run_benchmark_records(config);

    fs::create_directories(config.out_dir);
    const std::string csv_path = (fs::path(config.out_dir) / "results.csv").string();
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
        out << records_to_csv(output.records);
    }
    output.files.push_back(csv_path);

    json results{{"config", config.to_json()}, {"records", json::array()}};
    for (const auto& r : output.records) {
        results["records"].push_back(record_to_json(r));
    }
    const std::string json_path = (fs::path(config.out_dir) / "results.json").string();
    write_json_file(results, json_path);
    output.files.push_back(json_path);

    for (const auto& spec : config.distributions) {
        std::vector<BenchmarkRecord> group;
        for (const auto& r : output.records) {
            if (r.distribution == spec.kind_name()) group.push_back(r);
        }
        if (group.empty()) continue;
        const PlotInput input = plot_input_from_records(group, group.front().edges);
        const std::string svg_path =
            (fs::path(config.out_dir) / (spec.kind_name() + ".svg")).string();
        emit_plot(input, svg_path);
        output.files.push_back(svg_path);
    }
    return output;
}

std::vector<LambdaScanRow> scan_lambda(const BenchmarkConfig& config,
                                       const std::vector<double>& grid) {
    config.validate();
    if (grid.empty()) {
        throw std::invalid_argument("scan_lambda: grid must be non-empty");
    }
    for (double l : grid) {
        if (l < 0.0) throw std::invalid_argument("scan_lambda: lambda must be >= 0");
    }
    std::vector<LambdaScanRow> rows;
    for (std::size_t d = 0; d < config.distributions.size(); ++d) {
        const Dataset data = make_dataset(config, config.distributions[d], d);
        for (const Method method : {Method::CD, Method::ANNEAL}) {
            std::size_t argmin = 0;
            std::vector<LambdaScanRow> method_rows;
            for (double l : grid) {
                BenchmarkConfig scan_cfg = config;
                scan_cfg.lambda = l;
                const BenchmarkRecord record = run_method(scan_cfg, data, method, d);
                method_rows.push_back({record.distribution, l, record.method,
                                       record.chi2, false});
                if (record.chi2 < method_rows[argmin].chi2) {
                    argmin = method_rows.size() - 1;
                }
            }
            method_rows[argmin].is_argmin = true;
            rows.insert(rows.end(), method_rows.begin(), method_rows.end());
        }
    }
    return rows;
}

}  // namespace qubofold
