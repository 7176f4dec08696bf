#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "qubofold/datagen.hpp"
#include "qubofold/metrics.hpp"
#include "qubofold/solvers.hpp"
#include "qubofold/unfolders.hpp"

namespace qubofold {

/// Full benchmark configuration. The zero-argument default reproduces the
/// reference setup: four distributions, 12 bins, 10k events, smearing of one
/// bin width, a quarter-bin bias, and 70% efficiency.
struct BenchmarkConfig {
    std::vector<DistributionSpec> distributions;
    std::size_t n_events = 10000;
    std::size_t n_bins = 12;
    std::size_t response_events = 100000;

    // Detector in bin-width units, converted per distribution.
    double smear_bins = 1.0;
    double bias_bins = 0.25;
    double efficiency = 0.7;

    std::vector<Method> methods = {Method::MI, Method::IBU, Method::SVD,
                                   Method::CD, Method::ANNEAL};
    double lambda = 0.05;
    double headroom = 2.0;
    IbuConfig ibu;
    SvdConfig svd;
    AnnealSchedule anneal;

    std::size_t bootstrap_toys = 30;
    bool poisson_fluctuations = true;
    std::uint64_t master_seed = 42;
    std::string out_dir = "out";

    static BenchmarkConfig defaults();
    void validate() const;

    nlohmann::json to_json() const;
    /// Missing keys fall back to the defaults, so an empty object reproduces
    /// the full-scale benchmark.
    static BenchmarkConfig from_json(const nlohmann::json& j);

    DetectorModel detector_for(const DistributionSpec& spec) const;
};

/// Truth histogram, response estimate, expected and measured spectra for one
/// distribution, all derived from disjoint seed streams of the master seed.
struct Dataset {
    DistributionSpec spec;
    Histogram truth;
    Histogram expected;
    Histogram measured;
    ResponseMatrix response;
    std::uint64_t truth_seed = 0;
    std::uint64_t response_seed = 0;
    std::uint64_t data_seed = 0;
};

Dataset make_dataset(const BenchmarkConfig& config, const DistributionSpec& spec,
                     std::size_t dist_index);

/// Run one method on a dataset (no bootstrap), filling chi2 and ratios.
BenchmarkRecord run_method(const BenchmarkConfig& config, const Dataset& data,
                           Method method, std::size_t dist_index);

/// The full protocol: per distribution, generate, unfold with every
/// configured method, attach bootstrap errors, and return records sorted by
/// (distribution, method).
std::vector<BenchmarkRecord> run_benchmark_records(const BenchmarkConfig& config);

struct BenchmarkOutput {
    std::vector<BenchmarkRecord> records;
    std::vector<std::string> files;  // everything written under out_dir
};

/// run_benchmark_records plus artifact emission: results.csv, results.json
/// and one SVG per distribution under config.out_dir.
BenchmarkOutput run_benchmark(const BenchmarkConfig& config);

struct LambdaScanRow {
    std::string distribution;
    double lambda = 0.0;
    std::string method;
    double chi2 = 0.0;
    bool is_argmin = false;
};

/// Evaluate CD and ANNEAL on fixed per-distribution data over a lambda grid.
std::vector<LambdaScanRow> scan_lambda(const BenchmarkConfig& config,
                                       const std::vector<double>& grid);

/// CSV with the fixed column order
/// distribution,method,lambda,chi2,bin_index,truth,measured,estimate,error,ratio.
std::string records_to_csv(const std::vector<BenchmarkRecord>& records);
std::string scan_to_csv(const std::vector<LambdaScanRow>& rows);

nlohmann::json record_to_json(const BenchmarkRecord& record);

}  // namespace qubofold
