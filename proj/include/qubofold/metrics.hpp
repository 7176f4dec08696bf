#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qubofold/core.hpp"

namespace qubofold {

struct Chi2Result {
    double value = 0.0;
    std::size_t excluded_bins = 0;  // zero-truth bins the sum skips
};

/// Pearson chi^2 = sum_i (z_true_i - z_hat_i)^2 / z_true_i over bins with
/// positive truth. Throws if every truth bin is zero.
Chi2Result chi2_detail(const Histogram& truth, const std::vector<double>& estimate);
double chi2(const Histogram& truth, const std::vector<double>& estimate);

/// Bin-wise ratio z_hat_i / z_true_i; zero-truth bins yield NaN markers.
std::vector<double> binwise_ratio(const Histogram& truth,
                                  const std::vector<double>& estimate);

/// Unfolds an observed histogram into an estimate vector. Used to plug any
/// configured method into the bootstrap.
using Unfolder = std::function<std::vector<double>(const Histogram&)>;

/// Poisson bootstrap: resample each count of `measured` n_toys times, unfold
/// every toy with the same configuration, and return the per-bin sample
/// standard deviation. Failing toys are skipped and counted; more than 50%
/// failures is an error.
std::vector<double> bootstrap_errors(const Unfolder& unfolder,
                                     const Histogram& measured, std::size_t n_toys,
                                     std::uint64_t seed,
                                     std::size_t* failed_toys = nullptr);

/// One benchmark outcome: a method applied to one pseudo-experiment.
struct BenchmarkRecord {
    std::string distribution;
    std::string method;
    double lambda = 0.0;
    double chi2 = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> edges;
    std::vector<double> truth;
    std::vector<double> measured;
    std::vector<double> estimate;
    std::vector<double> errors;
    std::vector<double> ratio;
    std::map<std::string, double> diagnostics;
    bool failed = false;
    std::string failure;
};

}  // namespace qubofold
