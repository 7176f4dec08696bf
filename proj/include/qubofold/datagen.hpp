#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubofold/core.hpp"

namespace qubofold {

/// Shape of the truth-level spectrum plus the histogramming window.
/// Draws falling outside [lo, hi] are resampled, so every generated event
/// lands inside the window.
struct DistributionSpec {
    enum class Kind { Normal, Exponential, Gamma, BreitWigner };

    Kind kind = Kind::Normal;
    // Meaning per kind:
    //   Normal       p1 = mean, p2 = sigma
    //   Exponential  p1 = rate (support starts at lo)
    //   Gamma        p1 = shape, p2 = scale (support starts at lo)
    //   BreitWigner  p1 = location, p2 = full width at half maximum
    double p1 = 0.0;
    double p2 = 0.0;
    double lo = 0.0;
    double hi = 1.0;

    static DistributionSpec normal(double mean, double sigma, double lo, double hi);
    static DistributionSpec exponential(double rate, double lo, double hi);
    static DistributionSpec gamma(double shape, double scale, double lo, double hi);
    static DistributionSpec breit_wigner(double location, double width, double lo,
                                         double hi);

    /// Benchmark defaults: normal(center, range/8), exponential(6 lifetimes
    /// across the range), gamma(shape 2, scale range/8), Breit-Wigner(center,
    /// range/16).
    static DistributionSpec default_for(Kind kind, double lo, double hi);
    static DistributionSpec default_for(Kind kind);

    void validate() const;
    std::string kind_name() const;
    static Kind kind_from_name(const std::string& name);
};

/// Gaussian resolution, additive bias, Bernoulli detection, all in
/// observable units.
struct DetectorModel {
    double smear_sigma = 0.0;
    double bias = 0.0;
    double efficiency = 1.0;

    void validate() const;
};

/// Paired Monte Carlo events. A missing reco value means the event was not
/// detected (or fell outside the histogram window downstream).
struct TruthRecoSample {
    std::vector<double> truth_values;
    std::vector<std::optional<double>> reco_values;
};

/// n_events i.i.d. draws from the spec's distribution, truncated to its
/// window by resampling. Deterministic for a fixed seed.
std::vector<double> sample_truth(const DistributionSpec& spec, std::size_t n_events,
                                 std::uint64_t seed);

/// Per event: detected with probability `efficiency`; detected events get
/// reco = truth + bias + N(0, smear_sigma).
TruthRecoSample apply_detector(const std::vector<double>& truth,
                               const DetectorModel& model, std::uint64_t seed);

/// Response estimate R_ij = P(reco in bin i | truth in bin j), counting reco
/// values outside the window as undetected. Every truth bin must be
/// populated.
ResponseMatrix build_response(const TruthRecoSample& sample,
                              const std::vector<double>& edges);

/// Independent Poisson draw around each expected count.
Histogram poissonize(const Histogram& expected, std::uint64_t seed);

}  // namespace qubofold
