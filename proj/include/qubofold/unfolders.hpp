#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qubofold/core.hpp"
#include "qubofold/solvers.hpp"

namespace qubofold {

/// Thrown when the response matrix is numerically singular (condition
/// estimate above 1e12).
class singular_response_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IbuConfig {
    enum class Prior { Uniform, Measured, Custom };

    std::size_t iterations = 4;
    Prior prior = Prior::Uniform;
    std::vector<double> custom_prior;  // non-negative with positive sum

    void validate(std::size_t nbins) const;
};

struct SvdConfig {
    /// Retained singular values, 1..M. kAutoRank keeps the largest k with
    /// sigma_k >= 1e-3 * sigma_1.
    static constexpr int kAutoRank = 0;
    int rank = kAutoRank;
};

/// Direct inversion z = R^{-1} (n - beta). Estimates may oscillate and go
/// negative; they are reported as-is. Diagnostics carry the condition-number
/// estimate.
UnfoldResult unfold_mi(const ResponseMatrix& response, const Histogram& measured,
                       const Histogram& background);
UnfoldResult unfold_mi(const ResponseMatrix& response, const Histogram& measured);

/// Iterative Bayesian unfolding with the standard multiplicative update
///   z_j <- (z_j / eps_j) sum_i R_ij n_i / (sum_l R_il z_l),
/// run for exactly cfg.iterations steps from the configured prior.
UnfoldResult unfold_ibu(const ResponseMatrix& response, const Histogram& measured,
                        const IbuConfig& config);

/// Truncated pseudo-inverse: decompose R = U S V^T, keep the k largest
/// singular values, apply V S_k^+ U^T to (n - beta). Requested ranks beyond
/// the nonzero spectrum are clipped with a warning diagnostic.
UnfoldResult unfold_svd(const ResponseMatrix& response, const Histogram& measured,
                        const Histogram& background, const SvdConfig& config);

struct QuadUnfoldOptions {
    double lambda = 0.05;
    double headroom = 2.0;
    std::size_t max_sweeps = 200;
    std::uint64_t seed = 0;
};

/// Regularized integer optimization solved by coordinate descent, started
/// from the clamped matrix-inversion estimate (or the efficiency-corrected
/// data when inversion fails).
UnfoldResult unfold_cd(const ResponseMatrix& response, const Histogram& measured,
                       const Histogram& background, const QuadUnfoldOptions& options);

struct AnnealUnfoldOptions {
    double lambda = 0.05;
    double headroom = 2.0;
    AnnealSchedule schedule;  // beta fields 0 = auto-scaled per instance
};

/// Same objective lowered to QUBO form and solved by simulated annealing.
UnfoldResult unfold_anneal(const ResponseMatrix& response, const Histogram& measured,
                           const Histogram& background,
                           const AnnealUnfoldOptions& options);

}  // namespace qubofold
