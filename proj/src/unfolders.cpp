#include "qubofold/unfolders.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "qubofold/qubo.hpp"

namespace qubofold {

namespace {

constexpr double kConditionLimit = 1e12;

Eigen::VectorXd counts_vector(const Histogram& h) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = h.count(i);
    }
    return v;
}

Histogram zero_like(const Histogram& h) {
    return h.with_counts(std::vector<double>(h.size(), 0.0));
}

void check_dims(const ResponseMatrix& response, const Histogram& measured,
                const Histogram& background, const char* where) {
    if (response.size() != measured.size() || background.size() != measured.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

UnfoldResult unfold_mi(const ResponseMatrix& response, const Histogram& measured,
                       const Histogram& background) {
    check_dims(response, measured, background, "unfold_mi");
    const Eigen::VectorXd y = counts_vector(measured) - counts_vector(background);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(response.matrix(),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double smin = sigma(sigma.size() - 1);
    const double condition =
        smin > 0.0 ? sigma(0) / smin : std::numeric_limits<double>::infinity();
    if (!(condition < kConditionLimit)) {
        throw singular_response_error(
            "unfold_mi: response condition estimate " + std::to_string(condition) +
            " exceeds 1e12");
    }

    UnfoldResult result;
    result.method = Method::MI;
    result.estimate = to_std(svd.solve(y));
    result.errors.assign(measured.size(), 0.0);
    result.diagnostics["condition"] = condition;
    return result;
}

UnfoldResult unfold_mi(const ResponseMatrix& response, const Histogram& measured) {
    return unfold_mi(response, measured, zero_like(measured));
}

void IbuConfig::validate(std::size_t nbins) const {
    if (iterations < 1) {
        throw std::invalid_argument("IbuConfig: iterations must be >= 1");
    }
    if (prior == Prior::Custom) {
        if (custom_prior.size() != nbins) {
            throw std::invalid_argument("IbuConfig: custom prior length mismatch");
        }
        double sum = 0.0;
        for (double p : custom_prior) {
            if (!(p >= 0.0)) {
                throw std::invalid_argument("IbuConfig: custom prior must be non-negative");
            }
            sum += p;
        }
        if (!(sum > 0.0)) {
            throw std::invalid_argument("IbuConfig: custom prior must have positive sum");
        }
    }
}

UnfoldResult unfold_ibu(const ResponseMatrix& response, const Histogram& measured,
                        const IbuConfig& config) {
    const std::size_t m = measured.size();
    if (response.size() != m) {
        throw std::invalid_argument("unfold_ibu: dimension mismatch");
    }
    config.validate(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!(response.efficiency(j) > 0.0)) {
            throw std::invalid_argument("unfold_ibu: zero-efficiency truth bin " +
                                        std::to_string(j));
        }
    }

    Eigen::VectorXd z(static_cast<Eigen::Index>(m));
    switch (config.prior) {
        case IbuConfig::Prior::Uniform:
            z.setConstant(std::max(measured.total(), 1.0) / static_cast<double>(m));
            break;
        case IbuConfig::Prior::Measured:
            z = counts_vector(measured);
            break;
        case IbuConfig::Prior::Custom:
            z = Eigen::Map<const Eigen::VectorXd>(config.custom_prior.data(),
                                                  static_cast<Eigen::Index>(m));
            break;
    }

    const Eigen::MatrixXd& R = response.matrix();
    const Eigen::VectorXd n = counts_vector(measured);
    std::size_t skipped_terms = 0;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        const Eigen::VectorXd mu = R * z;
        Eigen::VectorXd next = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
            if (mu(i) <= 0.0) {
                if (n(i) > 0.0) ++skipped_terms;
                continue;
            }
            const double w = n(i) / mu(i);
            for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j) {
                next(j) += R(i, j) * z(j) * w;
            }
        }
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j) {
            next(j) /= response.efficiency(static_cast<std::size_t>(j));
        }
        z = next;
    }

    UnfoldResult result;
    result.method = Method::IBU;
    result.estimate = to_std(z);
    result.errors.assign(m, 0.0);
    result.diagnostics["iterations"] = static_cast<double>(config.iterations);
    if (skipped_terms > 0) {
        result.diagnostics["warn_zero_denominator"] = static_cast<double>(skipped_terms);
    }
    return result;
}

UnfoldResult unfold_svd(const ResponseMatrix& response, const Histogram& measured,
                        const Histogram& background, const SvdConfig& config) {
    check_dims(response, measured, background, "unfold_svd");
    const std::size_t m = measured.size();
    if (config.rank != SvdConfig::kAutoRank &&
        (config.rank < 1 || config.rank > static_cast<int>(m))) {
        throw std::invalid_argument("unfold_svd: rank must lie in [1, M]");
    }

    const Eigen::VectorXd y = counts_vector(measured) - counts_vector(background);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(response.matrix(),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    int nonzero = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) > 0.0) ++nonzero;
    }

    UnfoldResult result;
    result.method = Method::SVD;

    int rank;
    if (config.rank == SvdConfig::kAutoRank) {
        rank = 0;
        for (Eigen::Index k = 0; k < sigma.size(); ++k) {
            if (sigma(k) >= 1e-3 * sigma(0)) ++rank;
        }
        rank = std::max(rank, 1);
    } else {
        rank = config.rank;
    }
    if (rank > nonzero) {
        result.diagnostics["warn_rank_clipped"] = static_cast<double>(rank - nonzero);
        rank = std::max(nonzero, 1);
    }

    // z = V S_k^+ U^T y, singular values beyond the cut zeroed. Eigen orders
    // the spectrum descending, so equal values resolve by index.
    Eigen::VectorXd coeffs = svd.matrixU().transpose() * y;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        coeffs(k) = k < rank && sigma(k) > 0.0 ? coeffs(k) / sigma(k) : 0.0;
    }
    result.estimate = to_std(svd.matrixV() * coeffs);
    result.errors.assign(m, 0.0);
    result.diagnostics["rank"] = static_cast<double>(rank);
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        char key[24];
        std::snprintf(key, sizeof(key), "sigma_%02d", static_cast<int>(k));
        result.diagnostics[key] = sigma(k);
    }
    return result;
}

namespace {

// Shared start-point rule: clamp(round(z_MI)) when inversion succeeds, else
// efficiency-corrected data.
std::vector<long long> cd_start_point(const ResponseMatrix& response,
                                      const Histogram& measured,
                                      const Histogram& background,
                                      const BoundsVector& bounds, bool* mi_ok) {
    const std::size_t m = measured.size();
    std::vector<long long> start(m, 0);
    *mi_ok = true;
    try {
        const UnfoldResult mi = unfold_mi(response, measured, background);
        for (std::size_t i = 0; i < m; ++i) {
            start[i] = std::clamp<long long>(
                static_cast<long long>(std::llround(mi.estimate[i])), 0,
                bounds.z_max[i]);
        }
    } catch (const singular_response_error&) {
        *mi_ok = false;
        for (std::size_t i = 0; i < m; ++i) {
            const double y = measured.count(i) - background.count(i);
            start[i] = std::clamp<long long>(
                static_cast<long long>(std::llround(y / response.efficiency(i))), 0,
                bounds.z_max[i]);
        }
    }
    return start;
}

}  // namespace

UnfoldResult unfold_cd(const ResponseMatrix& response, const Histogram& measured,
                       const Histogram& background, const QuadUnfoldOptions& options) {
    check_dims(response, measured, background, "unfold_cd");
    const QuadraticObjective objective =
        build_objective(response, measured, background, options.lambda);
    const BoundsVector bounds =
        estimate_bounds(measured, response.efficiencies(), options.headroom);

    CdOptions cd;
    cd.max_sweeps = options.max_sweeps;
    cd.seed = options.seed;
    bool mi_ok = false;
    cd.start = cd_start_point(response, measured, background, bounds, &mi_ok);

    const SolveOutcome outcome = solve_integer_cd(objective, bounds, cd);

    UnfoldResult result;
    result.method = Method::CD;
    result.estimate.assign(outcome.solution.begin(), outcome.solution.end());
    result.errors.assign(measured.size(), 0.0);
    result.diagnostics = outcome.diagnostics;
    result.diagnostics["objective"] = outcome.energy;
    result.diagnostics["residual"] = outcome.energy + objective.offset;
    result.diagnostics["lambda"] = options.lambda;
    result.diagnostics["mi_start"] = mi_ok ? 1.0 : 0.0;
    return result;
}

UnfoldResult unfold_anneal(const ResponseMatrix& response, const Histogram& measured,
                           const Histogram& background,
                           const AnnealUnfoldOptions& options) {
    check_dims(response, measured, background, "unfold_anneal");
    const QuadraticObjective objective =
        build_objective(response, measured, background, options.lambda);
    const BoundsVector bounds =
        estimate_bounds(measured, response.efficiencies(), options.headroom);
    const QuboModel model = encode(objective, bounds);

    const SolveOutcome outcome = solve_anneal(model, options.schedule);

    UnfoldResult result;
    result.method = Method::ANNEAL;
    result.estimate.assign(outcome.solution.begin(), outcome.solution.end());
    result.errors.assign(measured.size(), 0.0);
    result.diagnostics = outcome.diagnostics;
    result.diagnostics["objective"] = outcome.energy;
    result.diagnostics["residual"] = outcome.energy + objective.offset;
    result.diagnostics["lambda"] = options.lambda;
    result.diagnostics["bits"] = static_cast<double>(model.num_bits());
    return result;
}

}  // namespace qubofold
