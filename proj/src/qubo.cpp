#include "qubofold/qubo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qubofold {

QuadraticObjective build_objective(const ResponseMatrix& response,
                                   const Histogram& measured,
                                   const Histogram& background, double lambda,
                                   const LaplacianOperator& curvature) {
    if (lambda < 0.0) {
        throw std::invalid_argument("build_objective: lambda must be non-negative");
    }
    const std::size_t m = response.size();
    if (measured.size() != m || background.size() != m) {
        throw std::invalid_argument("build_objective: dimension mismatch");
    }
    if (lambda > 0.0 && curvature.cols() != m) {
        throw std::invalid_argument("build_objective: curvature operator width mismatch");
    }
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        y(static_cast<Eigen::Index>(i)) = measured.count(i) - background.count(i);
    }
    QuadraticObjective obj;
    obj.lambda = lambda;
    obj.a = -2.0 * response.matrix().transpose() * y;
    obj.B = response.matrix().transpose() * response.matrix();
    if (lambda > 0.0) {
        obj.B += lambda * curvature.matrix().transpose() * curvature.matrix();
    }
    obj.B = 0.5 * (obj.B + obj.B.transpose().eval());  // kill fp asymmetry
    obj.offset = y.squaredNorm();
    return obj;
}

QuadraticObjective build_objective(const ResponseMatrix& response,
                                   const Histogram& measured,
                                   const Histogram& background, double lambda) {
    if (lambda > 0.0) {
        if (response.size() < 3) {
            throw std::invalid_argument(
                "build_objective: regularization needs at least 3 bins");
        }
        return build_objective(response, measured, background, lambda,
                               LaplacianOperator(response.size()));
    }
    // Placeholder operator; unused at lambda <= 0 (negatives still rejected).
    return build_objective(response, measured, background, lambda,
                           LaplacianOperator(std::max<std::size_t>(response.size(), 3)));
}

BoundsVector estimate_bounds(const Histogram& measured,
                             const Eigen::VectorXd& efficiencies, double headroom) {
    constexpr long long kFloor = 16;
    if (headroom < 1.0) {
        throw std::invalid_argument("estimate_bounds: headroom must be >= 1");
    }
    if (efficiencies.size() != static_cast<Eigen::Index>(measured.size())) {
        throw std::invalid_argument("estimate_bounds: dimension mismatch");
    }
    BoundsVector bounds;
    bounds.z_max.reserve(measured.size());
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double eps = efficiencies(static_cast<Eigen::Index>(i));
        if (!(eps > 0.0)) {
            throw std::invalid_argument("estimate_bounds: efficiency of bin " +
                                        std::to_string(i) + " is not positive");
        }
        const auto scaled =
            static_cast<long long>(std::ceil(headroom * measured.count(i) / eps));
        bounds.z_max.push_back(std::max(kFloor, scaled));
    }
    return bounds;
}

namespace {

std::size_t bit_length(long long z_max) {
    std::size_t l = 0;
    unsigned long long range = static_cast<unsigned long long>(z_max) + 1ULL;
    while ((1ULL << l) < range) ++l;  // smallest l with 2^l >= z_max + 1
    return std::max<std::size_t>(l, 1);
}

}  // namespace

QuboModel encode(const QuadraticObjective& objective, const BoundsVector& bounds,
                 std::size_t max_bits) {
    const std::size_t m = objective.size();
    if (bounds.size() != m) {
        throw std::invalid_argument("encode: bounds dimension mismatch");
    }
    QuboModel model;
    model.offset = objective.offset;
    model.lambda = objective.lambda;
    model.z_max = bounds.z_max;
    model.precision.reserve(m);
    model.bit_offsets.reserve(m);

    std::size_t total_bits = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (bounds.z_max[i] < 1) {
            throw std::invalid_argument("encode: bounds must be positive integers");
        }
        const std::size_t l = bit_length(bounds.z_max[i]);
        model.bit_offsets.push_back(total_bits);
        std::vector<double> p(l);
        for (std::size_t k = 0; k < l; ++k) p[k] = std::ldexp(1.0, static_cast<int>(k));
        model.precision.push_back(std::move(p));
        total_bits += l;
    }
    if (total_bits > max_bits) {
        throw capacity_error("encode: " + std::to_string(total_bits) +
                             " bits exceed the cap of " + std::to_string(max_bits));
    }

    const auto n = static_cast<Eigen::Index>(total_bits);
    model.a_bin = Eigen::VectorXd::Zero(n);
    model.B_bin = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto oi = static_cast<Eigen::Index>(model.bit_offsets[i]);
        const auto& pi = model.precision[i];
        for (std::size_t k = 0; k < pi.size(); ++k) {
            model.a_bin(oi + static_cast<Eigen::Index>(k)) =
                objective.a(static_cast<Eigen::Index>(i)) * pi[k];
        }
        for (std::size_t j = 0; j < m; ++j) {
            const auto oj = static_cast<Eigen::Index>(model.bit_offsets[j]);
            const auto& pj = model.precision[j];
            const double bij = objective.B(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(j));
            if (bij == 0.0) continue;
            for (std::size_t k = 0; k < pi.size(); ++k) {
                for (std::size_t l = 0; l < pj.size(); ++l) {
                    model.B_bin(oi + static_cast<Eigen::Index>(k),
                                oj + static_cast<Eigen::Index>(l)) += pi[k] * bij * pj[l];
                }
            }
        }
    }
    // Absorb the diagonal into the linear part (x^2 = x), leaving B_bin
    // hollow. Single-bit energy deltas then reduce to the local field.
    model.a_bin += model.B_bin.diagonal();
    model.B_bin.diagonal().setZero();
    return model;
}

DecodeResult decode(const QuboModel& model, const std::vector<std::uint8_t>& x) {
    DecodeResult out;
    out.z = decode_unclamped(model, x);
    for (std::size_t i = 0; i < out.z.size(); ++i) {
        if (out.z[i] > model.z_max[i]) {
            out.z[i] = model.z_max[i];
            out.clamped = true;
        }
    }
    return out;
}

std::vector<long long> decode_unclamped(const QuboModel& model,
                                        const std::vector<std::uint8_t>& x) {
    if (x.size() != model.num_bits()) {
        throw std::invalid_argument("decode: bitstring length mismatch");
    }
    std::vector<long long> z(model.num_bins(), 0);
    for (std::size_t i = 0; i < model.num_bins(); ++i) {
        const std::size_t off = model.bit_offsets[i];
        for (std::size_t k = 0; k < model.precision[i].size(); ++k) {
            if (x[off + k]) z[i] += static_cast<long long>(model.precision[i][k]);
        }
    }
    return z;
}

std::vector<std::uint8_t> encode_point(const QuboModel& model,
                                       const std::vector<long long>& z) {
    if (z.size() != model.num_bins()) {
        throw std::invalid_argument("encode_point: dimension mismatch");
    }
    std::vector<std::uint8_t> x(model.num_bits(), 0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const std::size_t l = model.bits_for_bin(i);
        if (z[i] < 0 || z[i] >= (1LL << l)) {
            throw std::invalid_argument("encode_point: value outside the encodable range");
        }
        for (std::size_t k = 0; k < l; ++k) {
            x[model.bit_offsets[i] + k] =
                static_cast<std::uint8_t>((z[i] >> k) & 1LL);
        }
    }
    return x;
}

double QuboModel::energy(const std::vector<std::uint8_t>& x) const {
    if (x.size() != num_bits()) {
        throw std::invalid_argument("QuboModel::energy: bitstring length mismatch");
    }
    double e = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k]) continue;
        const auto ki = static_cast<Eigen::Index>(k);
        e += a_bin(ki);
        for (std::size_t l = k + 1; l < x.size(); ++l) {
            if (x[l]) e += 2.0 * B_bin(ki, static_cast<Eigen::Index>(l));
        }
    }
    return e;
}

double objective_value(const QuadraticObjective& objective,
                       const std::vector<long long>& z) {
    Eigen::VectorXd zv(static_cast<Eigen::Index>(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) {
        zv(static_cast<Eigen::Index>(i)) = static_cast<double>(z[i]);
    }
    return objective_value(objective, zv);
}

double objective_value(const QuadraticObjective& objective, const Eigen::VectorXd& z) {
    if (z.size() != objective.a.size()) {
        throw std::invalid_argument("objective_value: dimension mismatch");
    }
    return objective.a.dot(z) + z.dot(objective.B * z);
}

double residual_value(const QuadraticObjective& objective,
                      const std::vector<long long>& z) {
    return objective_value(objective, z) + objective.offset;
}

}  // namespace qubofold
