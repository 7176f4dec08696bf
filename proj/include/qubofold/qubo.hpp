#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qubofold/core.hpp"

namespace qubofold {

/// Thrown when a model exceeds a solver or encoder size cap.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The unfolding objective in integer form:
///
///     f(z) = a . z + z^T B z         with  a = -2 R^T (n - beta),
///                                          B = R^T R + lambda D^T D.
///
/// f(z) + offset equals the residual form ||R z - (n - beta)||^2
/// + lambda ||D z||^2, where offset = ||n - beta||^2 is the constant the
/// compact form drops. B is symmetric positive semidefinite by construction.
struct QuadraticObjective {
    Eigen::VectorXd a;
    Eigen::MatrixXd B;
    double offset = 0.0;
    double lambda = 0.0;

    std::size_t size() const { return static_cast<std::size_t>(a.size()); }
};

/// Per-bin integer upper bounds for the search box [0, z_max_i].
struct BoundsVector {
    std::vector<long long> z_max;

    std::size_t size() const { return z_max.size(); }
};

/// Binary lowering of a QuadraticObjective. Bin i is encoded on l_i bits
/// with precision vector p_i = (1, 2, ..., 2^(l_i - 1)) so that
/// z_i = p_i . x_i, and the objective becomes
///
///     f_Q(x) = a_bin . x + x^T B_bin x.
///
/// Convention: B_bin carries zero diagonal; diagonal quadratic terms are
/// absorbed into a_bin (valid because x^2 = x for binary x). The compact
/// QUBO matrix is Q = B_bin + diag(a_bin).
struct QuboModel {
    Eigen::VectorXd a_bin;
    Eigen::MatrixXd B_bin;
    std::vector<std::vector<double>> precision;  // p_i per bin, powers of two
    std::vector<std::size_t> bit_offsets;        // start of bin i's bits in x
    std::vector<long long> z_max;                // carried from the bounds
    double offset = 0.0;
    double lambda = 0.0;

    std::size_t num_bits() const { return static_cast<std::size_t>(a_bin.size()); }
    std::size_t num_bins() const { return precision.size(); }
    std::size_t bits_for_bin(std::size_t i) const { return precision[i].size(); }

    /// f_Q(x), offset excluded.
    double energy(const std::vector<std::uint8_t>& x) const;
};

struct DecodeResult {
    std::vector<long long> z;
    bool clamped = false;  // some bit pattern exceeded its bound
};

/// Assemble the integer objective from response, data, background and the
/// curvature operator. Pass lambda = 0 with any placeholder D of matching
/// width to disable regularization; the convenience overload builds D itself.
QuadraticObjective build_objective(const ResponseMatrix& response,
                                   const Histogram& measured,
                                   const Histogram& background, double lambda,
                                   const LaplacianOperator& curvature);
QuadraticObjective build_objective(const ResponseMatrix& response,
                                   const Histogram& measured,
                                   const Histogram& background, double lambda);

/// Per-bin search bounds z_max_i = max(16, ceil(headroom * n_i / eps_i)).
/// The floor of 16 leaves room for upward fluctuations in empty bins.
BoundsVector estimate_bounds(const Histogram& measured,
                             const Eigen::VectorXd& efficiencies,
                             double headroom = 2.0);

/// Lower the integer objective onto binary variables. Bit lengths are
/// l_i = max(1, ceil(log2(z_max_i + 1))), the smallest width whose range
/// [0, 2^l_i - 1] covers [0, z_max_i] (the +1 keeps power-of-two bounds
/// representable). Throws capacity_error above max_bits total bits.
QuboModel encode(const QuadraticObjective& objective, const BoundsVector& bounds,
                 std::size_t max_bits = 4096);

/// Map a bitstring back to bin contents, clamping to [0, z_max] and flagging
/// when clamping occurred.
DecodeResult decode(const QuboModel& model, const std::vector<std::uint8_t>& x);

/// Unclamped decode: z_i = p_i . x_i exactly. This is the inverse of the
/// encoding map and the path on which f_Q(x) + offset reproduces the integer
/// objective for every bitstring, including slack patterns above z_max.
std::vector<long long> decode_unclamped(const QuboModel& model,
                                        const std::vector<std::uint8_t>& x);

/// Bitstring representing an in-bounds integer vector (binary expansion per
/// bin). Round-trips through decode.
std::vector<std::uint8_t> encode_point(const QuboModel& model,
                                       const std::vector<long long>& z);

/// a . z + z^T B z, the compact-form value (offset excluded).
double objective_value(const QuadraticObjective& objective,
                       const std::vector<long long>& z);
double objective_value(const QuadraticObjective& objective, const Eigen::VectorXd& z);

/// Residual form ||R z - n||^2 + lambda ||D z||^2 = compact value + offset.
double residual_value(const QuadraticObjective& objective,
                      const std::vector<long long>& z);

}  // namespace qubofold
