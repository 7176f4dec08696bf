#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace qubofold {

/// Second-difference operator: (M-2) x M matrix whose row r carries the
/// stencil (-1, 2, -1) at columns (r, r+1, r+2). ||D z||^2 is the curvature
/// penalty used for smoothness regularization; D annihilates constant and
/// linear sequences.
class LaplacianOperator {
public:
    /// Requires nbins >= 3; below that the curvature penalty is undefined and
    /// callers must run unregularized (lambda = 0).
    explicit LaplacianOperator(std::size_t nbins);

    std::size_t rows() const { return static_cast<std::size_t>(matrix_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(matrix_.cols()); }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& z) const;

private:
    Eigen::MatrixXd matrix_;
};

inline LaplacianOperator laplacian(std::size_t nbins) {
    return LaplacianOperator(nbins);
}

}  // namespace qubofold
