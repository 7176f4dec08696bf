#include "qubofold/laplacian.hpp"

#include <stdexcept>

namespace qubofold {

LaplacianOperator::LaplacianOperator(std::size_t nbins) {
    if (nbins < 3) {
        throw std::invalid_argument(
            "LaplacianOperator: need at least 3 bins; use lambda = 0 below that");
    }
    const auto m = static_cast<Eigen::Index>(nbins);
    matrix_ = Eigen::MatrixXd::Zero(m - 2, m);
    for (Eigen::Index r = 0; r < m - 2; ++r) {
        matrix_(r, r) = -1.0;
        matrix_(r, r + 1) = 2.0;
        matrix_(r, r + 2) = -1.0;
    }
}

Eigen::VectorXd LaplacianOperator::apply(const Eigen::VectorXd& z) const {
    if (z.size() != matrix_.cols()) {
        throw std::invalid_argument("LaplacianOperator: dimension mismatch");
    }
    return matrix_ * z;
}

}  // namespace qubofold
