#include "qubofold/response.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qubofold {

ResponseMatrix::ResponseMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw std::invalid_argument("ResponseMatrix: entries must be square and non-empty");
    }
    efficiencies_ = entries_.colwise().sum();
    validate();
}

ResponseMatrix::ResponseMatrix(Eigen::MatrixXd entries, Eigen::VectorXd efficiencies)
    : entries_(std::move(entries)), efficiencies_(std::move(efficiencies)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw std::invalid_argument("ResponseMatrix: entries must be square and non-empty");
    }
    if (efficiencies_.size() != entries_.cols()) {
        throw std::invalid_argument("ResponseMatrix: efficiency vector length mismatch");
    }
    validate();
}

ResponseMatrix ResponseMatrix::identity(std::size_t nbins) {
    return ResponseMatrix(Eigen::MatrixXd::Identity(
        static_cast<Eigen::Index>(nbins), static_cast<Eigen::Index>(nbins)));
}

void ResponseMatrix::validate() const {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        double colsum = 0.0;
        for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
            const double r = entries_(i, j);
            if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
                throw std::invalid_argument("ResponseMatrix: entries must lie in [0, 1]");
            }
            colsum += r;
        }
        const double eps = efficiencies_(j);
        if (!std::isfinite(eps) || eps < 0.0 || eps > 1.0 + kEfficiencyTolerance) {
            throw std::invalid_argument("ResponseMatrix: efficiencies must lie in [0, 1]");
        }
        if (std::abs(colsum - eps) > kEfficiencyTolerance) {
            throw std::invalid_argument(
                "ResponseMatrix: column " + std::to_string(j) +
                " sum does not match its efficiency");
        }
    }
}

}  // namespace qubofold
