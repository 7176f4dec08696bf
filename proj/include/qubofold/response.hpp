#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace qubofold {

/// M x M migration matrix. entry(i, j) is the probability that an event
/// generated in true bin j is reconstructed in measured bin i; the column sum
/// is the detection efficiency of the true bin. Construction validates
/// 0 <= R_ij <= 1 and the column-sum/efficiency consistency to 1e-12.
class ResponseMatrix {
public:
    static constexpr double kEfficiencyTolerance = 1e-12;

    /// Efficiencies derived as column sums.
    explicit ResponseMatrix(Eigen::MatrixXd entries);

    /// Explicit efficiencies, checked against the column sums.
    ResponseMatrix(Eigen::MatrixXd entries, Eigen::VectorXd efficiencies);

    static ResponseMatrix identity(std::size_t nbins);

    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
    double entry(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Eigen::MatrixXd& matrix() const { return entries_; }
    const Eigen::VectorXd& efficiencies() const { return efficiencies_; }
    double efficiency(std::size_t j) const { return efficiencies_(j); }

private:
    void validate() const;

    Eigen::MatrixXd entries_;
    Eigen::VectorXd efficiencies_;
};

}  // namespace qubofold
