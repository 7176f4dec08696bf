#include "qubofold/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qubofold {

std::string method_name(Method m) {
    switch (m) {
        case Method::MI: return "MI";
        case Method::IBU: return "IBU";
        case Method::SVD: return "SVD";
        case Method::CD: return "CD";
        case Method::ANNEAL: return "ANNEAL";
        case Method::BRUTE: return "BRUTE";
    }
    throw std::logic_error("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "MI") return Method::MI;
    if (name == "IBU") return Method::IBU;
    if (name == "SVD") return Method::SVD;
    if (name == "CD") return Method::CD;
    if (name == "ANNEAL") return Method::ANNEAL;
    if (name == "BRUTE") return Method::BRUTE;
    throw std::invalid_argument("unknown method name: " + name);
}

Histogram fold(const ResponseMatrix& response, const Histogram& truth,
               const Histogram& background) {
    const std::size_t m = truth.size();
    if (response.size() != m || background.size() != m) {
        throw std::invalid_argument("fold: dimension mismatch");
    }
    Eigen::VectorXd z(m);
    for (std::size_t j = 0; j < m; ++j) z(static_cast<Eigen::Index>(j)) = truth.count(j);
    Eigen::VectorXd mu = response.matrix() * z;
    std::vector<double> counts(m);
    for (std::size_t i = 0; i < m; ++i) {
        counts[i] = mu(static_cast<Eigen::Index>(i)) + background.count(i);
    }
    return truth.with_counts(std::move(counts));
}

Histogram fold(const ResponseMatrix& response, const Histogram& truth) {
    return fold(response, truth,
                truth.with_counts(std::vector<double>(truth.size(), 0.0)));
}

double poisson_loglik(const Histogram& observed, const Histogram& expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("poisson_loglik: dimension mismatch");
    }
    double ll = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double n = observed.count(i);
        const double mu = expected.count(i);
        if (mu <= 0.0) {
            if (n > 0.0) return -std::numeric_limits<double>::infinity();
            continue;  // 0 log 0 - 0 = 0
        }
        ll += n * std::log(mu) - mu - std::lgamma(n + 1.0);
    }
    return ll;
}

}  // namespace qubofold
