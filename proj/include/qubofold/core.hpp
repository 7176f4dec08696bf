#pragma once

#include <map>
#include <string>
#include <vector>

#include "qubofold/histogram.hpp"
#include "qubofold/laplacian.hpp"
#include "qubofold/response.hpp"

namespace qubofold {

enum class Method { MI, IBU, SVD, CD, ANNEAL, BRUTE };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Output of one unfolding run. `estimate` is the unfolded spectrum;
/// matrix inversion may legitimately produce negative entries and they are
/// reported as-is. `chi2` is filled by the caller once a truth reference is
/// available. Diagnostics carry method-specific scalars (iterations,
/// objective value, seed, lambda, warning counters).
struct UnfoldResult {
    Method method = Method::MI;
    std::vector<double> estimate;
    std::vector<double> errors;
    double chi2 = 0.0;
    std::map<std::string, double> diagnostics;
};

/// Forward map mu_i = sum_j R_ij z_j + beta_i.
Histogram fold(const ResponseMatrix& response, const Histogram& truth,
               const Histogram& background);
Histogram fold(const ResponseMatrix& response, const Histogram& truth);

/// Raw-vector fold for spectra that may carry negative entries (for example
/// re-folding a matrix-inversion estimate).
std::vector<double> fold_counts(const ResponseMatrix& response,
                                const std::vector<double>& z);

/// Poisson log-likelihood sum_i (n_i log mu_i - mu_i - log Gamma(n_i + 1)).
/// Diagnostic only; returns -infinity when some mu_i = 0 with n_i > 0.
double poisson_loglik(const Histogram& observed, const Histogram& expected);

}  // namespace qubofold
