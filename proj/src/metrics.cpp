#include "qubofold/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qubofold/datagen.hpp"
#include "qubofold/rng.hpp"

namespace qubofold {

Chi2Result chi2_detail(const Histogram& truth, const std::vector<double>& estimate) {
    if (truth.size() != estimate.size()) {
        throw std::invalid_argument("chi2: dimension mismatch");
    }
    Chi2Result result;
    std::size_t used = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double t = truth.count(i);
        if (t <= 0.0) {
            ++result.excluded_bins;
            continue;
        }
        const double d = t - estimate[i];
        result.value += d * d / t;
        ++used;
    }
    if (used == 0) {
        throw std::invalid_argument("chi2: all truth bins are zero");
    }
    return result;
}

double chi2(const Histogram& truth, const std::vector<double>& estimate) {
    return chi2_detail(truth, estimate).value;
}

std::vector<double> binwise_ratio(const Histogram& truth,
                                  const std::vector<double>& estimate) {
    if (truth.size() != estimate.size()) {
        throw std::invalid_argument("binwise_ratio: dimension mismatch");
    }
    std::vector<double> r(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double t = truth.count(i);
        r[i] = t > 0.0 ? estimate[i] / t
                       : std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

std::vector<double> bootstrap_errors(const Unfolder& unfolder,
                                     const Histogram& measured, std::size_t n_toys,
                                     std::uint64_t seed, std::size_t* failed_toys) {
    if (n_toys < 2) {
        throw std::invalid_argument("bootstrap_errors: need at least 2 toys");
    }
    const std::size_t m = measured.size();
    std::vector<double> sum(m, 0.0);
    std::vector<double> sumsq(m, 0.0);
    std::size_t ok = 0;
    std::size_t failed = 0;
    for (std::size_t t = 0; t < n_toys; ++t) {
        const Histogram toy = poissonize(measured, rng::derive_seed(seed, t));
        std::vector<double> est;
        try {
            est = unfolder(toy);
        } catch (const std::exception&) {
            ++failed;
            continue;
        }
        if (est.size() != m) {
            ++failed;
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            sum[i] += est[i];
            sumsq[i] += est[i] * est[i];
        }
        ++ok;
    }
    if (failed_toys != nullptr) *failed_toys = failed;
    if (failed * 2 > n_toys) {
        throw std::runtime_error("bootstrap_errors: more than half of the toys failed");
    }
    std::vector<double> std_dev(m, 0.0);
    if (ok >= 2) {
        for (std::size_t i = 0; i < m; ++i) {
            const double mean = sum[i] / static_cast<double>(ok);
            const double var =
                (sumsq[i] - static_cast<double>(ok) * mean * mean) /
                static_cast<double>(ok - 1);
            std_dev[i] = std::sqrt(std::max(var, 0.0));
        }
    }
    return std_dev;
}

}  // namespace qubofold
