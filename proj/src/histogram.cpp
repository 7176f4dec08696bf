#include "qubofold/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qubofold {

Histogram::Histogram(std::vector<double> edges, std::vector<double> counts,
                     bool integral)
    : edges_(std::move(edges)), counts_(std::move(counts)), integral_(integral) {
    if (edges_.size() < 2) {
        throw std::invalid_argument("Histogram: need at least two bin edges");
    }
    if (counts_.size() + 1 != edges_.size()) {
        throw std::invalid_argument("Histogram: counts/edges length mismatch");
    }
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (!(edges_[i] < edges_[i + 1])) {
            throw std::invalid_argument("Histogram: edges must be strictly increasing");
        }
    }
    for (double c : counts_) {
        if (!std::isfinite(c) || c < 0.0) {
            throw std::invalid_argument("Histogram: counts must be finite and non-negative");
        }
        if (integral_ && std::nearbyint(c) != c) {
            throw std::invalid_argument("Histogram: observed counts must be integer-valued");
        }
    }
}

Histogram Histogram::zeros(double lo, double hi, std::size_t nbins) {
    if (nbins == 0 || !(lo < hi)) {
        throw std::invalid_argument("Histogram::zeros: invalid binning");
    }
    std::vector<double> edges(nbins + 1);
    for (std::size_t i = 0; i <= nbins; ++i) {
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nbins);
    }
    edges.back() = hi;
    return Histogram(std::move(edges), std::vector<double>(nbins, 0.0));
}

Histogram Histogram::fill(const std::vector<double>& values, double lo,
                          double hi, std::size_t nbins) {
    Histogram h = zeros(lo, hi, nbins);
    std::vector<double> counts(nbins, 0.0);
    for (double v : values) {
        if (auto bin = h.find_bin(v)) {
            counts[*bin] += 1.0;
        }
    }
    return Histogram(h.edges_, std::move(counts), /*integral=*/true);
}

double Histogram::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0.0);
}

std::optional<std::size_t> Histogram::find_bin(double value) const {
    if (value < edges_.front() || value > edges_.back()) {
        return std::nullopt;
    }
    if (value == edges_.back()) {
        return counts_.size() - 1;
    }
    auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
    return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

Histogram Histogram::with_counts(std::vector<double> counts, bool integral) const {
    return Histogram(edges_, std::move(counts), integral);
}

}  // namespace qubofold
