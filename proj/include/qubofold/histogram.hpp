#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qubofold {

/// Binned spectrum: M+1 strictly increasing edges plus M non-negative counts.
/// Counts are stored as reals so expected spectra and estimates share one
/// type; histograms built from observed events carry an integrality flag and
/// are validated as integer-valued.
class Histogram {
public:
    Histogram(std::vector<double> edges, std::vector<double> counts,
              bool integral = false);

    /// Equal-width binning over [lo, hi) with all counts zero.
    static Histogram zeros(double lo, double hi, std::size_t nbins);

    /// Equal-width binning filled from raw samples. Values outside [lo, hi]
    /// are ignored; the result is integer-valued by construction.
    static Histogram fill(const std::vector<double>& values, double lo,
                          double hi, std::size_t nbins);

    std::size_t size() const { return counts_.size(); }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& counts() const { return counts_; }
    double count(std::size_t i) const { return counts_[i]; }
    bool integral() const { return integral_; }

    double lo() const { return edges_.front(); }
    double hi() const { return edges_.back(); }
    double bin_width(std::size_t i) const { return edges_[i + 1] - edges_[i]; }
    double bin_center(std::size_t i) const {
        return 0.5 * (edges_[i] + edges_[i + 1]);
    }
    double total() const;

    /// Bin index for a value, half-open bins except the last (closed at hi).
    /// Out-of-window values map to nullopt.
    std::optional<std::size_t> find_bin(double value) const;

    /// Same binning, different contents.
    Histogram with_counts(std::vector<double> counts, bool integral = false) const;

private:
    std::vector<double> edges_;
    std::vector<double> counts_;
    bool integral_;
};

}  // namespace qubofold
