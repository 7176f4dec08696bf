#pragma once

#include <string>
#include <vector>

#include "qubofold/metrics.hpp"

namespace qubofold {

/// Input for one figure: truth and measured spectra as step outlines plus
/// any number of unfolded series drawn as markers with error bars, with a
/// ratio panel underneath.
struct PlotInput {
    std::string title;
    std::vector<double> edges;
    std::vector<double> truth;
    std::vector<double> measured;
    struct Series {
        std::string label;
        std::vector<double> estimate;
        std::vector<double> errors;
        std::vector<double> ratio;
    };
    std::vector<Series> series;
};

/// Render a self-contained two-panel SVG (spectra overlay + ratio panel with
/// a unity line). Output bytes are a pure function of the input.
void emit_plot(const PlotInput& input, const std::string& path);

/// Assemble a PlotInput from the records of one distribution. All records
/// must share the binning.
PlotInput plot_input_from_records(const std::vector<BenchmarkRecord>& records,
                                  const std::vector<double>& edges);

}  // namespace qubofold
