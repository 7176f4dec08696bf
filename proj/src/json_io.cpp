#include "qubofold/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace qubofold {

using nlohmann::json;

json histogram_to_json(const Histogram& h) {
    return json{{"edges", h.edges()}, {"counts", h.counts()}};
}

Histogram histogram_from_json(const json& j, bool integral) {
    return Histogram(j.at("edges").get<std::vector<double>>(),
                     j.at("counts").get<std::vector<double>>(), integral);
}

json response_to_json(const ResponseMatrix& r) {
    const std::size_t m = r.size();
    std::vector<std::vector<double>> entries(m, std::vector<double>(m));
    std::vector<double> eff(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) entries[i][j] = r.entry(i, j);
        eff[i] = r.efficiency(i);
    }
    return json{{"entries", entries}, {"efficiencies", eff}};
}

ResponseMatrix response_from_json(const json& j) {
    const auto rows = j.at("entries").get<std::vector<std::vector<double>>>();
    const std::size_t m = rows.size();
    Eigen::MatrixXd entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != m) {
            throw std::invalid_argument("response JSON: entries must be square");
        }
        for (std::size_t k = 0; k < m; ++k) {
            entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
        }
    }
    const auto eff = j.at("efficiencies").get<std::vector<double>>();
    return ResponseMatrix(std::move(entries),
                          Eigen::Map<const Eigen::VectorXd>(
                              eff.data(), static_cast<Eigen::Index>(eff.size())));
}

json unfold_result_to_json(const UnfoldResult& r) {
    return json{{"method", method_name(r.method)},
                {"estimate", r.estimate},
                {"errors", r.errors},
                {"chi2", r.chi2},
                {"diagnostics", r.diagnostics}};
}

UnfoldResult unfold_result_from_json(const json& j) {
    UnfoldResult r;
    r.method = method_from_name(j.at("method").get<std::string>());
    r.estimate = j.at("estimate").get<std::vector<double>>();
    r.errors = j.at("errors").get<std::vector<double>>();
    r.chi2 = j.at("chi2").get<double>();
    if (j.contains("diagnostics")) {
        r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    }
    return r;
}

json qubo_model_to_json(const QuboModel& m) {
    const std::size_t n = m.num_bits();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q[i][j] = i == j ? m.a_bin(static_cast<Eigen::Index>(i))
                             : m.B_bin(static_cast<Eigen::Index>(i),
                                       static_cast<Eigen::Index>(j));
        }
    }
    return json{{"matrix", q},
                {"precision", m.precision},
                {"bit_offsets", m.bit_offsets},
                {"bounds", m.z_max},
                {"offset", m.offset},
                {"lambda", m.lambda}};
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    return json::parse(in);
}

}  // namespace qubofold
