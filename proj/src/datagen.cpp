#include "qubofold/datagen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qubofold/rng.hpp"

namespace qubofold {

DistributionSpec DistributionSpec::normal(double mean, double sigma, double lo,
                                          double hi) {
    DistributionSpec s{Kind::Normal, mean, sigma, lo, hi};
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::exponential(double rate, double lo, double hi) {
    DistributionSpec s{Kind::Exponential, rate, 0.0, lo, hi};
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::gamma(double shape, double scale, double lo,
                                         double hi) {
    DistributionSpec s{Kind::Gamma, shape, scale, lo, hi};
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::breit_wigner(double location, double width,
                                                double lo, double hi) {
    DistributionSpec s{Kind::BreitWigner, location, width, lo, hi};
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::default_for(Kind kind, double lo, double hi) {
    const double range = hi - lo;
    const double center = 0.5 * (lo + hi);
    switch (kind) {
        case Kind::Normal:
            return normal(center, range / 8.0, lo, hi);
        case Kind::Exponential:
            return exponential(6.0 / range, lo, hi);
        case Kind::Gamma:
            return gamma(2.0, range / 8.0, lo, hi);
        case Kind::BreitWigner:
            return breit_wigner(center, range / 16.0, lo, hi);
    }
    throw std::logic_error("DistributionSpec: unknown kind");
}

DistributionSpec DistributionSpec::default_for(Kind kind) {
    switch (kind) {
        case Kind::Normal: return default_for(kind, -6.0, 6.0);
        case Kind::Exponential: return default_for(kind, 0.0, 6.0);
        case Kind::Gamma: return default_for(kind, 0.0, 12.0);
        case Kind::BreitWigner: return default_for(kind, -6.0, 6.0);
    }
    throw std::logic_error("DistributionSpec: unknown kind");
}

void DistributionSpec::validate() const {
    if (!(lo < hi)) {
        throw std::invalid_argument("DistributionSpec: range.low must be below range.high");
    }
    switch (kind) {
        case Kind::Normal:
            if (!(p2 > 0.0)) throw std::invalid_argument("DistributionSpec: sigma must be positive");
            break;
        case Kind::Exponential:
            if (!(p1 > 0.0)) throw std::invalid_argument("DistributionSpec: rate must be positive");
            break;
        case Kind::Gamma:
            if (!(p1 > 0.0) || !(p2 > 0.0)) {
                throw std::invalid_argument("DistributionSpec: shape and scale must be positive");
            }
            break;
        case Kind::BreitWigner:
            if (!(p2 > 0.0)) throw std::invalid_argument("DistributionSpec: width must be positive");
            break;
    }
}

std::string DistributionSpec::kind_name() const {
    switch (kind) {
        case Kind::Normal: return "normal";
        case Kind::Exponential: return "exponential";
        case Kind::Gamma: return "gamma";
        case Kind::BreitWigner: return "breit_wigner";
    }
    throw std::logic_error("DistributionSpec: unknown kind");
}

DistributionSpec::Kind DistributionSpec::kind_from_name(const std::string& name) {
    if (name == "normal") return Kind::Normal;
    if (name == "exponential") return Kind::Exponential;
    if (name == "gamma") return Kind::Gamma;
    if (name == "breit_wigner") return Kind::BreitWigner;
    throw std::invalid_argument("unknown distribution kind: " + name);
}

void DetectorModel::validate() const {
    if (!(smear_sigma >= 0.0)) {
        throw std::invalid_argument("DetectorModel: smear_sigma must be non-negative");
    }
    if (!(efficiency > 0.0) || efficiency > 1.0) {
        throw std::invalid_argument("DetectorModel: efficiency must lie in (0, 1]");
    }
    if (!std::isfinite(bias)) {
        throw std::invalid_argument("DetectorModel: bias must be finite");
    }
}

namespace {

// One in-window draw, rejecting out-of-window values. The cap guards against
// windows carrying essentially no probability mass.
template <typename Draw>
double truncated_draw(Draw&& draw, double lo, double hi) {
    constexpr int kMaxTries = 100000;
    for (int t = 0; t < kMaxTries; ++t) {
        const double v = draw();
        if (v >= lo && v <= hi) return v;
    }
    throw std::runtime_error("sample_truth: window rejects virtually all draws");
}

}  // namespace

std::vector<double> sample_truth(const DistributionSpec& spec, std::size_t n_events,
                                 std::uint64_t seed) {
    spec.validate();
    if (n_events == 0) {
        throw std::invalid_argument("sample_truth: n_events must be at least 1");
    }
    auto gen = rng::engine(seed);
    std::vector<double> out;
    out.reserve(n_events);
    switch (spec.kind) {
        case DistributionSpec::Kind::Normal: {
            std::normal_distribution<double> d(spec.p1, spec.p2);
            for (std::size_t i = 0; i < n_events; ++i) {
                out.push_back(truncated_draw([&] { return d(gen); }, spec.lo, spec.hi));
            }
            break;
        }
        case DistributionSpec::Kind::Exponential: {
            std::exponential_distribution<double> d(spec.p1);
            for (std::size_t i = 0; i < n_events; ++i) {
                out.push_back(
                    truncated_draw([&] { return spec.lo + d(gen); }, spec.lo, spec.hi));
            }
            break;
        }
        case DistributionSpec::Kind::Gamma: {
            std::gamma_distribution<double> d(spec.p1, spec.p2);
            for (std::size_t i = 0; i < n_events; ++i) {
                out.push_back(
                    truncated_draw([&] { return spec.lo + d(gen); }, spec.lo, spec.hi));
            }
            break;
        }
        case DistributionSpec::Kind::BreitWigner: {
            // Cauchy with half width at half maximum = width / 2.
            std::cauchy_distribution<double> d(spec.p1, 0.5 * spec.p2);
            for (std::size_t i = 0; i < n_events; ++i) {
                out.push_back(truncated_draw([&] { return d(gen); }, spec.lo, spec.hi));
            }
            break;
        }
    }
    return out;
}

TruthRecoSample apply_detector(const std::vector<double>& truth,
                               const DetectorModel& model, std::uint64_t seed) {
    model.validate();
    auto gen = rng::engine(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> smear(0.0, model.smear_sigma > 0.0
                                                    ? model.smear_sigma
                                                    : 1.0);
    TruthRecoSample sample;
    sample.truth_values = truth;
    sample.reco_values.reserve(truth.size());
    for (double t : truth) {
        if (uni(gen) >= model.efficiency) {
            sample.reco_values.emplace_back(std::nullopt);
            continue;
        }
        double reco = t + model.bias;
        if (model.smear_sigma > 0.0) reco += smear(gen);
        sample.reco_values.emplace_back(reco);
    }
    return sample;
}

ResponseMatrix build_response(const TruthRecoSample& sample,
                              const std::vector<double>& edges) {
    if (sample.truth_values.size() != sample.reco_values.size()) {
        throw std::invalid_argument("build_response: truth/reco length mismatch");
    }
    if (sample.truth_values.empty()) {
        throw std::invalid_argument("build_response: empty sample");
    }
    const std::size_t m = edges.size() - 1;
    const Histogram frame = Histogram(edges, std::vector<double>(m, 0.0));

    std::vector<double> truth_totals(m, 0.0);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                   static_cast<Eigen::Index>(m));
    for (std::size_t e = 0; e < sample.truth_values.size(); ++e) {
        const auto jbin = frame.find_bin(sample.truth_values[e]);
        if (!jbin) continue;  // truth outside the window belongs to no bin
        truth_totals[*jbin] += 1.0;
        if (!sample.reco_values[e]) continue;
        const auto ibin = frame.find_bin(*sample.reco_values[e]);
        if (!ibin) continue;  // out-of-window reco counts as undetected
        counts(static_cast<Eigen::Index>(*ibin), static_cast<Eigen::Index>(*jbin)) += 1.0;
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (truth_totals[j] == 0.0) {
            throw std::invalid_argument("build_response: truth bin " +
                                        std::to_string(j) + " has no events");
        }
        counts.col(static_cast<Eigen::Index>(j)) /= truth_totals[j];
    }
    return ResponseMatrix(std::move(counts));
}

Histogram poissonize(const Histogram& expected, std::uint64_t seed) {
    auto gen = rng::engine(seed);
    std::vector<double> counts(expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double mu = expected.count(i);
        if (mu < 0.0) {
            throw std::invalid_argument("poissonize: negative expected count");
        }
        if (mu == 0.0) {
            counts[i] = 0.0;
            continue;
        }
        std::poisson_distribution<long long> d(mu);
        counts[i] = static_cast<double>(d(gen));
    }
    return expected.with_counts(std::move(counts), /*integral=*/true);
}

}  // namespace qubofold
