#include "qubofold/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qubofold/rng.hpp"

namespace qubofold {

namespace {

constexpr std::size_t kBruteForceBitCap = 24;

// Local fields h_k = a_k + 2 sum_j B_kj x_j (B hollow), so flipping bit k
// changes the energy by (1 - 2 x_k) h_k.
Eigen::VectorXd local_fields(const QuboModel& model,
                             const std::vector<std::uint8_t>& x) {
    Eigen::VectorXd h = model.a_bin;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j]) h += 2.0 * model.B_bin.col(static_cast<Eigen::Index>(j));
    }
    return h;
}

bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SolveOutcome finish_qubo_outcome(const QuboModel& model, SolveOutcome outcome) {
    outcome.energy = model.energy(outcome.bitstring);
    DecodeResult dec = decode(model, outcome.bitstring);
    outcome.solution = std::move(dec.z);
    if (dec.clamped) outcome.diagnostics["clamped"] = 1.0;
    return outcome;
}

}  // namespace

SolveOutcome solve_bruteforce(const QuboModel& model) {
    const std::size_t n = model.num_bits();
    if (n > kBruteForceBitCap) {
        throw capacity_error("solve_bruteforce: " + std::to_string(n) +
                             " bits exceed the cap of " +
                             std::to_string(kBruteForceBitCap));
    }
    std::vector<std::uint8_t> x(n, 0);
    Eigen::VectorXd h = model.a_bin;
    double energy = 0.0;

    std::vector<std::uint8_t> best_x = x;
    double best_energy = 0.0;  // exact energy of best_x (all zeros -> 0)

    // Gray-code walk: step k flips bit ctz(k), so the incremental delta is a
    // single field lookup. Near-ties get an exact re-evaluation before the
    // lexicographic comparison.
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(k));
        const double d = x[bit] ? -1.0 : 1.0;
        energy += d * h(static_cast<Eigen::Index>(bit));
        x[bit] ^= 1;
        h += (2.0 * d) * model.B_bin.col(static_cast<Eigen::Index>(bit));

        const double tie_tol = 1e-9 * (1.0 + std::abs(best_energy));
        if (energy < best_energy - tie_tol) {
            best_x = x;
            best_energy = model.energy(x);
        } else if (energy <= best_energy + tie_tol) {
            const double exact = model.energy(x);
            if (exact < best_energy ||
                (exact == best_energy && lex_less(x, best_x))) {
                best_x = x;
                best_energy = exact;
            }
        }
    }

    SolveOutcome outcome;
    outcome.bitstring = std::move(best_x);
    outcome.evaluations = static_cast<std::size_t>(total);
    return finish_qubo_outcome(model, std::move(outcome));
}

AnnealSchedule AnnealSchedule::resolved_for(const QuboModel& model) const {
    if (sweeps < 1 || reads < 1) {
        throw std::invalid_argument("AnnealSchedule: sweeps and reads must be >= 1");
    }
    AnnealSchedule r = *this;
    if (!needs_auto_beta()) {
        if (!(beta_start < beta_end)) {
            throw std::invalid_argument("AnnealSchedule: need 0 < beta_start < beta_end");
        }
        return r;
    }
    // Hot end: the largest possible single-flip move is accepted with
    // probability 1/2. Cold end: the unit-step scale (the smallest quadratic
    // curvature a single low bit can see) is rejected at the 1% level. The
    // coupling between the two lowest bits of a bin is 2 B_ii, which recovers
    // that curvature from the encoded model.
    double max_field = 0.0;
    for (Eigen::Index k = 0; k < model.a_bin.size(); ++k) {
        const double f =
            std::abs(model.a_bin(k)) + 2.0 * model.B_bin.row(k).cwiseAbs().sum();
        max_field = std::max(max_field, f);
    }
    double unit = 0.0;
    for (std::size_t i = 0; i < model.num_bins(); ++i) {
        if (model.bits_for_bin(i) < 2) continue;
        const auto o = static_cast<Eigen::Index>(model.bit_offsets[i]);
        const double curv = 0.5 * std::abs(model.B_bin(o, o + 1));
        if (curv > 0.0 && (unit == 0.0 || curv < unit)) unit = curv;
    }
    if (unit == 0.0) {
        for (Eigen::Index k = 0; k < model.a_bin.size(); ++k) {
            const double a = std::abs(model.a_bin(k));
            if (a > 0.0 && (unit == 0.0 || a < unit)) unit = a;
        }
    }
    if (unit == 0.0) unit = 1.0;
    if (max_field <= 0.0) max_field = 1.0;
    r.beta_end = std::log(100.0) / unit;
    r.beta_start = std::min(std::log(2.0) / max_field, 0.5 * r.beta_end);
    return r;
}

SolveOutcome solve_anneal(const QuboModel& model, const AnnealSchedule& schedule) {
    const AnnealSchedule sched = schedule.resolved_for(model);
    const std::size_t n = model.num_bits();

    SolveOutcome outcome;
    outcome.read_energies.reserve(sched.reads);
    std::vector<std::uint8_t> global_best;
    double global_best_energy = 0.0;
    std::size_t evaluations = 0;

    const double beta_ratio = sched.beta_end / sched.beta_start;
    for (std::size_t read = 0; read < sched.reads; ++read) {
        auto gen = rng::engine(rng::derive_seed(sched.seed, read));
        std::uniform_real_distribution<double> uni(0.0, 1.0);

        std::vector<std::uint8_t> x(n);
        for (auto& b : x) b = static_cast<std::uint8_t>(gen() & 1ULL);
        Eigen::VectorXd h = local_fields(model, x);
        double energy = model.energy(x);
        std::vector<std::uint8_t> read_best = x;
        double read_best_energy = energy;

        for (std::size_t sweep = 0; sweep < sched.sweeps; ++sweep) {
            const double frac = sched.sweeps > 1
                                    ? static_cast<double>(sweep) /
                                          static_cast<double>(sched.sweeps - 1)
                                    : 1.0;
            const double beta = sched.beta_start * std::pow(beta_ratio, frac);
            for (std::size_t k = 0; k < n; ++k) {
                const double d = x[k] ? -1.0 : 1.0;
                const double delta = d * h(static_cast<Eigen::Index>(k));
                ++evaluations;
                if (delta > 0.0 && uni(gen) >= std::exp(-beta * delta)) continue;
                x[k] ^= 1;
                energy += delta;
                h += (2.0 * d) * model.B_bin.col(static_cast<Eigen::Index>(k));
                if (energy < read_best_energy) {
                    read_best_energy = energy;
                    read_best = x;
                }
            }
        }

        const double exact = model.energy(read_best);
        outcome.read_energies.push_back(exact);
        if (global_best.empty() || exact < global_best_energy ||
            (exact == global_best_energy && lex_less(read_best, global_best))) {
            global_best = std::move(read_best);
            global_best_energy = exact;
        }
    }

    outcome.bitstring = std::move(global_best);
    outcome.evaluations = evaluations;
    outcome.diagnostics["beta_start"] = sched.beta_start;
    outcome.diagnostics["beta_end"] = sched.beta_end;
    outcome.diagnostics["sweeps"] = static_cast<double>(sched.sweeps);
    outcome.diagnostics["reads"] = static_cast<double>(sched.reads);
    outcome.diagnostics["seed"] = static_cast<double>(sched.seed);
    return finish_qubo_outcome(model, std::move(outcome));
}

SolveOutcome solve_integer_cd(const QuadraticObjective& objective,
                              const BoundsVector& bounds, const CdOptions& options) {
    const std::size_t m = objective.size();
    if (bounds.size() != m) {
        throw std::invalid_argument("solve_integer_cd: bounds dimension mismatch");
    }

    auto clamp_bin = [&](long long v, std::size_t i) {
        return std::clamp<long long>(v, 0, bounds.z_max[i]);
    };

    std::vector<long long> z(m, 0);
    if (options.start) {
        if (options.start->size() != m) {
            throw std::invalid_argument("solve_integer_cd: start dimension mismatch");
        }
        for (std::size_t i = 0; i < m; ++i) z[i] = clamp_bin((*options.start)[i], i);
    } else {
        // Round the unconstrained stationary point B z = -a/2 into the box.
        Eigen::VectorXd rhs = -0.5 * objective.a;
        Eigen::VectorXd zstar = objective.B.ldlt().solve(rhs);
        for (std::size_t i = 0; i < m; ++i) {
            const double v = zstar(static_cast<Eigen::Index>(i));
            z[i] = std::isfinite(v)
                       ? clamp_bin(static_cast<long long>(std::llround(v)), i)
                       : 0;
        }
    }

    Eigen::VectorXd zv(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) zv(static_cast<Eigen::Index>(i)) = static_cast<double>(z[i]);

    SolveOutcome outcome;
    std::size_t skipped = 0;
    std::size_t sweeps_used = 0;
    bool converged = false;
    for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            const double bii = objective.B(ii, ii);
            if (bii == 0.0) {
                ++skipped;
                continue;
            }
            const double s = objective.B.row(ii).dot(zv) - bii * zv(ii);
            const double zstar = (-0.5 * objective.a(ii) - s) / bii;
            const auto lo = static_cast<long long>(std::floor(zstar));
            const long long c1 = clamp_bin(lo, i);
            const long long c2 = clamp_bin(lo + 1, i);
            // 1-D restriction g(v) = B_ii v^2 + (a_i + 2 s) v, up to a constant.
            auto g = [&](long long v) {
                const double vd = static_cast<double>(v);
                return bii * vd * vd + (objective.a(ii) + 2.0 * s) * vd;
            };
            outcome.evaluations += 2;
            const long long best = g(c1) <= g(c2) ? c1 : c2;
            if (best != z[i]) {
                z[i] = best;
                zv(ii) = static_cast<double>(best);
                changed = true;
            }
        }
        ++sweeps_used;
        outcome.read_energies.push_back(objective_value(objective, zv));
        if (!changed) {
            converged = true;
            break;
        }
    }

    outcome.solution = std::move(z);
    outcome.energy = objective_value(objective, outcome.solution);
    outcome.diagnostics["sweeps"] = static_cast<double>(sweeps_used);
    outcome.diagnostics["converged"] = converged ? 1.0 : 0.0;
    outcome.diagnostics["seed"] = static_cast<double>(options.seed);
    if (skipped > 0) outcome.diagnostics["skipped_coordinates"] = static_cast<double>(skipped);
    return outcome;
}

SolveOutcome solve_integer_cd(const QuadraticObjective& objective,
                              const BoundsVector& bounds, std::uint64_t seed) {
    CdOptions options;
    options.seed = seed;
    return solve_integer_cd(objective, bounds, options);
}

}  // namespace qubofold
