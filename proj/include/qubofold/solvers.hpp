#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qubofold/qubo.hpp"

namespace qubofold {

/// Geometric inverse-temperature ramp for the annealer. beta_start and
/// beta_end left at zero request auto-scaling from the model coefficients.
struct AnnealSchedule {
    std::size_t sweeps = 1000;
    std::size_t reads = 20;
    double beta_start = 0.0;
    double beta_end = 0.0;
    std::uint64_t seed = 0;

    bool needs_auto_beta() const { return beta_start <= 0.0 || beta_end <= 0.0; }

    /// Resolve the beta range for a given model. Auto-scaling derives the hot
    /// end from the largest single-flip energy magnitude (accepted with
    /// probability 1/2) and the cold end from the smallest (accepted with
    /// probability 1/100), so the ramp spans every coefficient scale the
    /// precision encoding produces.
    AnnealSchedule resolved_for(const QuboModel& model) const;
};

/// One solver run. QUBO solvers fill `bitstring` and set `solution` to its
/// clamped decode; the integer solver fills `solution` only. `energy` is the
/// compact-form objective (offset excluded), recomputed exactly at the
/// returned point.
struct SolveOutcome {
    std::vector<std::uint8_t> bitstring;
    std::vector<long long> solution;
    double energy = 0.0;
    std::size_t evaluations = 0;
    std::vector<double> read_energies;  // per read / per sweep trace
    std::map<std::string, double> diagnostics;
};

/// Exact minimizer by exhaustive enumeration, capped at 24 bits. Ties are
/// broken toward the lexicographically smallest bitstring.
SolveOutcome solve_bruteforce(const QuboModel& model);

/// Simulated annealing: per read, a random start followed by `sweeps` passes
/// of single-bit Metropolis updates with incremental energy deltas; the best
/// configuration ever visited wins. Deterministic for a fixed seed, and read
/// r of seed s reuses the derived stream of read r for every larger read
/// count.
SolveOutcome solve_anneal(const QuboModel& model, const AnnealSchedule& schedule);

struct CdOptions {
    std::size_t max_sweeps = 200;
    std::uint64_t seed = 0;
    /// Start point; absent means round the unconstrained stationary point.
    /// Callers unfolding data seed this with the clamped matrix-inversion
    /// estimate.
    std::optional<std::vector<long long>> start;
};

/// Bounded-integer coordinate descent: sweeps of exact one-dimensional
/// updates, each picking the better of the two clamped integer neighbors of
/// the continuous per-coordinate minimizer. Descends monotonically; stops on
/// a fixed point or after max_sweeps.
SolveOutcome solve_integer_cd(const QuadraticObjective& objective,
                              const BoundsVector& bounds, const CdOptions& options);
SolveOutcome solve_integer_cd(const QuadraticObjective& objective,
                              const BoundsVector& bounds, std::uint64_t seed = 0);

}  // namespace qubofold
