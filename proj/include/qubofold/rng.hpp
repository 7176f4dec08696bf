#pragma once

#include <cstdint>
#include <random>

namespace qubofold::rng {

// splitmix64 finalizer (Vigna). Used to derive independent, reproducible
// seed streams from one master seed: stream k of seed s is mix64(s + k*GAMMA).
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master + stream * kGamma);
}

// Named stream offsets shared by the benchmark pipeline. Data fluctuations
// (stream C) never touch the response-matrix streams, so regenerating
// pseudo-data cannot change the response.
enum Stream : std::uint64_t {
    kTruthSample = 1,     // A: truth-level event sample
    kResponseTruth = 2,   // B1: independent MC truth for the response
    kResponseDetector = 3,// B2: detector draws for the response MC
    kPseudoData = 4,      // C: Poisson fluctuations of the expected spectrum
    kBootstrap = 5,       // toy resampling
    kAnneal = 6,          // annealer restarts
    kDetector = 7,        // detector draws outside the response MC
};

// Per-distribution sub-master so every distribution runs on disjoint streams.
inline std::uint64_t distribution_seed(std::uint64_t master, std::size_t index) {
    return mix64(master ^ (0x51AFD54E00000001ULL + index));
}

inline std::mt19937_64 engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace qubofold::rng
