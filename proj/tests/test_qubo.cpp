#include <doctest.h>

#include <cmath>
#include <random>

#include "qubofold/qubo.hpp"
#include "test_helpers.hpp"

using namespace qubofold;
using testutil::hist_of;

namespace {

// Independent oracle for the residual form, plain loops only.
double direct_residual(const ResponseMatrix& r, const std::vector<double>& n,
                       double lambda, const std::vector<long long>& z) {
    const std::size_t m = n.size();
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double fold_i = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            fold_i += r.entry(i, j) * static_cast<double>(z[j]);
        }
        const double d = fold_i - n[i];
        total += d * d;
    }
    if (lambda > 0.0) {
        for (std::size_t i = 0; i + 2 < m; ++i) {
            const double c = -static_cast<double>(z[i]) +
                             2.0 * static_cast<double>(z[i + 1]) -
                             static_cast<double>(z[i + 2]);
            total += lambda * c * c;
        }
    }
    return total;
}

// All bitstrings of length n in counting order.
std::vector<std::uint8_t> bits_of(std::uint64_t v, std::size_t n) {
    std::vector<std::uint8_t> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = static_cast<std::uint8_t>((v >> k) & 1);
    return x;
}

}  // namespace

TEST_CASE("build_objective identity example") {
    const auto r = ResponseMatrix::identity(2);
    const Histogram n = hist_of({3.0, 4.0});
    const auto obj = build_objective(r, n, testutil::zeros_like(n), 0.0);
    CHECK(obj.a(0) == doctest::Approx(-6.0));
    CHECK(obj.a(1) == doctest::Approx(-8.0));
    CHECK(obj.B.isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-14));
    CHECK(obj.offset == doctest::Approx(25.0));

    // Perfect fit: compact value cancels the offset exactly.
    CHECK(objective_value(obj, std::vector<long long>{3, 4}) ==
          doctest::Approx(-25.0));
    CHECK(residual_value(obj, {3, 4}) == doctest::Approx(0.0));
    CHECK(objective_value(obj, std::vector<long long>{0, 0}) == 0.0);
}

TEST_CASE("build_objective without regularization is R^T R") {
    std::mt19937_64 gen(3);
    const auto r = testutil::random_response(gen, 4);
    const Histogram n = hist_of({5.0, 2.0, 8.0, 1.0});
    const auto obj = build_objective(r, n, testutil::zeros_like(n), 0.0);
    CHECK(obj.B.isApprox(r.matrix().transpose() * r.matrix(), 1e-12));
    CHECK_THROWS_AS(build_objective(r, n, testutil::zeros_like(n), -0.1),
                    std::invalid_argument);
}

TEST_CASE("objective matrix is symmetric PSD and matches the residual form") {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<long long> count(0, 30);
    for (double lambda : {0.0, 0.1, 1.0}) {
        const std::size_t m = 4;
        const auto r = testutil::random_response(gen, m);
        std::vector<double> counts(m);
        for (double& c : counts) c = static_cast<double>(count(gen));
        const Histogram n = hist_of(counts);
        const auto obj = build_objective(r, n, testutil::zeros_like(n), lambda);

        CHECK((obj.B - obj.B.transpose()).lpNorm<Eigen::Infinity>() <= 1e-12);
        const Eigen::VectorXd evs =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(obj.B).eigenvalues();
        CHECK(evs.minCoeff() >= -1e-9 * std::max(evs.maxCoeff(), 1.0));

        for (int trial = 0; trial < 25; ++trial) {
            std::vector<long long> z(m);
            for (auto& v : z) v = count(gen);
            const double via_compact = residual_value(obj, z);
            const double direct = direct_residual(r, counts, lambda, z);
            CHECK(via_compact ==
                  doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("estimate_bounds formula") {
    Eigen::VectorXd eps(3);
    eps << 0.5, 1.0, 1.0;
    const auto bounds = estimate_bounds(hist_of({100.0, 0.0, 5.0}), eps, 2.0);
    CHECK(bounds.z_max[0] == 400);
    CHECK(bounds.z_max[1] == 16);  // floor keeps empty bins open
    CHECK(bounds.z_max[2] == 16);

    const auto tight = estimate_bounds(hist_of({100.0, 0.0, 5.0}), eps, 1.0);
    CHECK(tight.z_max[0] == 200);

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
    const auto unit = estimate_bounds(hist_of({40.0, 3.0}), ones, 1.0);
    CHECK(unit.z_max[0] == 40);
    CHECK(unit.z_max[1] == 16);

    Eigen::VectorXd zero_eff(3);
    zero_eff << 0.5, 0.0, 1.0;
    CHECK_THROWS_AS(estimate_bounds(hist_of({1.0, 1.0, 1.0}), zero_eff, 2.0),
                    std::invalid_argument);
}

TEST_CASE("encode bit lengths cover the bounds") {
    const auto r = ResponseMatrix::identity(3);
    const Histogram n = hist_of({1.0, 1.0, 1.0});
    const auto obj = build_objective(r, n, testutil::zeros_like(n), 0.0);

    const auto model = encode(obj, BoundsVector{{5, 1, 8}});
    CHECK(model.bits_for_bin(0) == 3);  // range [0,7] covers [0,5]
    CHECK(model.precision[0] == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(model.bits_for_bin(1) == 1);
    CHECK(model.precision[1] == std::vector<double>{1.0});
    CHECK(model.bits_for_bin(2) == 4);  // 8 is a power of two: needs 4 bits
    CHECK(model.num_bits() == 8);
    CHECK(model.bit_offsets == std::vector<std::size_t>{0, 3, 4});

    CHECK_THROWS_AS(encode(obj, BoundsVector{{5, 1, 8}}, 7), capacity_error);
    CHECK_THROWS_AS(encode(obj, BoundsVector{{5, 1}}), std::invalid_argument);
}

TEST_CASE("bit counts scale linearly in bins and logarithmically in bounds") {
    for (std::size_t m : {3UL, 6UL, 12UL, 24UL}) {
        const auto r = ResponseMatrix::identity(m);
        const Histogram n = hist_of(std::vector<double>(m, 1.0));
        const auto obj = build_objective(r, n, testutil::zeros_like(n), 0.0);
        const auto model = encode(obj, BoundsVector{std::vector<long long>(m, 100)});
        CHECK(model.num_bits() == m * 7);  // ceil(log2(101)) = 7 per bin
        const double cap = static_cast<double>(m) * (1.0 + std::log2(101.0));
        CHECK(static_cast<double>(model.num_bits()) <= cap);
    }
}

TEST_CASE("decode round-trips and clamps slack patterns") {
    const auto r = ResponseMatrix::identity(2);
    const Histogram n = hist_of({1.0, 1.0});
    const auto obj = build_objective(r, n, testutil::zeros_like(n), 0.0);
    const auto model = encode(obj, BoundsVector{{5, 3}});

    for (long long z0 = 0; z0 <= 5; ++z0) {
        for (long long z1 = 0; z1 <= 3; ++z1) {
            const auto x = encode_point(model, {z0, z1});
            const auto dec = decode(model, x);
            CHECK_FALSE(dec.clamped);
            CHECK(dec.z == std::vector<long long>{z0, z1});
        }
    }

    // Pattern 7 in bin 0 exceeds z_max = 5: clamped and flagged.
    auto x = encode_point(model, {5, 0});
    x[1] = 1;  // 5 = 101b -> set bit 1 -> 111b = 7
    const auto dec = decode(model, x);
    CHECK(dec.clamped);
    CHECK(dec.z[0] == 5);
    CHECK(decode_unclamped(model, x)[0] == 7);

    CHECK_THROWS_AS(decode(model, std::vector<std::uint8_t>(3, 0)),
                    std::invalid_argument);

    const auto zeros = decode(model, std::vector<std::uint8_t>(model.num_bits(), 0));
    CHECK(zeros.z == std::vector<long long>{0, 0});
}

TEST_CASE("two-bin exhaustive equivalence of the binary lowering") {
    Eigen::MatrixXd entries(2, 2);
    entries << 0.6, 0.2, 0.3, 0.7;
    const ResponseMatrix r(entries);
    const Histogram n = hist_of({3.0, 2.0});
    const auto obj = build_objective(r, n, testutil::zeros_like(n), 0.0);
    const auto model = encode(obj, BoundsVector{{3, 3}});
    REQUIRE(model.num_bits() == 4);

    for (std::uint64_t v = 0; v < 16; ++v) {
        const auto x = bits_of(v, 4);
        const auto z = decode_unclamped(model, x);
        const double direct = direct_residual(r, n.counts(), 0.0, z);
        CHECK(model.energy(x) + model.offset ==
              doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("random-instance equivalence of compact, binary and residual forms") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<std::size_t> msize(3, 4);
    std::uniform_int_distribution<long long> zmax(1, 7);
    std::uniform_int_distribution<long long> count(0, 12);
    const double lambdas[] = {0.0, 0.1, 1.0};

    for (int inst = 0; inst < 25; ++inst) {
        const std::size_t m = msize(gen);
        const double lambda = lambdas[inst % 3];
        const auto r = testutil::random_response(gen, m);
        std::vector<double> counts(m);
        for (double& c : counts) c = static_cast<double>(count(gen));
        const Histogram n = hist_of(counts);
        const auto obj = build_objective(r, n, testutil::zeros_like(n), lambda);

        BoundsVector bounds;
        for (std::size_t i = 0; i < m; ++i) bounds.z_max.push_back(zmax(gen));
        const auto model = encode(obj, bounds);

        const std::uint64_t total = 1ULL << model.num_bits();
        for (std::uint64_t v = 0; v < total; ++v) {
            const auto x = bits_of(v, model.num_bits());
            const auto z = decode_unclamped(model, x);
            const double direct = direct_residual(r, counts, lambda, z);
            const double via_qubo = model.energy(x) + model.offset;
            CHECK(std::abs(via_qubo - direct) <= 1e-9 * (1.0 + std::abs(direct)));
        }
    }
}
