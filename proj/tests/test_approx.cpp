#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "svplab/approx.hpp"
#include "svplab/lattice.hpp"

using namespace svplab;

namespace {

ProblemEncoding identity_encoding(int m) {
    LatticeInstance inst;
    inst.dimension = m;
    inst.gram = Eigen::MatrixXd::Identity(m, m);
    inst.solution = Eigen::VectorXi::Zero(m);
    inst.solution[0] = 1;
    inst.lambda1 = 1.0;
    return encode(inst);
}

LengthDistribution random_distribution(int classes, std::uint64_t seed) {
    SplitMix64 rng(seed);
    LengthDistribution dist;
    dist.lengths.push_back(0.0);
    double len = 0.0;
    for (int i = 1; i < classes; ++i)
        dist.lengths.push_back(len += rng.uniform(0.2, 2.0));
    double total = 0.0;
    for (int i = 0; i < classes; ++i) {
        dist.probs.push_back(rng.uniform(0.01, 1.0));
        total += dist.probs.back();
    }
    for (auto& p : dist.probs) p /= total;
    return dist;
}

}  // namespace

TEST_CASE("length_distribution of the uniform state on identity m=2") {
    const auto enc = identity_encoding(2);
    const auto dist = length_distribution(uniform_state(2), enc);
    REQUIRE(dist.lengths.size() == 3);
    CHECK(dist.lengths[0] == 0.0);
    CHECK(dist.probs[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(dist.lengths[1] == doctest::Approx(1.0));
    CHECK(dist.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.lengths[2] == doctest::Approx(std::sqrt(2.0)));
    CHECK(dist.probs[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("length_distribution of a concentrated state") {
    const auto enc = identity_encoding(3);
    StateVector state{3, std::vector<std::complex<double>>(8)};
    state.amps[enc.solution_indices()[0]] = 1.0;
    const auto dist = length_distribution(state, enc);
    CHECK(dist.probs[1] == doctest::Approx(1.0));
    double total = 0.0;
    for (double p : dist.probs) total += p;
    CHECK(std::abs(total - 1.0) <= 1e-10);
}

TEST_CASE("length_distribution matches per-index resummation") {
    GeneratorParams params;
    const auto enc = encode(generate_instance(5, params, 19));
    const auto state = oracles::random_state(5, 20);
    const auto dist = length_distribution(state, enc);
    const auto& classes = enc.length_classes();
    REQUIRE(dist.probs.size() == classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        double p = 0.0;
        for (auto idx : classes[i].members) p += std::norm(state.amps[idx]);
        CHECK(dist.probs[i] == doctest::Approx(p).epsilon(1e-12));
        CHECK(dist.lengths[i] == classes[i].length);
    }
}

TEST_CASE("success_prob_gamma endpoints") {
    const auto enc = identity_encoding(2);
    const auto state = uniform_state(2);
    CHECK(success_prob_gamma(state, enc, 1.0) ==
          doctest::Approx(overlap(state, enc.solution_indices()))
              .epsilon(1e-12));
    const auto dist = length_distribution(state, enc);
    CHECK(success_prob_gamma(state, enc, 10.0) ==
          doctest::Approx(1.0 - dist.probs[0]).epsilon(1e-12));
}

TEST_CASE("success_prob_gamma matches a brute-force filter on m=8") {
    GeneratorParams params;
    const auto enc = encode(generate_instance(8, params, 23));
    const auto state = run(enc, AngleSchedule{{0.7, 1.1}, {0.2, 0.9}},
                           MixerKind::ControlledMixer);
    const double gamma = 2.0;
    double expected = 0.0;
    const double bound2 =
        gamma * gamma * enc.lambda1_space() * enc.lambda1_space();
    for (std::uint32_t x = 0; x < enc.cost().size(); ++x)
        if (x != enc.zero_index() && enc.cost()[x] <= bound2 * (1.0 + 1e-12))
            expected += std::norm(state.amps[x]);
    CHECK(success_prob_gamma(state, enc, gamma) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("success_prob_gamma is nondecreasing in gamma") {
    GeneratorParams params;
    const auto enc = encode(generate_instance(6, params, 29));
    const auto state = run(enc, AngleSchedule{{1.9}, {0.4}},
                           MixerKind::Standard);
    double prev = 0.0;
    for (double gamma = 1.0; gamma <= 12.0; gamma += 0.5) {
        const double cur = success_prob_gamma(state, enc, gamma);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
}

TEST_CASE("expected_min_length collapses at k=1") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto dist = random_distribution(5, seed);
        const auto result = expected_min_length(dist, 1);
        double expected = 0.0;
        for (std::size_t i = 1; i < dist.lengths.size(); ++i)
            expected += dist.lengths[i] * dist.probs[i];
        CHECK(result.expected_length ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(result.failure_prob ==
              doctest::Approx(dist.probs[0]).epsilon(1e-12));
    }
}

TEST_CASE("expected_min_length with all mass on lambda1") {
    LengthDistribution dist;
    dist.lengths = {0.0, 1.5};
    dist.probs = {0.0, 1.0};
    for (std::int64_t k : {1, 7, 5000}) {
        const auto result = expected_min_length(dist, k);
        CHECK(result.expected_length == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(result.failure_prob == 0.0);
    }
}

TEST_CASE("expected_min_length matches the Monte-Carlo oracle at k=3") {
    LengthDistribution dist;
    dist.lengths = {0.0, 1.0, 2.0};
    dist.probs = {0.1, 0.3, 0.6};
    const auto exact = expected_min_length(dist, 3);
    const auto mc = oracles::mc_min_length(dist, 3, 10'000'000, 1234);
    CHECK(std::abs(exact.expected_length - mc.mean) <= 3.0 * mc.std_error);
    CHECK(exact.failure_prob == doctest::Approx(0.001).epsilon(1e-12));
}

TEST_CASE("expected_min_length matches Monte-Carlo on random distributions") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        const auto dist = random_distribution(4 + seed % 3, seed);
        for (std::int64_t k : {2, 5, 20}) {
            const auto exact = expected_min_length(dist, k);
            const auto mc =
                oracles::mc_min_length(dist, k, 300'000, seed * 7 + k);
            CHECK(std::abs(exact.expected_length - mc.mean) <=
                  3.0 * mc.std_error);
        }
    }
}

TEST_CASE("expected_min_length is nonincreasing in k") {
    // Monotonicity holds in the regime the formula is used in: the zero
    // class carries only a residual probability (about 2^-n for CM states).
    for (std::uint64_t seed : {5u, 6u}) {
        auto dist = random_distribution(6, seed);
        const double shift = dist.probs[0] - 0.005;
        dist.probs[0] = 0.005;
        dist.probs[1] += shift;
        double prev = std::numeric_limits<double>::infinity();
        for (std::int64_t k = 1; k <= 50; ++k) {
            const double cur = expected_min_length(dist, k).expected_length;
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("expected_min_length converges to the shortest positive class") {
    const auto dist = random_distribution(5, 9);
    const auto result = expected_min_length(dist, 1'000'000);
    CHECK(result.expected_length ==
          doctest::Approx(dist.lengths[1]).epsilon(1e-6));
    CHECK(result.failure_prob == 0.0);
}

TEST_CASE("expected_min_length rejects k < 1") {
    const auto dist = random_distribution(4, 2);
    CHECK_THROWS_AS(expected_min_length(dist, 0), std::invalid_argument);
}

TEST_CASE("approximation_factor of a solution-concentrated state") {
    const auto enc = identity_encoding(3);
    StateVector state{3, std::vector<std::complex<double>>(8)};
    state.amps[enc.solution_indices()[0]] = 1.0;
    const auto report = approximation_factor(state, enc);
    CHECK(report.approx_factor == 1.0);
    CHECK(report.failure_prob == 0.0);
    CHECK(report.k == 5000);
}

TEST_CASE("approximation_factor of the uniform state matches Monte-Carlo") {
    const auto enc = identity_encoding(2);
    const auto state = uniform_state(2);
    const auto report = approximation_factor(state, enc, 5000);
    const auto dist = length_distribution(state, enc);
    const auto mc = oracles::mc_min_length(dist, 5000, 200'000, 77);
    CHECK(std::abs(report.expected_length - mc.mean) <= 3.0 * mc.std_error);
    CHECK(report.approx_factor >= 1.0 - 1e-12);
}

TEST_CASE("approximation_factor is never below 1") {
    GeneratorParams params;
    for (std::uint64_t seed : {31u, 37u}) {
        const auto enc = encode(generate_instance(5, params, seed));
        const auto state = run(enc, AngleSchedule{{0.5}, {1.3}},
                               MixerKind::ControlledMixer);
        for (std::int64_t k : {1, 50, 5000}) {
            const auto report = approximation_factor(state, enc, k);
            CHECK(report.approx_factor >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("reference_curves values") {
    auto [rg, grover] = reference_curves(10, 1.0);
    CHECK(rg == doctest::Approx(std::exp2(-10)).epsilon(1e-15));
    CHECK(grover == doctest::Approx(std::exp2(-5)).epsilon(1e-15));

    auto full = reference_curves(6, 64.0);
    CHECK(full.random_guess == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(full.grover == doctest::Approx(1.0).epsilon(1e-15));

    auto mid = reference_curves(20, 4.0);
    CHECK(mid.random_guess == doctest::Approx(std::exp2(-18)).epsilon(1e-15));
    CHECK(mid.grover == doctest::Approx(std::exp2(-9)).epsilon(1e-15));

    CHECK_THROWS_AS(reference_curves(4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(reference_curves(4, 17.0), std::invalid_argument);
}
