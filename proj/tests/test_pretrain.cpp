#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "svplab/errors.hpp"
#include "svplab/pretrain.hpp"

using namespace svplab;

namespace {

std::vector<EncodedDataset> make_encoded(const std::vector<int>& dims,
                                         int count, std::uint64_t seed) {
    const GeneratorParams params;
    std::vector<EncodedDataset> out;
    for (const auto& ds : generate_datasets(dims, count, seed, params, 2))
        out.push_back(encode_dataset(ds, 2));
    return out;
}

std::vector<TrainingPoint> synthetic_points(
    const std::vector<std::pair<int, double>>& data) {
    std::vector<TrainingPoint> pts;
    for (const auto& [m, y] : data) pts.push_back({m, y, 0.0, 1});
    return pts;
}

}  // namespace

TEST_CASE("evaluate_angles at p=0 sits exactly on the random-guess line") {
    const auto datasets = make_encoded({4, 5, 6}, 4, 9);
    const auto points =
        evaluate_angles(datasets, AngleSchedule{}, MixerKind::Standard, 2);
    REQUIRE(points.size() == 3);
    for (const auto& pt : points) {
        // For odd m no double squares exactly to 2^-m; 1-ulp slack.
        CHECK(pt.mean_overlap ==
              doctest::Approx(std::exp2(-pt.dim)).epsilon(1e-15));
        CHECK(pt.std_overlap <= 1e-15);
        CHECK(pt.count == 4);
    }
}

TEST_CASE("evaluate_angles with a single instance has zero std") {
    const auto datasets = make_encoded({5}, 1, 13);
    const auto points = evaluate_angles(datasets, AngleSchedule{{0.4}, {0.9}},
                                        MixerKind::ControlledMixer, 1);
    REQUIRE(points.size() == 1);
    CHECK(points[0].std_overlap == 0.0);
    CHECK(points[0].count == 1);
}

TEST_CASE("evaluate_angles matches a per-instance recomputation oracle") {
    const auto datasets = make_encoded({4}, 6, 17);
    const AngleSchedule angles{{1.2}, {0.6}};
    const auto points =
        evaluate_angles(datasets, angles, MixerKind::Standard, 2);
    REQUIRE(points.size() == 1);
    double sum = 0.0;
    std::vector<double> per_instance;
    for (const auto& enc : datasets[0].encodings) {
        const auto state = run(enc, angles, MixerKind::Standard);
        per_instance.push_back(overlap(state, enc.solution_indices()));
        sum += per_instance.back();
    }
    const double mean = sum / 6.0;
    CHECK(points[0].mean_overlap == doctest::Approx(mean).epsilon(1e-13));
    double var = 0.0;
    for (double o : per_instance) var += (o - mean) * (o - mean);
    CHECK(points[0].std_overlap ==
          doctest::Approx(std::sqrt(var / 6.0)).epsilon(1e-12));
}

TEST_CASE("cost_c1 exact fits") {
    CHECK(cost_c1(synthetic_points({{4, std::exp2(-0.5 * 4 + 1)},
                                    {6, std::exp2(-0.5 * 6 + 1)},
                                    {8, std::exp2(-0.5 * 8 + 1)}})) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cost_c1(synthetic_points({{4, std::exp2(-4)},
                                    {7, std::exp2(-7)},
                                    {10, std::exp2(-10)}})) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cost_c1 matches the regression oracle on perturbed points") {
    SplitMix64 rng(31);
    std::vector<std::pair<int, double>> data;
    std::vector<double> xs, ys;
    for (int m = 4; m <= 10; ++m) {
        const double y = std::exp2(-0.7 * m + rng.uniform(-0.4, 0.4));
        data.push_back({m, y});
        xs.push_back(m);
        ys.push_back(std::log2(y));
    }
    const auto reg = oracles::linreg(xs, ys);
    CHECK(cost_c1(synthetic_points(data)) ==
          doctest::Approx(-reg.slope).epsilon(1e-10));
}

TEST_CASE("cost_c2 values") {
    CHECK(cost_c2(synthetic_points({{4, std::exp2(-4)},
                                    {5, std::exp2(-5)},
                                    {6, std::exp2(-6)}})) ==
          doctest::Approx(0.0));
    CHECK(cost_c2(synthetic_points({{4, std::exp2(-3)},
                                    {5, std::exp2(-4)}})) ==
          doctest::Approx(2.0).epsilon(1e-12));

    SplitMix64 rng(37);
    std::vector<std::pair<int, double>> data;
    double expected = 0.0;
    for (int m = 4; m <= 9; ++m) {
        const double y = rng.uniform(0.0, 1.0);
        data.push_back({m, y});
        const double d = std::exp2(m) * y - 1.0;
        expected += d * d;
    }
    CHECK(cost_c2(synthetic_points(data)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("draw_subset sizes, bounds, and determinism") {
    const auto datasets = make_encoded({4, 5, 6, 7, 8, 9, 10}, 5, 43);
    const auto sub = draw_subset(datasets, 0.85, 0.85, 7, 3);
    CHECK(sub.dim_positions.size() == 6);  // ceil(0.85 * 7)
    REQUIRE(sub.instances.size() == 6);
    for (std::size_t d = 0; d < sub.instances.size(); ++d) {
        CHECK(sub.instances[d].size() == 5);  // ceil(0.85 * 5)
        for (auto idx : sub.instances[d]) CHECK(idx < 5);
        CHECK(sub.dim_positions[d] < datasets.size());
    }

    const auto again = draw_subset(datasets, 0.85, 0.85, 7, 3);
    CHECK(again.dim_positions == sub.dim_positions);
    CHECK(again.instances == sub.instances);
    const auto other = draw_subset(datasets, 0.85, 0.85, 7, 4);
    CHECK((other.dim_positions != sub.dim_positions ||
           other.instances != sub.instances));
}

TEST_CASE("draw_subset forces at least two dimensions") {
    const auto datasets = make_encoded({4, 5, 6}, 2, 47);
    const auto sub = draw_subset(datasets, 0.1, 1.0, 1, 0);
    CHECK(sub.dim_positions.size() == 2);
}

TEST_CASE("full-fraction subset reproduces the deterministic cost") {
    const auto datasets = make_encoded({4, 5}, 3, 53);
    const AngleSchedule angles{{0.8}, {1.4}};
    const auto sub = draw_subset(datasets, 1.0, 1.0, 5, 0);
    const auto with_subset = evaluate_angles(
        datasets, angles, MixerKind::ControlledMixer, 1, &sub);
    const auto plain =
        evaluate_angles(datasets, angles, MixerKind::ControlledMixer, 1);
    REQUIRE(with_subset.size() == plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        CHECK(with_subset[i].dim == plain[i].dim);
        CHECK(with_subset[i].mean_overlap ==
              doctest::Approx(plain[i].mean_overlap).epsilon(1e-14));
    }
}

TEST_CASE("train at p=0 degenerates to the random-guess line") {
    const auto datasets = make_encoded({4, 5, 6}, 3, 59);
    TrainingConfig config;
    config.dims = {4, 5, 6};
    config.depth = 0;
    config.jobs = 2;
    const auto result = train(config, datasets);
    CHECK(result.betas.empty());
    CHECK(result.gammas.empty());
    CHECK(result.a_train == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(result.discard_flag);
}

TEST_CASE("train is deterministic for a fixed seed") {
    const auto datasets = make_encoded({4, 5}, 4, 61);
    TrainingConfig config;
    config.dims = {4, 5};
    config.depth = 1;
    config.cost_kind = CostKind::C1;
    config.optimizer.max_evals = 80;
    config.optimizer.restarts = 2;
    config.optimizer.seed = 5;
    config.jobs = 2;
    const auto a = train(config, datasets);
    const auto b = train(config, datasets);
    CHECK(a.betas == b.betas);
    CHECK(a.gammas == b.gammas);
    CHECK(a.a_train == b.a_train);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].first == b.history[i].first);
        CHECK(a.history[i].second == b.history[i].second);
        CHECK(std::isfinite(a.history[i].second));
    }
}

TEST_CASE("train with c1 beats the random-guess exponent") {
    const auto datasets = make_encoded({4, 5, 6}, 10, 67);
    TrainingConfig config;
    config.dims = {4, 5, 6};
    config.depth = 1;
    config.mixer = MixerKind::ControlledMixer;
    config.cost_kind = CostKind::C1;
    config.optimizer.max_evals = 400;
    config.optimizer.restarts = 3;
    config.optimizer.seed = 2;
    config.jobs = 2;
    const auto result = train(config, datasets);
    CHECK(result.a_train < 1.0);
    REQUIRE(result.final_points.size() == 3);
    for (const auto& pt : result.final_points)
        CHECK(pt.mean_overlap > 0.0);
}

TEST_CASE("randomized cost trace is reproducible") {
    const auto datasets = make_encoded({4, 5, 6}, 5, 71);
    TrainingConfig config;
    config.dims = {4, 5, 6};
    config.depth = 1;
    config.cost_kind = CostKind::C2Rand;
    config.dim_fraction = 0.85;
    config.instance_fraction = 0.85;
    config.optimizer.max_evals = 60;
    config.optimizer.restarts = 2;
    config.optimizer.seed = 77;
    config.jobs = 1;
    const auto a = train(config, datasets);
    const auto b = train(config, datasets);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i)
        CHECK(a.history[i].second == b.history[i].second);
}

TEST_CASE("optimize_instance at p=0 reports the mean cost") {
    GeneratorParams params;
    const auto enc = encode(generate_instance(4, params, 73));
    OptimizerConfig opt;
    const auto result =
        optimize_instance(enc, 0, MixerKind::Standard, opt);
    double mean = 0.0;
    for (double c : enc.cost()) mean += c;
    mean /= static_cast<double>(enc.cost().size());
    CHECK(result.expectation == doctest::Approx(mean).epsilon(1e-12));
    CHECK(result.overlap == doctest::Approx(std::exp2(-4)).epsilon(1e-12));
}

TEST_CASE("optimize_instance p=1 does not lose to the uniform state") {
    LatticeInstance inst;
    inst.dimension = 2;
    inst.gram = Eigen::MatrixXd::Identity(2, 2);
    inst.solution = Eigen::VectorXi::Zero(2);
    inst.solution[0] = 1;
    inst.lambda1 = 1.0;
    const auto enc = encode(inst);
    OptimizerConfig opt;
    opt.max_evals = 300;
    opt.restarts = 3;
    opt.seed = 3;
    const auto result = optimize_instance(enc, 1, MixerKind::Standard, opt);
    const auto uniform = uniform_state(2);
    CHECK(result.expectation <=
          expectation(uniform, enc.cost()) + 1e-12);
}

TEST_CASE("optimize_instance p=2 reaches at least random guess overlap") {
    GeneratorParams params;
    const auto enc = encode(generate_instance(4, params, 79));
    OptimizerConfig opt;
    opt.max_evals = 400;
    opt.restarts = 4;
    opt.seed = 9;
    const auto result =
        optimize_instance(enc, 2, MixerKind::ControlledMixer, opt);
    CHECK(result.overlap >= std::exp2(-4));
    CHECK(result.angles.depth() == 2);
}
