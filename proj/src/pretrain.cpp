#include "svplab/pretrain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "svplab/errors.hpp"
#include "svplab/fitkit.hpp"
#include "svplab/nelder_mead.hpp"
#include "svplab/parallel.hpp"
#include "svplab/rng.hpp"

namespace svplab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kBaselineMaxQubits = 20;

AngleSchedule unpack_angles(const std::vector<double>& flat) {
    const std::size_t p = flat.size() / 2;
    AngleSchedule schedule;
    schedule.betas.assign(flat.begin(), flat.begin() + p);
    schedule.gammas.assign(flat.begin() + p, flat.end());
    return schedule;
}

std::vector<std::size_t> sample_without_replacement(std::size_t total,
                                                    std::size_t wanted,
                                                    SplitMix64& rng) {
    std::vector<std::size_t> pool(total);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < wanted; ++i) {
        const std::size_t j = i + rng.uniform_below(total - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(wanted);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<std::pair<double, double>> to_fit_points(
    const std::vector<TrainingPoint>& points) {
    std::vector<std::pair<double, double>> out;
    out.reserve(points.size());
    for (const auto& pt : points)
        out.emplace_back(static_cast<double>(pt.dim), pt.mean_overlap);
    return out;
}

}  // namespace

EncodedDataset encode_dataset(const Dataset& ds, int jobs) {
    EncodedDataset out;
    out.dim = ds.dimension;
    const SearchSpace space = ds.params.search_space(ds.dimension);
    out.encodings.reserve(ds.instances.size());
    for (const auto& inst : ds.instances)
        out.encodings.emplace_back(inst, space);
    (void)jobs;  // encodings are cheap at training sizes
    return out;
}

Subset draw_subset(const std::vector<EncodedDataset>& datasets,
                   double dim_fraction, double instance_fraction,
                   std::uint64_t seed, std::uint64_t counter) {
    if (dim_fraction <= 0.0 || dim_fraction > 1.0 || instance_fraction <= 0.0 ||
        instance_fraction > 1.0)
        throw std::invalid_argument("subset fractions must lie in (0, 1]");
    SplitMix64 rng(derive_seed(seed, counter));
    const std::size_t total_dims = datasets.size();
    // The exponential fit needs two distinct dimensions.
    const std::size_t wanted_dims = std::max<std::size_t>(
        2, static_cast<std::size_t>(
               std::ceil(dim_fraction * static_cast<double>(total_dims))));

    Subset subset;
    subset.dim_positions =
        sample_without_replacement(total_dims, std::min(wanted_dims, total_dims), rng);
    for (std::size_t pos : subset.dim_positions) {
        const std::size_t total = datasets[pos].encodings.size();
        const std::size_t wanted = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(instance_fraction * static_cast<double>(total))));
        subset.instances.push_back(
            sample_without_replacement(total, wanted, rng));
    }
    return subset;
}

std::vector<TrainingPoint> evaluate_angles(
    const std::vector<EncodedDataset>& datasets, const AngleSchedule& angles,
    MixerKind mixer, int jobs, const Subset* subset) {
    const std::size_t num_dims =
        subset ? subset->dim_positions.size() : datasets.size();
    if (num_dims == 0) throw std::invalid_argument("empty dataset selection");

    std::vector<TrainingPoint> points(num_dims);
    for (std::size_t d = 0; d < num_dims; ++d) {
        const std::size_t pos = subset ? subset->dim_positions[d] : d;
        const auto& dataset = datasets[pos];
        const std::size_t count =
            subset ? subset->instances[d].size() : dataset.encodings.size();
        if (count == 0) throw std::invalid_argument("empty instance selection");

        std::vector<double> overlaps(count);
        parallel_for(count, jobs, [&](std::size_t i) {
            const std::size_t idx = subset ? subset->instances[d][i] : i;
            const auto& enc = dataset.encodings[idx];
            const StateVector state = run(enc, angles, mixer);
            overlaps[i] = overlap(state, enc.solution_indices());
        });

        // Ordered reduction: result independent of the parallel schedule.
        double mean = 0.0;
        for (double v : overlaps) mean += v;
        mean /= static_cast<double>(count);
        double var = 0.0;
        for (double v : overlaps) var += (v - mean) * (v - mean);
        var /= static_cast<double>(count);

        points[d] = {dataset.dim, mean, std::sqrt(var), static_cast<int>(count)};
    }
    return points;
}

double cost_c1(const std::vector<TrainingPoint>& points) {
    return fit_exponential(to_fit_points(points)).a;
}

double cost_c2(const std::vector<TrainingPoint>& points) {
    double total = 0.0;
    for (const auto& pt : points) {
        const double d =
            std::pow(2.0, static_cast<double>(pt.dim)) * pt.mean_overlap - 1.0;
        total += d * d;
    }
    return total;
}

namespace {

bool is_randomized(CostKind kind) {
    return kind == CostKind::C1Rand || kind == CostKind::C2Rand;
}

double minimized_cost(CostKind kind, const std::vector<TrainingPoint>& points) {
    switch (kind) {
        case CostKind::C1:
        case CostKind::C1Rand:
            return cost_c1(points);
        case CostKind::C2:
        case CostKind::C2Rand:
            return -cost_c2(points);
    }
    throw std::logic_error("unknown cost kind");
}

}  // namespace

TrainingResult train(const TrainingConfig& config,
                     const std::vector<EncodedDataset>& datasets) {
    if (datasets.size() < 2)
        throw std::invalid_argument("training needs at least 2 dimensions");
    for (int dim : config.dims) {
        const bool covered = std::any_of(
            datasets.begin(), datasets.end(),
            [dim](const EncodedDataset& ds) { return ds.dim == dim; });
        if (!covered)
            throw std::invalid_argument("no dataset for training dimension " +
                                        std::to_string(dim));
    }

    TrainingResult result;
    if (config.depth == 0) {
        const AngleSchedule empty;
        result.final_points =
            evaluate_angles(datasets, empty, config.mixer, config.jobs);
        const auto fit = fit_exponential(to_fit_points(result.final_points));
        result.a_train = fit.a;
        result.b_train = fit.b;
        result.rms_log_residual = fit.rms_log_residual;
        return result;
    }

    const auto& opt = config.optimizer;
    std::vector<std::vector<double>> finals(opt.restarts);
    std::vector<bool> usable(opt.restarts, false);
    int global_eval = 0;

    for (int r = 0; r < opt.restarts; ++r) {
        SplitMix64 init_rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> start(2 * config.depth);
        for (auto& angle : start) angle = init_rng.uniform(0.0, kTwoPi);

        const std::uint64_t subset_seed =
            derive_seed(opt.seed, 0x5eedULL + static_cast<std::uint64_t>(r));
        std::uint64_t counter = 0;
        auto objective = [&](const std::vector<double>& flat) {
            const AngleSchedule schedule = unpack_angles(flat);
            Subset subset;
            const Subset* subset_ptr = nullptr;
            if (is_randomized(config.cost_kind)) {
                subset = draw_subset(datasets, config.dim_fraction,
                                     config.instance_fraction, subset_seed,
                                     counter++);
                subset_ptr = &subset;
            }
            const auto points = evaluate_angles(datasets, schedule, config.mixer,
                                                config.jobs, subset_ptr);
            const double value = minimized_cost(config.cost_kind, points);
            result.history.emplace_back(global_eval++, value);
            return value;
        };

        NelderMeadOptions nm;
        nm.max_evals = opt.max_evals;
        nm.initial_scale = opt.initial_simplex_scale;
        const auto nm_result = nelder_mead(objective, start, nm);
        if (std::isfinite(nm_result.best_value)) {
            finals[r] = nm_result.best_point;
            usable[r] = true;
        }
    }

    // Pick the winner by the deterministic (full dataset) cost.
    const CostKind det_kind =
        config.cost_kind == CostKind::C1Rand
            ? CostKind::C1
            : (config.cost_kind == CostKind::C2Rand ? CostKind::C2
                                                    : config.cost_kind);
    double best_cost = std::numeric_limits<double>::infinity();
    int best_restart = -1;
    std::vector<TrainingPoint> best_points;
    for (int r = 0; r < opt.restarts; ++r) {
        if (!usable[r]) continue;
        try {
            const auto points = evaluate_angles(
                datasets, unpack_angles(finals[r]), config.mixer, config.jobs);
            const double value = minimized_cost(det_kind, points);
            if (value < best_cost) {
                best_cost = value;
                best_restart = r;
                best_points = points;
            }
        } catch (const std::invalid_argument&) {
            // zero-overlap dimension; this restart cannot be scored
        }
    }
    if (best_restart < 0)
        throw TrainingError("all restarts failed to produce a scorable result");

    const AngleSchedule best = unpack_angles(finals[best_restart]);
    result.betas = best.betas;
    result.gammas = best.gammas;
    result.final_points = best_points;
    const auto fit = fit_exponential(to_fit_points(best_points));
    result.a_train = fit.a;
    result.b_train = fit.b;
    result.rms_log_residual = fit.rms_log_residual;
    result.discard_flag = fit.rms_log_residual > config.discard_rms_threshold;
    return result;
}

InstanceOptResult optimize_instance(const ProblemEncoding& encoding, int depth,
                                    MixerKind mixer,
                                    const OptimizerConfig& optimizer) {
    if (encoding.num_qubits() > kBaselineMaxQubits)
        throw SizeLimitError("per-instance baseline limited to " +
                             std::to_string(kBaselineMaxQubits) + " qubits");

    InstanceOptResult out;
    if (depth == 0) {
        const StateVector state = uniform_state(encoding.num_qubits());
        out.expectation = expectation(state, encoding.cost());
        out.overlap = overlap(state, encoding.solution_indices());
        return out;
    }

    auto objective = [&](const std::vector<double>& flat) {
        const StateVector state = run(encoding, unpack_angles(flat), mixer);
        return expectation(state, encoding.cost());
    };

    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_point;
    for (int r = 0; r < optimizer.restarts; ++r) {
        SplitMix64 rng(derive_seed(optimizer.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> start(2 * depth);
        for (auto& angle : start) angle = rng.uniform(0.0, kTwoPi);
        NelderMeadOptions nm;
        nm.max_evals = optimizer.max_evals;
        nm.initial_scale = optimizer.initial_simplex_scale;
        const auto res = nelder_mead(objective, start, nm);
        if (res.best_value < best_value) {
            best_value = res.best_value;
            best_point = res.best_point;
        }
    }
    if (best_point.empty()) throw TrainingError("instance optimization failed");

    out.angles = unpack_angles(best_point);
    const StateVector state = run(encoding, out.angles, mixer);
    out.expectation = best_value;
    out.overlap = overlap(state, encoding.solution_indices());
    return out;
}

}  // namespace svplab
