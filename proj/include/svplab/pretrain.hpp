#ifndef SVPLAB_PRETRAIN_HPP
#define SVPLAB_PRETRAIN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "svplab/encoding.hpp"
#include "svplab/lattice.hpp"
#include "svplab/statevector.hpp"

namespace svplab {

// Mean solution overlap of fixed-angle (CM-)QAOA across one dimension's
// instances; the (y_m, m) pair the exponential fit consumes.
struct TrainingPoint {
    int dim = 0;
    double mean_overlap = 0.0;
    double std_overlap = 0.0;
    int count = 0;
};

struct EncodedDataset {
    int dim = 0;
    std::vector<ProblemEncoding> encodings;
};

EncodedDataset encode_dataset(const Dataset& ds, int jobs = 1);

enum class CostKind { C1, C2, C1Rand, C2Rand };

struct OptimizerConfig {
    int max_evals = 2000;       // per restart
    int restarts = 4;
    double initial_simplex_scale = 0.5;
    std::uint64_t seed = 1;
};

struct TrainingConfig {
    std::vector<int> dims;
    int depth = 1;
    MixerKind mixer = MixerKind::Standard;
    CostKind cost_kind = CostKind::C1;
    double dim_fraction = 0.85;       // randomized variants only
    double instance_fraction = 0.85;
    OptimizerConfig optimizer;
    double discard_rms_threshold = 0.5;  // log2-domain RMS residual
    int jobs = 1;
};

struct TrainingResult {
    std::vector<double> betas;
    std::vector<double> gammas;
    double a_train = 0.0;
    double b_train = 0.0;
    double rms_log_residual = 0.0;
    std::vector<std::pair<int, double>> history;  // (eval index, cost)
    bool discard_flag = false;
    std::vector<TrainingPoint> final_points;      // deterministic, final angles
};

// A per-evaluation draw of training dimensions and instances.
struct Subset {
    std::vector<std::size_t> dim_positions;           // into the dataset list
    std::vector<std::vector<std::size_t>> instances;  // per chosen dimension
};

Subset draw_subset(const std::vector<EncodedDataset>& datasets,
                   double dim_fraction, double instance_fraction,
                   std::uint64_t seed, std::uint64_t counter);

std::vector<TrainingPoint> evaluate_angles(
    const std::vector<EncodedDataset>& datasets, const AngleSchedule& angles,
    MixerKind mixer, int jobs = 1, const Subset* subset = nullptr);

// Appendix-style training costs. c1 is the fitted decay exponent a (lower is
// better); c2 is the normalised squared distance from the random-guess line
// (higher is better, minimized as its negation by the trainer).
double cost_c1(const std::vector<TrainingPoint>& points);
double cost_c2(const std::vector<TrainingPoint>& points);

TrainingResult train(const TrainingConfig& config,
                     const std::vector<EncodedDataset>& datasets);

// Per-instance optimized (CM-)QAOA baseline: minimizes the energy
// expectation over 2p angles with multistart.
struct InstanceOptResult {
    AngleSchedule angles;
    double expectation = 0.0;
    double overlap = 0.0;
};

InstanceOptResult optimize_instance(const ProblemEncoding& encoding, int depth,
                                    MixerKind mixer,
                                    const OptimizerConfig& optimizer);

}  // namespace svplab

#endif
