#ifndef SVPLAB_COMMANDS_HPP
#define SVPLAB_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "svplab/io.hpp"
#include "svplab/lattice.hpp"
#include "svplab/pretrain.hpp"

// Command implementations behind the CLI, callable from tests. Exit codes:
// 0 success, 1 usage error, 2 computation failure, 3 verification failure.
namespace svplab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitVerification = 3;

std::filesystem::path dataset_filename(const std::filesystem::path& dir, int m);

struct GenDatasetOpts {
    std::vector<int> dims;
    int count = 100;
    std::uint64_t seed = 1;
    GeneratorParams params;
    std::filesystem::path out_dir;
    int jobs = 1;
};
int cmd_gen_dataset(const GenDatasetOpts& opts, std::ostream& log,
                    std::ostream& err);

struct TrainOpts {
    std::filesystem::path dataset_dir;
    std::vector<int> dims;
    int depth = 1;
    MixerKind mixer = MixerKind::Standard;
    CostKind cost_kind = CostKind::C1;
    double dim_fraction = 0.85;
    double instance_fraction = 0.85;
    OptimizerConfig optimizer;
    std::filesystem::path out_file;
    int jobs = 1;
};
int cmd_train(const TrainOpts& opts, std::ostream& log, std::ostream& err);

struct EvaluateOpts {
    std::filesystem::path dataset_dir;
    std::vector<int> dims;
    std::filesystem::path angle_file;
    std::optional<MixerKind> mixer_override;
    std::vector<double> gammas;  // in addition to the always-present gamma=1
    int max_qubits = 22;         // overridable up to the hard guard of 25
    bool std_error = false;      // emit standard error instead of deviation
    std::filesystem::path out_file;
    int jobs = 1;
};
int cmd_evaluate(const EvaluateOpts& opts, std::ostream& log,
                 std::ostream& err);

struct FitOpts {
    std::filesystem::path table_file;
    int fit_m_lo = 0;
    int fit_m_hi = 1 << 30;
    std::filesystem::path out_file;
};
int cmd_fit(const FitOpts& opts, std::ostream& log, std::ostream& err);

struct ApproxOpts {
    std::filesystem::path dataset_dir;
    std::vector<int> dims;
    std::filesystem::path angle_file;
    std::int64_t draws = 5000;
    int max_qubits = 22;
    std::filesystem::path out_file;
    int jobs = 1;
};
int cmd_approx(const ApproxOpts& opts, std::ostream& log, std::ostream& err);

struct BaselineOpts {
    std::filesystem::path dataset_dir;
    std::vector<int> dims;
    int depth = 1;
    MixerKind mixer = MixerKind::Standard;
    OptimizerConfig optimizer;
    int max_dim = 10;  // per-instance optimization gets expensive quickly
    std::filesystem::path out_file;
    int jobs = 1;
};
int cmd_baseline(const BaselineOpts& opts, std::ostream& log,
                 std::ostream& err);

struct VerifyOpts {
    std::vector<std::filesystem::path> dataset_files;
};
int cmd_verify(const VerifyOpts& opts, std::ostream& log, std::ostream& err);

}  // namespace svplab::cli

#endif
