#ifndef SVPLAB_IO_HPP
#define SVPLAB_IO_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "svplab/lattice.hpp"
#include "svplab/pretrain.hpp"
#include "svplab/statevector.hpp"

namespace svplab {

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kAngleFormatVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

// All writers go through write-temp-then-rename so a crashed run never
// leaves a partial file behind.
void atomic_write(const std::filesystem::path& path, const std::string& body);

void save_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

struct AngleFile {
    AngleSchedule schedule;
    MixerKind mixer = MixerKind::Standard;
    std::vector<int> training_dims;
    CostKind cost_kind = CostKind::C1;
    double dim_fraction = 1.0;
    double instance_fraction = 1.0;
    std::uint64_t seed = 0;
    double a_train = 0.0;
    double b_train = 0.0;
    bool discard_flag = false;
};

void save_angles(const AngleFile& af, const std::filesystem::path& path);
AngleFile load_angles(const std::filesystem::path& path);

// Plot-ready table: '#'-prefixed manifest block, one header line, CSV rows
// with 17 significant digits.
struct ResultTable {
    std::vector<std::string> manifest;  // without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void save_result_table(const ResultTable& table,
                       const std::filesystem::path& path);
ResultTable load_result_table(const std::filesystem::path& path);

std::string format_double(double v);  // 17 significant digits

// Manifest helpers: command name, effective configuration, input digests.
std::vector<std::string> make_manifest(
    const std::string& command,
    const std::map<std::string, std::string>& config,
    const std::vector<std::filesystem::path>& inputs);

std::string mixer_name(MixerKind kind);
MixerKind parse_mixer(const std::string& name);
std::string cost_kind_name(CostKind kind);
CostKind parse_cost_kind(const std::string& name);

}  // namespace svplab

#endif
