#include "svplab/io.hpp"
#include "svplab/rng.hpp"

#include <cstdio>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace svplab {

using ordered_json = nlohmann::ordered_json;

void atomic_write(const std::filesystem::path& path, const std::string& body) {
    const auto parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << body;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json params_to_json(const GeneratorParams& p) {
    ordered_json j;
    j["q"] = p.q;
    j["lambda1_fixed"] = p.lambda1.fixed;
    j["lambda1_sample_uniform_int"] = p.lambda1.sample_uniform_int;
    j["lambda1_lo"] = p.lambda1.lo;
    j["lambda1_hi"] = p.lambda1.hi;
    j["k2_factor"] = p.k2_factor;
    j["kappa"] = p.kappa;
    j["bits_per_coeff"] = p.bits_per_coeff;
    j["range"] = p.range == CoeffRange::Unsigned ? "unsigned" : "signed";
    j["max_rejections"] = p.max_rejections;
    return j;
}

GeneratorParams params_from_json(const ordered_json& j) {
    GeneratorParams p;
    p.q = j.at("q").get<std::uint64_t>();
    p.lambda1.fixed = j.at("lambda1_fixed").get<double>();
    p.lambda1.sample_uniform_int = j.at("lambda1_sample_uniform_int").get<bool>();
    p.lambda1.lo = j.at("lambda1_lo").get<int>();
    p.lambda1.hi = j.at("lambda1_hi").get<int>();
    p.k2_factor = j.at("k2_factor").get<double>();
    p.kappa = j.at("kappa").get<double>();
    p.bits_per_coeff = j.at("bits_per_coeff").get<int>();
    p.range = j.at("range").get<std::string>() == "signed"
                  ? CoeffRange::Signed
                  : CoeffRange::Unsigned;
    p.max_rejections = j.at("max_rejections").get<int>();
    return p;
}

}  // namespace

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
    ordered_json j;
    j["format_version"] = kDatasetFormatVersion;
    j["dimension"] = ds.dimension;
    j["master_seed"] = ds.master_seed;
    j["generator_params"] = params_to_json(ds.params);
    j["prng_id"] = std::string(kPrngId);
    ordered_json instances = ordered_json::array();
    for (std::size_t i = 0; i < ds.instances.size(); ++i) {
        const auto& inst = ds.instances[i];
        ordered_json ij;
        ij["index"] = i;
        ij["seed"] = inst.seed;
        ij["lambda1"] = inst.lambda1;
        ij["solution"] = std::vector<int>(
            inst.solution.data(), inst.solution.data() + inst.solution.size());
        ij["spectrum"] = std::vector<double>(
            inst.spectrum.data(), inst.spectrum.data() + inst.spectrum.size());
        // Row-major; nlohmann emits shortest round-trip decimals, so the
        // reloaded Gram matrix is bit-identical.
        std::vector<double> gram;
        gram.reserve(static_cast<std::size_t>(inst.dimension) * inst.dimension);
        for (int r = 0; r < inst.dimension; ++r)
            for (int c = 0; c < inst.dimension; ++c)
                gram.push_back(inst.gram(r, c));
        ij["gram"] = gram;
        instances.push_back(std::move(ij));
    }
    j["instances"] = std::move(instances);
    atomic_write(path, j.dump(2) + "\n");
}

Dataset load_dataset(const std::filesystem::path& path) {
    const ordered_json j = ordered_json::parse(read_file(path));
    if (j.at("format_version").get<int>() != kDatasetFormatVersion)
        throw std::runtime_error("unsupported dataset format version in " +
                                 path.string());
    Dataset ds;
    ds.dimension = j.at("dimension").get<int>();
    ds.master_seed = j.at("master_seed").get<std::uint64_t>();
    ds.params = params_from_json(j.at("generator_params"));
    if (j.at("prng_id").get<std::string>() != kPrngId)
        throw std::runtime_error("dataset was generated with an unknown PRNG: " +
                                 j.at("prng_id").get<std::string>());
    const int m = ds.dimension;
    for (const auto& ij : j.at("instances")) {
        LatticeInstance inst;
        inst.dimension = m;
        inst.seed = ij.at("seed").get<std::uint64_t>();
        inst.lambda1 = ij.at("lambda1").get<double>();
        inst.modulus = ds.params.q;
        const auto sol = ij.at("solution").get<std::vector<int>>();
        inst.solution = Eigen::Map<const Eigen::VectorXi>(
            sol.data(), static_cast<Eigen::Index>(sol.size()));
        const auto spec = ij.at("spectrum").get<std::vector<double>>();
        inst.spectrum = Eigen::Map<const Eigen::VectorXd>(
            spec.data(), static_cast<Eigen::Index>(spec.size()));
        const auto gram = ij.at("gram").get<std::vector<double>>();
        if (gram.size() != static_cast<std::size_t>(m) * m)
            throw std::runtime_error("gram matrix size mismatch in " +
                                     path.string());
        inst.gram.resize(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                inst.gram(r, c) = gram[static_cast<std::size_t>(r) * m + c];
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

std::string mixer_name(MixerKind kind) {
    return kind == MixerKind::Standard ? "standard" : "cm";
}

MixerKind parse_mixer(const std::string& name) {
    if (name == "standard") return MixerKind::Standard;
    if (name == "cm") return MixerKind::ControlledMixer;
    throw std::invalid_argument("unknown mixer kind: " + name);
}

std::string cost_kind_name(CostKind kind) {
    switch (kind) {
        case CostKind::C1: return "c1";
        case CostKind::C2: return "c2";
        case CostKind::C1Rand: return "c1_rand";
        case CostKind::C2Rand: return "c2_rand";
    }
    throw std::logic_error("unknown cost kind");
}

CostKind parse_cost_kind(const std::string& name) {
    if (name == "c1") return CostKind::C1;
    if (name == "c2") return CostKind::C2;
    if (name == "c1_rand") return CostKind::C1Rand;
    if (name == "c2_rand") return CostKind::C2Rand;
    throw std::invalid_argument("unknown cost kind: " + name);
}

void save_angles(const AngleFile& af, const std::filesystem::path& path) {
    ordered_json j;
    j["format_version"] = kAngleFormatVersion;
    j["p"] = af.schedule.depth();
    j["mixer_kind"] = mixer_name(af.mixer);
    j["betas"] = af.schedule.betas;
    j["gammas"] = af.schedule.gammas;
    ordered_json training;
    training["dims"] = af.training_dims;
    training["cost_kind"] = cost_kind_name(af.cost_kind);
    training["dim_fraction"] = af.dim_fraction;
    training["instance_fraction"] = af.instance_fraction;
    training["seed"] = af.seed;
    training["a_train"] = af.a_train;
    training["b_train"] = af.b_train;
    training["discard_flag"] = af.discard_flag;
    j["training"] = std::move(training);
    atomic_write(path, j.dump(2) + "\n");
}

AngleFile load_angles(const std::filesystem::path& path) {
    const ordered_json j = ordered_json::parse(read_file(path));
    if (j.at("format_version").get<int>() != kAngleFormatVersion)
        throw std::runtime_error("unsupported angle format version in " +
                                 path.string());
    AngleFile af;
    af.schedule.betas = j.at("betas").get<std::vector<double>>();
    af.schedule.gammas = j.at("gammas").get<std::vector<double>>();
    if (af.schedule.depth() != j.at("p").get<int>() || !af.schedule.valid())
        throw std::runtime_error("inconsistent angle counts in " + path.string());
    af.mixer = parse_mixer(j.at("mixer_kind").get<std::string>());
    const auto& training = j.at("training");
    af.training_dims = training.at("dims").get<std::vector<int>>();
    af.cost_kind = parse_cost_kind(training.at("cost_kind").get<std::string>());
    af.dim_fraction = training.at("dim_fraction").get<double>();
    af.instance_fraction = training.at("instance_fraction").get<double>();
    af.seed = training.at("seed").get<std::uint64_t>();
    af.a_train = training.at("a_train").get<double>();
    af.b_train = training.at("b_train").get<double>();
    af.discard_flag = training.at("discard_flag").get<bool>();
    return af;
}

void save_result_table(const ResultTable& table,
                       const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& line : table.manifest) out << "# " << line << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << "\n";
    }
    atomic_write(path, out.str());
}

ResultTable load_result_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    ResultTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = 1;
            if (start < line.size() && line[start] == ' ') ++start;
            table.manifest.push_back(line.substr(start));
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
            have_header = true;
        } else {
            std::vector<double> row;
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
            if (row.size() != table.columns.size())
                throw std::runtime_error("malformed row in " + path.string());
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

std::vector<std::string> make_manifest(
    const std::string& command,
    const std::map<std::string, std::string>& config,
    const std::vector<std::filesystem::path>& inputs) {
    std::vector<std::string> manifest;
    manifest.push_back("command: " + command);
    manifest.push_back("tool_version: " + std::string(kToolVersion));
    const auto now = std::chrono::system_clock::now();
    manifest.push_back(
        "timestamp_unix: " +
        std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                           now.time_since_epoch())
                           .count()));
    for (const auto& [key, value] : config)
        manifest.push_back("config." + key + ": " + value);
    for (const auto& input : inputs) {
        // FNV-1a over the file bytes; enough to tell inputs apart in a manifest.
        std::uint64_t hash = 0xcbf29ce484222325ULL;
        for (unsigned char byte : read_file(input)) {
            hash ^= byte;
            hash *= 0x100000001b3ULL;
        }
        std::ostringstream digest;
        digest << "input: " << input.string() << " fnv1a64:" << std::hex << hash;
        manifest.push_back(digest.str());
    }
    return manifest;
}

}  // namespace svplab
