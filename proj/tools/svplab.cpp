#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "svplab/commands.hpp"
#include "svplab/parallel.hpp"

namespace {

using namespace svplab;
using namespace svplab::cli;

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("SVPLAB_OUT_DIR")) return env;
    return ".";
}

std::vector<int> expand_dims(const std::string& spec) {
    // Accepts "4,5,6" and "4..10" (inclusive), or a mix.
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            dims.push_back(std::stoi(part));
        } else {
            const int lo = std::stoi(part.substr(0, dots));
            const int hi = std::stoi(part.substr(dots + 2));
            for (int m = lo; m <= hi; ++m) dims.push_back(m);
        }
    }
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-angle (CM-)QAOA laboratory for planted SVP instances"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a config file");

    int jobs = default_jobs();
    app.add_option("--jobs", jobs, "Worker threads")->capture_default_str();

    const auto out_dir = default_out_dir();

    // gen-dataset
    GenDatasetOpts gen;
    gen.out_dir = out_dir;
    std::string gen_dims = "4..10";
    auto* gen_cmd =
        app.add_subcommand("gen-dataset", "Generate verified SVP datasets");
    gen_cmd->add_option("--dims", gen_dims, "Dimensions, e.g. 4..10 or 4,6,8")
        ->capture_default_str();
    gen_cmd->add_option("--count", gen.count, "Instances per dimension")
        ->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
    gen_cmd->add_option("--q", gen.params.q, "Prime sampling modulus")
        ->capture_default_str();
    gen_cmd->add_option("--lambda1", gen.params.lambda1.fixed,
                        "Planted shortest length")
        ->capture_default_str();
    gen_cmd->add_option("--k2-factor", gen.params.k2_factor,
                        "Second eigenvalue factor (> 1)")
        ->capture_default_str();
    gen_cmd->add_option("--kappa", gen.params.kappa,
                        "Upper sampling bound factor for k3..km")
        ->capture_default_str();
    gen_cmd->add_option("--bits", gen.params.bits_per_coeff,
                        "Bits per coefficient")
        ->capture_default_str();
    gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")
        ->capture_default_str();

    // train
    TrainOpts train_opts;
    train_opts.dataset_dir = out_dir;
    std::string train_dims = "4..10";
    std::string train_mixer = "standard";
    std::string train_cost = "c1";
    auto* train_cmd =
        app.add_subcommand("train", "Pretrain fixed angles on small dimensions");
    train_cmd->add_option("--dataset-dir", train_opts.dataset_dir,
                          "Directory with dataset files")
        ->capture_default_str();
    train_cmd->add_option("--dims", train_dims, "Training dimensions")
        ->capture_default_str();
    train_cmd->add_option("--p", train_opts.depth, "QAOA depth")
        ->capture_default_str();
    train_cmd->add_option("--mixer", train_mixer, "standard or cm")
        ->capture_default_str();
    train_cmd
        ->add_option("--cost", train_cost, "c1, c2, c1_rand or c2_rand")
        ->capture_default_str();
    train_cmd
        ->add_option("--dim-fraction", train_opts.dim_fraction,
                     "Dimension subset fraction (randomized costs)")
        ->capture_default_str();
    train_cmd
        ->add_option("--instance-fraction", train_opts.instance_fraction,
                     "Instance subset fraction (randomized costs)")
        ->capture_default_str();
    train_cmd
        ->add_option("--max-evals", train_opts.optimizer.max_evals,
                     "Cost evaluations per restart")
        ->capture_default_str();
    train_cmd->add_option("--restarts", train_opts.optimizer.restarts,
                          "Multistart count")
        ->capture_default_str();
    train_cmd->add_option("--seed", train_opts.optimizer.seed, "Training seed")
        ->capture_default_str();
    train_cmd->add_option("--out", train_opts.out_file, "Angle file path")
        ->required();

    // evaluate
    EvaluateOpts eval_opts;
    eval_opts.dataset_dir = out_dir;
    std::string eval_dims = "4..22";
    std::string eval_mixer;
    auto* eval_cmd = app.add_subcommand(
        "evaluate", "Run fixed angles across dimensions and tabulate overlaps");
    eval_cmd->add_option("--dataset-dir", eval_opts.dataset_dir,
                         "Directory with dataset files")
        ->capture_default_str();
    eval_cmd->add_option("--dims", eval_dims, "Evaluation dimensions")
        ->capture_default_str();
    eval_cmd->add_option("--angles", eval_opts.angle_file, "Angle file")
        ->required();
    eval_cmd->add_option("--mixer", eval_mixer,
                         "Override the angle file's mixer");
    eval_cmd->add_option("--gamma", eval_opts.gammas,
                         "Additional gamma-SVP factors to tabulate");
    eval_cmd->add_option("--max-qubits", eval_opts.max_qubits,
                         "Per-dimension qubit guard (up to 25)")
        ->capture_default_str();
    eval_cmd->add_flag("--std-error", eval_opts.std_error,
                       "Report standard error instead of standard deviation");
    eval_cmd->add_option("--out", eval_opts.out_file, "Result table path")
        ->required();

    // fit
    FitOpts fit_opts;
    auto* fit_cmd = app.add_subcommand(
        "fit", "Fit 2^(-a m + b) to a result table and append extrapolation");
    fit_cmd->add_option("--table", fit_opts.table_file, "Input result table")
        ->required();
    fit_cmd->add_option("--m-lo", fit_opts.fit_m_lo, "Fit range lower bound")
        ->capture_default_str();
    fit_cmd->add_option("--m-hi", fit_opts.fit_m_hi, "Fit range upper bound");
    fit_cmd->add_option("--out", fit_opts.out_file, "Output table path")
        ->required();

    // approx
    ApproxOpts approx_opts;
    approx_opts.dataset_dir = out_dir;
    std::string approx_dims = "4..10";
    auto* approx_cmd = app.add_subcommand(
        "approx", "Approximation factors from the k-draw minimum-length model");
    approx_cmd
        ->add_option("--dataset-dir", approx_opts.dataset_dir,
                     "Directory with dataset files")
        ->capture_default_str();
    approx_cmd->add_option("--dims", approx_dims, "Dimensions")
        ->capture_default_str();
    approx_cmd->add_option("--angles", approx_opts.angle_file, "Angle file")
        ->required();
    approx_cmd->add_option("--k", approx_opts.draws, "Sample draws per run")
        ->capture_default_str();
    approx_cmd->add_option("--max-qubits", approx_opts.max_qubits,
                           "Per-dimension qubit guard")
        ->capture_default_str();
    approx_cmd->add_option("--out", approx_opts.out_file, "Result table path")
        ->required();

    // baseline
    BaselineOpts base_opts;
    base_opts.dataset_dir = out_dir;
    std::string base_dims = "4..10";
    std::string base_mixer = "standard";
    auto* base_cmd = app.add_subcommand(
        "baseline", "Per-instance optimized (CM-)QAOA reference");
    base_cmd->add_option("--dataset-dir", base_opts.dataset_dir,
                         "Directory with dataset files")
        ->capture_default_str();
    base_cmd->add_option("--dims", base_dims, "Dimensions (<= --max-dim)")
        ->capture_default_str();
    base_cmd->add_option("--p", base_opts.depth, "QAOA depth")
        ->capture_default_str();
    base_cmd->add_option("--mixer", base_mixer, "standard or cm")
        ->capture_default_str();
    base_cmd->add_option("--max-evals", base_opts.optimizer.max_evals,
                         "Evaluations per restart")
        ->capture_default_str();
    base_cmd->add_option("--restarts", base_opts.optimizer.restarts,
                         "Multistart count")
        ->capture_default_str();
    base_cmd->add_option("--seed", base_opts.optimizer.seed, "Optimizer seed")
        ->capture_default_str();
    base_cmd->add_option("--max-dim", base_opts.max_dim, "Dimension guard")
        ->capture_default_str();
    base_cmd->add_option("--out", base_opts.out_file, "Result table path")
        ->required();

    // verify
    VerifyOpts verify_opts;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Re-run unique-shortest verification on dataset files");
    verify_cmd
        ->add_option("files", verify_opts.dataset_files, "Dataset files")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            gen.dims = expand_dims(gen_dims);
            gen.jobs = jobs;
            return cmd_gen_dataset(gen, std::cout, std::cerr);
        }
        if (train_cmd->parsed()) {
            train_opts.dims = expand_dims(train_dims);
            train_opts.mixer = parse_mixer(train_mixer);
            train_opts.cost_kind = parse_cost_kind(train_cost);
            train_opts.jobs = jobs;
            return cmd_train(train_opts, std::cout, std::cerr);
        }
        if (eval_cmd->parsed()) {
            eval_opts.dims = expand_dims(eval_dims);
            if (!eval_mixer.empty())
                eval_opts.mixer_override = parse_mixer(eval_mixer);
            eval_opts.jobs = jobs;
            return cmd_evaluate(eval_opts, std::cout, std::cerr);
        }
        if (fit_cmd->parsed()) return cmd_fit(fit_opts, std::cout, std::cerr);
        if (approx_cmd->parsed()) {
            approx_opts.dims = expand_dims(approx_dims);
            approx_opts.jobs = jobs;
            return cmd_approx(approx_opts, std::cout, std::cerr);
        }
        if (base_cmd->parsed()) {
            base_opts.dims = expand_dims(base_dims);
            base_opts.mixer = parse_mixer(base_mixer);
            base_opts.jobs = jobs;
            return cmd_baseline(base_opts, std::cout, std::cerr);
        }
        if (verify_cmd->parsed())
            return cmd_verify(verify_opts, std::cout, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}
