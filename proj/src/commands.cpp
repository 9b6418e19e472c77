#include "svplab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "svplab/rng.hpp"

#include "svplab/approx.hpp"
#include "svplab/encoding.hpp"
#include "svplab/errors.hpp"
#include "svplab/fitkit.hpp"
#include "svplab/parallel.hpp"

namespace svplab::cli {

namespace {

std::string join_ints(const std::vector<int>& values) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < values.size(); ++i)
        ss << (i ? "," : "") << values[i];
    return ss.str();
}

std::string gamma_suffix(double gamma) {
    std::ostringstream ss;
    ss << gamma;
    std::string s = ss.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

Dataset load_dim_dataset(const std::filesystem::path& dir, int m) {
    const auto path = dataset_filename(dir, m);
    if (!std::filesystem::exists(path))
        throw std::invalid_argument("dataset for m=" + std::to_string(m) +
                                    " not found: " + path.string());
    return load_dataset(path);
}

double nearest_rank_quantile(std::vector<double> sorted, double q) {
    const std::size_t n = sorted.size();
    const std::size_t rank = std::min<std::size_t>(
        n - 1,
        static_cast<std::size_t>(
            std::max(0.0, std::ceil(q * static_cast<double>(n)) - 1.0)));
    return sorted[rank];
}

}  // namespace

std::filesystem::path dataset_filename(const std::filesystem::path& dir,
                                       int m) {
    return dir / ("dataset_m" + std::to_string(m) + ".json");
}

int cmd_gen_dataset(const GenDatasetOpts& opts, std::ostream& log,
                    std::ostream& err) {
    try {
        if (opts.dims.empty()) {
            err << "no dimensions requested\n";
            return kExitUsage;
        }
        if (!is_prime(opts.params.q)) {
            err << "q must be prime, got " << opts.params.q << "\n";
            return kExitUsage;
        }
        for (int m : opts.dims) {
            Dataset ds =
                generate_dataset(m, opts.count, opts.seed, opts.params, opts.jobs);
            // generate_instance already rejects non-unique draws; re-verify
            // before writing so a corrupt file can never leave this command
            // with exit 0.
            const SearchSpace space = opts.params.search_space(m);
            for (std::size_t i = 0; i < ds.instances.size(); ++i) {
                if (!verify_unique_shortest(ds.instances[i], space)
                         .unique_shortest) {
                    err << "verification failed for m=" << m << " instance " << i
                        << "\n";
                    return kExitVerification;
                }
            }
            const auto path = dataset_filename(opts.out_dir, m);
            save_dataset(ds, path);
            log << "wrote " << path.string() << " (" << ds.instances.size()
                << " instances)\n";
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

int cmd_train(const TrainOpts& opts, std::ostream& log, std::ostream& err) {
    try {
        std::vector<EncodedDataset> datasets;
        for (int m : opts.dims)
            datasets.push_back(
                encode_dataset(load_dim_dataset(opts.dataset_dir, m), opts.jobs));

        TrainingConfig config;
        config.dims = opts.dims;
        config.depth = opts.depth;
        config.mixer = opts.mixer;
        config.cost_kind = opts.cost_kind;
        config.dim_fraction = opts.dim_fraction;
        config.instance_fraction = opts.instance_fraction;
        config.optimizer = opts.optimizer;
        config.jobs = opts.jobs;
        const TrainingResult result = train(config, datasets);

        AngleFile af;
        af.schedule.betas = result.betas;
        af.schedule.gammas = result.gammas;
        af.mixer = opts.mixer;
        af.training_dims = opts.dims;
        af.cost_kind = opts.cost_kind;
        af.dim_fraction = opts.dim_fraction;
        af.instance_fraction = opts.instance_fraction;
        af.seed = opts.optimizer.seed;
        af.a_train = result.a_train;
        af.b_train = result.b_train;
        af.discard_flag = result.discard_flag;
        save_angles(af, opts.out_file);

        log << "wrote " << opts.out_file.string() << "\n"
            << "a_train=" << format_double(result.a_train)
            << " b_train=" << format_double(result.b_train)
            << " rms_log_residual=" << format_double(result.rms_log_residual)
            << " evaluations=" << result.history.size()
            << (result.discard_flag ? " (discard: non-exponential trend)" : "")
            << "\n";
        for (const auto& pt : result.final_points)
            log << "m=" << pt.dim
                << " mean_overlap=" << format_double(pt.mean_overlap) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

int cmd_evaluate(const EvaluateOpts& opts, std::ostream& log,
                 std::ostream& err) {
    try {
        if (opts.max_qubits > kMaxQubits) {
            err << "max qubits capped at " << kMaxQubits << "\n";
            return kExitUsage;
        }
        const AngleFile af = load_angles(opts.angle_file);
        const MixerKind mixer = opts.mixer_override.value_or(af.mixer);

        ResultTable table;
        table.columns = {"m", "count", "in_training", "mean_overlap",
                         "std_overlap", "log2_mean_overlap"};
        for (double gamma : opts.gammas) {
            const auto tag = gamma_suffix(gamma);
            table.columns.push_back("mean_overlap_gamma" + tag);
            table.columns.push_back("mean_tau_gamma" + tag);
            table.columns.push_back("random_guess_gamma" + tag);
            table.columns.push_back("grover_gamma" + tag);
        }
        table.columns.push_back("random_guess");
        table.columns.push_back("grover");

        bool any_success = false;
        for (int m : opts.dims) {
            const Dataset ds = load_dim_dataset(opts.dataset_dir, m);
            const SearchSpace space = ds.params.search_space(m);
            if (space.num_qubits() > opts.max_qubits) {
                log << "skipping m=" << m << ": needs " << space.num_qubits()
                    << " qubits, limit " << opts.max_qubits << "\n";
                continue;
            }
            const std::size_t count = ds.instances.size();
            std::vector<double> overlaps(count);
            std::vector<std::vector<double>> gamma_overlaps(
                opts.gammas.size(), std::vector<double>(count));
            std::vector<std::vector<double>> gamma_taus(
                opts.gammas.size(), std::vector<double>(count));
            parallel_for(count, opts.jobs, [&](std::size_t i) {
                const ProblemEncoding enc(ds.instances[i], space);
                const StateVector state = run(enc, af.schedule, mixer);
                overlaps[i] = overlap(state, enc.solution_indices());
                for (std::size_t g = 0; g < opts.gammas.size(); ++g) {
                    const auto set = enc.solution_set(opts.gammas[g]);
                    gamma_overlaps[g][i] = overlap(state, set);
                    gamma_taus[g][i] = static_cast<double>(set.size());
                }
            });

            double mean = 0.0;
            for (double v : overlaps) mean += v;
            mean /= static_cast<double>(count);
            double var = 0.0;
            for (double v : overlaps) var += (v - mean) * (v - mean);
            var /= static_cast<double>(count);
            double spread = std::sqrt(var);
            if (opts.std_error) spread /= std::sqrt(static_cast<double>(count));

            const bool in_training =
                std::find(af.training_dims.begin(), af.training_dims.end(), m) !=
                af.training_dims.end();

            std::vector<double> row = {static_cast<double>(m),
                                       static_cast<double>(count),
                                       in_training ? 1.0 : 0.0,
                                       mean,
                                       spread,
                                       mean > 0.0 ? std::log2(mean)
                                                  : -std::numeric_limits<
                                                        double>::infinity()};
            const int n_qubits = space.num_qubits();
            for (std::size_t g = 0; g < opts.gammas.size(); ++g) {
                double gmean = 0.0, tmean = 0.0;
                for (std::size_t i = 0; i < count; ++i) {
                    gmean += gamma_overlaps[g][i];
                    tmean += gamma_taus[g][i];
                }
                gmean /= static_cast<double>(count);
                tmean /= static_cast<double>(count);
                const auto refs = reference_curves(n_qubits, tmean);
                row.push_back(gmean);
                row.push_back(tmean);
                row.push_back(refs.random_guess);
                row.push_back(refs.grover);
            }
            const auto base_refs = reference_curves(n_qubits, 1.0);
            row.push_back(base_refs.random_guess);
            row.push_back(base_refs.grover);
            table.rows.push_back(std::move(row));
            any_success = true;
        }
        if (!any_success) {
            err << "no dimension could be evaluated\n";
            return kExitComputation;
        }

        std::map<std::string, std::string> config = {
            {"dims", join_ints(opts.dims)},
            {"mixer", mixer_name(mixer)},
            {"p", std::to_string(af.schedule.depth())},
            {"max_qubits", std::to_string(opts.max_qubits)},
            {"spread", opts.std_error ? "standard_error" : "standard_deviation"},
        };
        table.manifest = make_manifest("evaluate", config,
                                       {opts.angle_file});
        save_result_table(table, opts.out_file);
        log << "wrote " << opts.out_file.string() << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

int cmd_fit(const FitOpts& opts, std::ostream& log, std::ostream& err) {
    try {
        ResultTable table = load_result_table(opts.table_file);
        const auto col = [&](const std::string& name) {
            const auto it =
                std::find(table.columns.begin(), table.columns.end(), name);
            if (it == table.columns.end())
                throw std::runtime_error("column " + name + " missing in " +
                                         opts.table_file.string());
            return static_cast<std::size_t>(it - table.columns.begin());
        };
        const std::size_t m_col = col("m");
        const std::size_t y_col = col("mean_overlap");

        std::vector<std::pair<double, double>> points;
        for (const auto& row : table.rows) {
            const double m = row[m_col];
            if (m >= opts.fit_m_lo && m <= opts.fit_m_hi)
                points.emplace_back(m, row[y_col]);
        }
        const ScalingFit fit = fit_exponential(points);

        table.columns.push_back("extrapolation");
        for (auto& row : table.rows)
            row.push_back(extrapolate(fit, row[m_col]));
        table.manifest.push_back("fit.a: " + format_double(fit.a));
        table.manifest.push_back("fit.b: " + format_double(fit.b));
        table.manifest.push_back("fit.rms_log_residual: " +
                                 format_double(fit.rms_log_residual));
        table.manifest.push_back("fit.range: [" + std::to_string(opts.fit_m_lo) +
                                 ", " + std::to_string(opts.fit_m_hi) + "]");
        save_result_table(table, opts.out_file);
        log << "a=" << format_double(fit.a) << " b=" << format_double(fit.b)
            << "\nwrote " << opts.out_file.string() << "\n";
        return kExitOk;
    } catch (const DegenerateDesignError& e) {
        err << e.what() << "\n";
        return kExitComputation;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

int cmd_approx(const ApproxOpts& opts, std::ostream& log, std::ostream& err) {
    try {
        const AngleFile af = load_angles(opts.angle_file);

        ResultTable per_instance;
        per_instance.columns = {"m", "instance", "approx_factor",
                                "failure_prob", "expected_length"};
        ResultTable aggregate;
        aggregate.columns = {"m",          "count",       "mean_factor",
                             "min_factor", "q25_factor",  "median_factor",
                             "q75_factor", "max_factor",  "mean_failure_prob"};

        std::vector<std::pair<double, double>> powerlaw_points;
        for (int m : opts.dims) {
            const Dataset ds = load_dim_dataset(opts.dataset_dir, m);
            const SearchSpace space = ds.params.search_space(m);
            if (space.num_qubits() > opts.max_qubits) {
                log << "skipping m=" << m << ": qubit limit\n";
                continue;
            }
            const std::size_t count = ds.instances.size();
            std::vector<ApproxReport> reports(count);
            parallel_for(count, opts.jobs, [&](std::size_t i) {
                const ProblemEncoding enc(ds.instances[i], space);
                const StateVector state = run(enc, af.schedule, af.mixer);
                reports[i] = approximation_factor(state, enc, opts.draws);
            });

            std::vector<double> factors;
            double mean_factor = 0.0, mean_failure = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                per_instance.rows.push_back({static_cast<double>(m),
                                             static_cast<double>(i),
                                             reports[i].approx_factor,
                                             reports[i].failure_prob,
                                             reports[i].expected_length});
                factors.push_back(reports[i].approx_factor);
                mean_factor += reports[i].approx_factor;
                mean_failure += reports[i].failure_prob;
            }
            mean_factor /= static_cast<double>(count);
            mean_failure /= static_cast<double>(count);
            std::sort(factors.begin(), factors.end());
            aggregate.rows.push_back({static_cast<double>(m),
                                      static_cast<double>(count), mean_factor,
                                      factors.front(),
                                      nearest_rank_quantile(factors, 0.25),
                                      nearest_rank_quantile(factors, 0.5),
                                      nearest_rank_quantile(factors, 0.75),
                                      factors.back(), mean_failure});
            powerlaw_points.emplace_back(static_cast<double>(m), mean_factor);
        }
        if (aggregate.rows.empty()) {
            err << "no dimension could be evaluated\n";
            return kExitComputation;
        }

        std::map<std::string, std::string> config = {
            {"dims", join_ints(opts.dims)},
            {"k", std::to_string(opts.draws)},
            {"mixer", mixer_name(af.mixer)},
        };
        aggregate.manifest = make_manifest("approx", config, {opts.angle_file});
        if (powerlaw_points.size() >= 2) {
            const PowerLawFit fit = fit_powerlaw(powerlaw_points);
            aggregate.manifest.push_back("powerlaw.c: " +
                                         format_double(fit.coeff));
            aggregate.manifest.push_back("powerlaw.e: " +
                                         format_double(fit.exponent));
        }
        save_result_table(aggregate, opts.out_file);

        auto per_instance_path = opts.out_file;
        per_instance_path.replace_extension(".per_instance" +
                                            opts.out_file.extension().string());
        per_instance.manifest = aggregate.manifest;
        save_result_table(per_instance, per_instance_path);
        log << "wrote " << opts.out_file.string() << " and "
            << per_instance_path.string() << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

int cmd_baseline(const BaselineOpts& opts, std::ostream& log,
                 std::ostream& err) {
    try {
        for (int m : opts.dims)
            if (m > opts.max_dim) {
                err << "baseline refused for m=" << m
                    << ": per-instance optimization is limited to m <= "
                    << opts.max_dim << " (raise --max-dim to override)\n";
                return kExitUsage;
            }

        ResultTable table;
        table.columns = {"m",           "count",
                         "mean_overlap", "std_overlap",
                         "log2_mean_overlap", "mean_expectation"};
        for (int m : opts.dims) {
            const Dataset ds = load_dim_dataset(opts.dataset_dir, m);
            const SearchSpace space = ds.params.search_space(m);
            const std::size_t count = ds.instances.size();
            std::vector<InstanceOptResult> results(count);
            parallel_for(count, opts.jobs, [&](std::size_t i) {
                const ProblemEncoding enc(ds.instances[i], space);
                OptimizerConfig per_instance = opts.optimizer;
                per_instance.seed = derive_seed(opts.optimizer.seed, i);
                results[i] =
                    optimize_instance(enc, opts.depth, opts.mixer, per_instance);
            });

            double mean = 0.0, mean_exp = 0.0;
            for (const auto& r : results) {
                mean += r.overlap;
                mean_exp += r.expectation;
            }
            mean /= static_cast<double>(count);
            mean_exp /= static_cast<double>(count);
            double var = 0.0;
            for (const auto& r : results)
                var += (r.overlap - mean) * (r.overlap - mean);
            var /= static_cast<double>(count);

            table.rows.push_back({static_cast<double>(m),
                                  static_cast<double>(count), mean,
                                  std::sqrt(var),
                                  mean > 0.0
                                      ? std::log2(mean)
                                      : -std::numeric_limits<double>::infinity(),
                                  mean_exp});
            log << "m=" << m << " mean_overlap=" << format_double(mean) << "\n";
        }

        std::map<std::string, std::string> config = {
            {"dims", join_ints(opts.dims)},
            {"p", std::to_string(opts.depth)},
            {"mixer", mixer_name(opts.mixer)},
            {"max_evals", std::to_string(opts.optimizer.max_evals)},
            {"restarts", std::to_string(opts.optimizer.restarts)},
        };
        table.manifest = make_manifest("baseline", config, {});
        save_result_table(table, opts.out_file);
        log << "wrote " << opts.out_file.string() << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

int cmd_verify(const VerifyOpts& opts, std::ostream& log, std::ostream& err) {
    try {
        for (const auto& path : opts.dataset_files) {
            const Dataset ds = load_dataset(path);
            const SearchSpace space = ds.params.search_space(ds.dimension);
            for (std::size_t i = 0; i < ds.instances.size(); ++i) {
                const auto cert = verify_unique_shortest(ds.instances[i], space);
                if (!cert.unique_shortest) {
                    err << path.string() << ": instance " << i
                        << " failed unique-shortest verification\n";
                    return kExitVerification;
                }
            }
            log << path.string() << ": " << ds.instances.size()
                << " instances verified\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitComputation;
    }
}

}  // namespace svplab::cli
