#include "speckit/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "speckit/spectrum_io.hpp"
#include "speckit/version.hpp"

namespace speckit::cli {

namespace {

namespace fs = std::filesystem;

// ---- stage file names -------------------------------------------------

const char* kExactFile = "exact_spectrum.txt";
const char* kBroadenedFile = "broadened_spectrum.txt";
const char* kMeasuredFile = "measured_spectrum.txt";
const char* kCurvesFile = "curves.txt";
const char* kUpperFile = "boundary_upper.txt";
const char* kLowerFile = "boundary_lower.txt";
const char* kEnvelopesFile = "envelopes.txt";
const char* kTrainMetaFile = "train_meta.txt";
const char* kSelectionFile = "selection_report.txt";
const char* kRestoredFile = "restored_spectrum.txt";
const char* kRestoreSummaryFile = "restore_summary.txt";
const char* kManifestFile = "manifest.txt";

// ---- flat key = value files -------------------------------------------

std::map<std::string, std::string> read_flat_keys(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

double flat_number(const std::map<std::string, std::string>& keys, const std::string& key,
                   const fs::path& path) {
    const auto it = keys.find(key);
    if (it == keys.end())
        throw IoError("missing key '" + key + "' in " + path.string());
    return std::stod(it->second);
}

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_number(values[i]);
    }
    return out;
}

void write_kernel_cut(const fs::path& path, double lambda, const RunConfig& cfg) {
    const SpreadFunctionModel model(cfg.q, cfg.zeta_assumed);
    std::ostringstream os;
    os << "# kernel cross-section 10*K(" << format_number(lambda) << ", lambda')\n";
    os << "# columns: lambda_prime_nm, kernel_x10\n";
    for (int j = 0; j < cfg.source_grid.count; ++j) {
        const double lp = cfg.source_grid.node(j);
        os << format_number(lp) << ", " << format_number(10.0 * dispersion_kernel(lambda, lp, model))
           << "\n";
    }
    write_text_file(path, os.str());
}

Spectrum simulated_original(const RunConfig& cfg, Spectrum* broadened_out) {
    const SpreadFunctionModel model(cfg.q, cfg.zeta_assumed);
    const auto op = DiscreteOperator::discretize(cfg.target_grid, cfg.source_grid, model);
    const Spectrum y = synth_spectrum(cfg.p_lines, cfg.source_grid);
    Spectrum f = forward_apply(op, y);
    if (broadened_out) *broadened_out = f;
    return add_noise(f, cfg.simulate_noise_sd, cfg.simulate_seed);
}

fs::path measured_input_path(const RunConfig& cfg) {
    return cfg.measured_path.empty() ? cfg.out_dir / kMeasuredFile : cfg.measured_path;
}

struct TrainOutputs {
    std::vector<ErrorCurve> curves;
    ErrorCurve upper;
    double norm_A = 0.0;
    double eta = 0.0;
};

TrainOutputs load_or_regenerate_train(const RunConfig& cfg) {
    const fs::path curves_path = cfg.out_dir / kCurvesFile;
    const fs::path meta_path = cfg.out_dir / kTrainMetaFile;
    if (!fs::exists(curves_path) || !fs::exists(meta_path)) {
        std::cout << "train outputs missing under " << cfg.out_dir.string() << "; regenerating\n";
        cmd_train(cfg);
    }
    TrainOutputs out;
    out.curves = read_curve_bundle(curves_path);
    out.upper = aggregate_upper(out.curves);
    const auto meta = read_flat_keys(meta_path);
    out.norm_A = flat_number(meta, "norm_a", meta_path);
    out.eta = flat_number(meta, "eta", meta_path);
    return out;
}

}  // namespace

void cmd_simulate(const RunConfig& cfg) {
    const Spectrum y = synth_spectrum(cfg.p_lines, cfg.source_grid);
    Spectrum broadened = y;  // overwritten below
    const Spectrum measured = simulated_original(cfg, &broadened);

    write_spectrum(cfg.out_dir / kExactFile, y);
    write_spectrum(cfg.out_dir / kBroadenedFile, broadened);
    write_spectrum(cfg.out_dir / kMeasuredFile, measured);
    write_kernel_cut(cfg.out_dir / "kernel_cut_485.txt", 485.0, cfg);
    write_kernel_cut(cfg.out_dir / "kernel_cut_620.txt", 620.0, cfg);

    std::cout << "simulate: wrote 5 files to " << cfg.out_dir.string() << " (noise SD "
              << format_number(cfg.simulate_noise_sd) << ", seed " << cfg.simulate_seed << ")\n";
}

void cmd_train(const RunConfig& cfg) {
    const EnsembleResult ens = run_ensemble(cfg.training);

    write_curve_bundle(cfg.out_dir / kCurvesFile, ens.curves);
    write_curve(cfg.out_dir / kUpperFile, ens.upper);
    write_curve(cfg.out_dir / kLowerFile, ens.lower);

    // per-g envelope table over the scan grid, plot-ready
    EnvelopeFamily family;
    family.log10_alphas = ens.upper.log10_alphas;
    family.g_values = cfg.fit_options.g_grid;
    family.epsilons.assign(family.g_values.size(), std::vector<double>(ens.upper.size()));
    for (size_t k = 0; k < family.g_values.size(); ++k) {
        const EnvelopeParams p(ens.norm_A, ens.eta, family.g_values[k]);
        for (size_t i = 0; i < ens.upper.size(); ++i)
            family.epsilons[k][i] = envelope_value(std::pow(10.0, ens.upper.log10_alphas[i]), p);
    }
    write_envelope_table(cfg.out_dir / kEnvelopesFile, ens.upper, family);

    std::ostringstream meta;
    meta << "# training ensemble summary\n";
    meta << "n_curves = " << ens.curves.size() << "\n";
    meta << "norm_a = " << format_number(ens.norm_A) << "\n";
    meta << "eta = " << format_number(ens.eta) << "\n";
    meta << "mean_delta_rel = " << format_number(ens.mean_delta_rel) << "\n";
    meta << "max_delta_rel = " << format_number(ens.max_delta_rel) << "\n";
    meta << "mean_xi_rel = " << format_number(ens.mean_xi_rel) << "\n";
    meta << "max_xi_rel = " << format_number(ens.max_xi_rel) << "\n";
    write_text_file(cfg.out_dir / kTrainMetaFile, meta.str());

    std::cout << "train: " << ens.curves.size() << " sweeps, ||A|| = " << format_number(ens.norm_A)
              << ", eta = " << format_number(ens.eta) << "\n";
}

void cmd_fit(const RunConfig& cfg) {
    const TrainOutputs train = load_or_regenerate_train(cfg);

    ContactResult contact;
    std::vector<ContactStep> trace;
    try {
        if (cfg.fit_mode == FitMode::scan) {
            contact = fit_g_scan(train.curves, cfg.fit_options.g_grid, train.norm_A, train.eta);
        } else {
            contact = fit_g_analytic(train.upper, train.norm_A, train.eta, cfg.fit_options.tol,
                                     cfg.fit_options.max_iter, cfg.fit_options.g_initial, &trace);
        }
    } catch (const NoContactError& e) {
        throw NoContactError(std::string(e.what()) +
                             " (hint: widen [fit] g_min_exp/g_max_exp or increase g_count)");
    } catch (const InfeasibleContactError& e) {
        throw InfeasibleContactError(std::string(e.what()) +
                                     " (hint: the training curves never rise above the data term; "
                                     "check eta or widen the alpha grid)");
    }

    std::ostringstream os;
    os << "# parameter selection report\n";
    os << "mode = " << to_string(cfg.fit_mode) << "\n";
    os << "g = " << format_number(contact.g) << "\n";
    os << "alpha_g = " << format_number(contact.alpha_g) << "\n";
    os << "log10_alpha_g = " << format_number(std::log10(contact.alpha_g)) << "\n";
    os << "epsilon_alpha_g = "
       << format_number(envelope_value(contact.alpha_g,
                                       EnvelopeParams(train.norm_A, train.eta, contact.g)))
       << "\n";
    os << "epsilon_at_contact = " << format_number(contact.epsilon_at_contact) << "\n";
    os << "contact_alpha = " << format_number(contact.contact_alpha) << "\n";
    os << "eta = " << format_number(train.eta) << "\n";
    os << "norm_a = " << format_number(train.norm_A) << "\n";
    os << "iterations = " << contact.iterations << "\n";
    os << "converged = " << (contact.converged ? "true" : "false") << "\n";
    for (size_t i = 0; i < trace.size(); ++i)
        os << "trace_" << i << " = " << format_number(trace[i].alpha) << ", "
           << format_number(trace[i].g) << "\n";
    write_text_file(cfg.out_dir / kSelectionFile, os.str());

    std::cout << "fit (" << to_string(cfg.fit_mode) << "): g = " << format_number(contact.g)
              << ", alpha_g = 10^" << format_number(std::log10(contact.alpha_g))
              << ", predicted error = "
              << format_number(envelope_value(contact.alpha_g,
                                              EnvelopeParams(train.norm_A, train.eta, contact.g)))
              << "\n";
    if (!contact.converged)
        std::cout << "fit: warning: iteration did not converge within " << cfg.fit_options.max_iter
                  << " steps\n";
}

void cmd_restore(const RunConfig& cfg) {
    const fs::path measured_path = measured_input_path(cfg);
    if (!fs::exists(measured_path))
        throw IoError("measured spectrum not found: " + measured_path.string() +
                      " (run `speckit simulate` or set [io] measured)");
    const fs::path selection_path = cfg.out_dir / kSelectionFile;
    if (!fs::exists(selection_path))
        throw IoError("selection report not found: " + selection_path.string() +
                      " (run `speckit fit` first)");

    const Spectrum measured = read_spectrum(measured_path);
    if (measured.grid != cfg.target_grid)
        throw DimensionError("restore: measured spectrum grid " + measured.grid.describe() +
                             " does not match configured target grid " + cfg.target_grid.describe());

    const auto sel = read_flat_keys(selection_path);
    const double alpha_g = flat_number(sel, "alpha_g", selection_path);
    const double predicted = flat_number(sel, "epsilon_alpha_g", selection_path);

    const SpreadFunctionModel model(cfg.q, cfg.zeta_assumed);
    const auto op = DiscreteOperator::discretize(cfg.target_grid, cfg.source_grid, model);
    RegularizedSolution sol = solve_tikhonov(op, measured, alpha_g);
    sol.error_estimate = predicted;

    write_spectrum(cfg.out_dir / kRestoredFile, sol.spectrum);

    std::ostringstream os;
    os << "# restoration summary\n";
    os << "alpha_g = " << format_number(alpha_g) << "\n";
    os << "log10_alpha_g = " << format_number(std::log10(alpha_g)) << "\n";
    os << "predicted_epsilon = " << format_number(predicted) << "\n";
    os << "residual_norm = " << format_number(sol.residual_norm) << "\n";
    os << "peaks_restored = " << count_peaks(sol.spectrum) << "\n";
    os << "peaks_measured = " << count_peaks(measured) << "\n";
    if (!cfg.exact_path.empty()) {
        const Spectrum y_exact = read_spectrum(cfg.exact_path);
        os << "sigma_rel_true = " << format_number(relative_error(sol.spectrum, y_exact)) << "\n";
    }
    write_text_file(cfg.out_dir / kRestoreSummaryFile, os.str());

    std::cout << "restore: alpha_g = " << format_number(alpha_g) << ", predicted error "
              << format_number(predicted) << ", wrote " << kRestoredFile << "\n";
}

void cmd_report(const RunConfig& cfg) {
    struct StageFiles {
        const char* stage;
        std::vector<const char*> files;
    };
    const std::vector<StageFiles> stages = {
        {"simulate", {kExactFile, kBroadenedFile, kMeasuredFile, "kernel_cut_485.txt",
                      "kernel_cut_620.txt"}},
        {"train", {kCurvesFile, kUpperFile, kLowerFile, kEnvelopesFile, kTrainMetaFile}},
        {"fit", {kSelectionFile}},
        {"restore", {kRestoredFile, kRestoreSummaryFile}},
    };

    std::vector<std::string> missing;
    for (const auto& st : stages)
        for (const char* f : st.files)
            if (!fs::exists(cfg.out_dir / f)) {
                missing.push_back(std::string(st.stage) + " (missing " + f + ")");
                break;
            }
    if (!missing.empty()) {
        std::string msg = "report: missing stage outputs; run:";
        for (const auto& m : missing) msg += " " + m + ";";
        throw IoError(msg);
    }

    std::ostringstream os;
    os << "[manifest]\n";
    os << "version = " << kVersion << "\n";
    os << "stages = simulate, train, fit, restore\n";
    os << "\n[parameters]\n";
    os << "target_grid = " << format_number(cfg.target_grid.start) << ", "
       << format_number(cfg.target_grid.step) << ", " << cfg.target_grid.count << "\n";
    os << "source_grid = " << format_number(cfg.source_grid.start) << ", "
       << format_number(cfg.source_grid.step) << ", " << cfg.source_grid.count << "\n";
    os << "q = " << format_number(cfg.q) << "\n";
    os << "zeta_assumed = " << format_number(cfg.zeta_assumed) << "\n";
    os << "noise_sds = " << join_numbers(cfg.training.noise_sds) << "\n";
    os << "zetas = " << join_numbers(cfg.training.zeta_values) << "\n";
    os << "training_seeds =";
    for (size_t i = 0; i < cfg.training.seeds.size(); ++i)
        os << (i ? ", " : " ") << cfg.training.seeds[i];
    os << "\n";
    os << "alpha_grid = " << format_number(cfg.training.alpha_grid.front()) << " .. "
       << format_number(cfg.training.alpha_grid.back()) << " (" << cfg.training.alpha_grid.size()
       << " log-spaced)\n";
    os << "g_grid = " << format_number(cfg.fit_options.g_grid.front()) << " .. "
       << format_number(cfg.fit_options.g_grid.back()) << " (" << cfg.fit_options.g_grid.size()
       << " log-spaced)\n";
    os << "fit_mode = " << to_string(cfg.fit_mode) << "\n";
    os << "simulate_noise_sd = " << format_number(cfg.simulate_noise_sd) << "\n";
    os << "simulate_seed = " << cfg.simulate_seed << "\n";
    os << "\n[files]\n";
    for (const auto& st : stages)
        for (const char* f : st.files)
            os << f << " = fnv1a64:" << file_digest(cfg.out_dir / f) << "\n";
    write_text_file(cfg.out_dir / kManifestFile, os.str());

    std::cout << "report: manifest covers 4 stages, wrote " << kManifestFile << "\n";
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Restores instrument-broadened spectra by Tikhonov-regularized inversion of the "
                 "spread-function integral operator, choosing the regularization parameter from "
                 "training examples with a truncated-spectrum error envelope."};
    app.require_subcommand(1);

    std::string config_path, out_dir, mode;
    long long seed = -1;

    struct Sub {
        const char* name;
        const char* help;
        void (*fn)(const RunConfig&);
    };
    const std::vector<Sub> subs = {
        {"simulate", "synthesize the original example: exact, broadened and noisy spectra plus "
                     "kernel cross-sections", &cmd_simulate},
        {"train", "run the training ensemble and tabulate relative-error curves", &cmd_train},
        {"fit", "fit the error envelope and select the regularization parameter", &cmd_fit},
        {"restore", "solve the original example at the selected parameter", &cmd_restore},
        {"report", "collate stage outputs into a reproducibility manifest", &cmd_report},
    };
    for (const auto& sub : subs) {
        CLI::App* s = app.add_subcommand(sub.name, sub.help);
        s->add_option("--config", config_path, "config file (sectioned key = value)");
        s->add_option("--out", out_dir, "output directory (overrides [io] out_dir)");
        s->add_option("--seed", seed, "override the simulate noise seed");
        s->add_option("--mode", mode, "fit mode: scan or analytic");
    }

    try {
        app.parse(static_cast<int>(args.size()),
                  [&] {
                      static std::vector<const char*> argv;
                      argv.clear();
                      for (const auto& a : args) argv.push_back(a.c_str());
                      return argv.data();
                  }());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig::defaults() : load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed >= 0) cfg.simulate_seed = static_cast<std::uint64_t>(seed);
        if (!mode.empty()) cfg.fit_mode = fit_mode_from_string(mode);
        cfg.validate();

        for (const auto& sub : subs)
            if (app.got_subcommand(sub.name)) {
                sub.fn(cfg);
                return 0;
            }
        std::cerr << "speckit: error: no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "speckit: config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgumentError& e) {
        std::cerr << "speckit: config error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "speckit: config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "speckit: i/o error: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "speckit: numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "speckit: error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace speckit::cli
