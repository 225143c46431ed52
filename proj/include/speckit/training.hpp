#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speckit/envelope.hpp"
#include "speckit/tikhonov.hpp"

namespace speckit {

/// One Gaussian spectral line of the synthetic true spectrum.
struct GaussianLine {
    double center = 0.0;     ///< nm
    double amplitude = 0.0;  ///< intensity, >= 0
    double sigma = 1.0;      ///< standard width (nm), > 0

    GaussianLine() = default;
    GaussianLine(double center_, double amplitude_, double sigma_);
};

/// Full description of the training ensemble: line-set variants, noise
/// levels, kernel-width perturbations, the alpha sweep and seeds.
struct TrainingSpec {
    std::vector<std::vector<GaussianLine>> line_sets;
    std::vector<double> noise_sds;
    std::vector<double> zeta_values;
    std::vector<double> alpha_grid;  ///< strictly increasing, positive
    std::vector<std::uint64_t> seeds;
    WavelengthGrid target_grid{450.0, 1.0, 201};
    WavelengthGrid source_grid{460.0, 1.0, 181};
    double q = 0.015;

    int member_count() const {
        return static_cast<int>(line_sets.size() * noise_sds.size() * zeta_values.size() * seeds.size());
    }

    void validate() const;

    /// The default ensemble mirroring the published experiment: 9-, 8- and
    /// 10-line Gaussian variants, noise SD 0.01..0.04, zeta in
    /// {-0.02, 0.01, 0.04}, two repetitions, 41 alphas in [1e-6, 1].
    static TrainingSpec paper_default();
};

/// The bundled 9-line reconstruction of the original example's true
/// spectrum (close pairs near 525 and 620 nm, weak lines at 507 and 543).
std::vector<GaussianLine> paper_example_lines();

/// How the fitted envelope is obtained from the training curves.
enum class FitMode { scan, analytic };

const char* to_string(FitMode mode);
FitMode fit_mode_from_string(const std::string& s);

/// Options forwarded to the envelope fit.
struct FitOptions {
    std::vector<double> g_grid = default_g_grid();
    double tol = 1e-8;
    int max_iter = 100;
    double g_initial = 0.1;
};

/// Everything select_alpha produces: the chosen parameter, the fitted
/// envelope, the curve family it was fitted to and the realized budgets.
struct SelectionReport {
    double alpha_g = 0.0;
    double g = 0.0;
    double eta_used = 0.0;
    double norm_A = 0.0;
    std::vector<ErrorCurve> curve_bundle;
    ErrorCurve upper_curve;
    double predicted_error = 0.0;  ///< envelope value at alpha_g

    FitMode mode = FitMode::scan;
    double contact_alpha = 0.0;
    int iterations = 0;
    bool converged = false;
    double max_delta_rel = 0.0, mean_delta_rel = 0.0;
    double max_xi_rel = 0.0, mean_xi_rel = 0.0;
};

/// Sum of Gaussian lines sampled on a grid (exact-kind spectrum).
Spectrum synth_spectrum(const std::vector<GaussianLine>& lines, const WavelengthGrid& grid);

/// Adds independent zero-mean Gaussian noise of standard deviation sd to
/// every node; a pure function of (f, sd, seed).
Spectrum add_noise(const Spectrum& f, double sd, std::uint64_t seed);

/// One member of the training ensemble. Data are generated with the
/// unperturbed operator; op is the zeta-perturbed operator used to solve.
struct TrainingExample {
    Spectrum y_exact;
    Spectrum f_noisy;
    DiscreteOperator op;
    CurveMeta meta;
};

TrainingExample make_training_example(const TrainingSpec& spec, int line_set_index, int noise_index,
                                      int zeta_index, std::uint64_t seed);

/// sigma_rel(alpha) for one (operator, data, exact solution) triple over a
/// strictly increasing alpha grid.
ErrorCurve sweep_alpha(const DiscreteOperator& op, const Spectrum& f, const Spectrum& y_exact,
                       const std::vector<double>& alpha_grid, CurveMeta meta = {});

/// Ensemble stage of select_alpha, exposed so that the train and fit
/// pipeline stages can hand files across.
struct EnsembleResult {
    std::vector<ErrorCurve> curves;
    ErrorCurve upper;
    ErrorCurve lower;
    double norm_A = 0.0;
    double eta = 0.0;  ///< mean realized delta_rel + mean realized xi_rel
    double max_delta_rel = 0.0, mean_delta_rel = 0.0;
    double max_xi_rel = 0.0, mean_xi_rel = 0.0;
};

EnsembleResult run_ensemble(const TrainingSpec& spec);

/// Full parameter selection: ensemble sweeps, aggregation, eta and norm
/// estimation, envelope fit in the requested mode.
SelectionReport select_alpha(const TrainingSpec& spec, FitMode mode, const FitOptions& options = {});

/// Solve the original example at the selected alpha_g; the report's
/// predicted envelope value is attached as the error estimate.
RegularizedSolution restore_original(const DiscreteOperator& op, const Spectrum& f_P,
                                     const SelectionReport& report);

/// Number of local maxima at or above amp_frac of the global maximum with
/// prominence at least prom_frac of the global maximum.
int count_peaks(const Spectrum& s, double amp_frac = 0.10, double prom_frac = 0.05);

}  // namespace speckit
