#include "speckit/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "speckit/parallel.hpp"
#include "speckit/rng.hpp"

namespace speckit {

GaussianLine::GaussianLine(double center_, double amplitude_, double sigma_)
    : center(center_), amplitude(amplitude_), sigma(sigma_) {
    if (!(sigma > 0.0))
        throw InvalidArgumentError("GaussianLine: sigma must be positive");
    if (!(amplitude >= 0.0))
        throw InvalidArgumentError("GaussianLine: amplitude must be nonnegative");
}

void TrainingSpec::validate() const {
    if (line_sets.empty())
        throw InvalidArgumentError("TrainingSpec: at least one line set is required");
    if (noise_sds.empty() || zeta_values.empty() || seeds.empty())
        throw InvalidArgumentError("TrainingSpec: noise_sds, zeta_values and seeds must be non-empty");
    for (double sd : noise_sds)
        if (!(sd > 0.0)) throw InvalidArgumentError("TrainingSpec: noise SDs must be positive");
    if (alpha_grid.size() < 2)
        throw InvalidArgumentError("TrainingSpec: alpha grid needs at least two values");
    for (size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0))
            throw InvalidArgumentError("TrainingSpec: alpha grid values must be positive");
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1]))
            throw InvalidArgumentError("TrainingSpec: alpha grid must be strictly increasing");
    }
    for (const auto& z : zeta_values)
        if (!(q * (1.0 + z) > 0.0))
            throw InvalidArgumentError("TrainingSpec: zeta makes the kernel width nonpositive");
    if (!(q > 0.0)) throw InvalidArgumentError("TrainingSpec: q must be positive");
}

namespace {

std::vector<double> log_spaced(double lo_exp, double hi_exp, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1));
    return v;
}

std::vector<GaussianLine> lines(std::initializer_list<GaussianLine> ls) { return ls; }

}  // namespace

std::vector<GaussianLine> paper_example_lines() {
    // Amplitude scale chosen so that noise SD 0.02 on the broadened
    // spectrum corresponds to a ~1% relative data error.
    return lines({{507, 3.06, 2.6},
                  {520, 8.50, 3.0},
                  {530, 7.14, 2.8},
                  {543, 2.72, 2.6},
                  {560, 6.46, 4.0},
                  {580, 5.44, 4.5},
                  {600, 4.42, 3.6},
                  {615, 7.82, 2.8},
                  {625, 5.78, 2.8}});
}

TrainingSpec TrainingSpec::paper_default() {
    TrainingSpec spec;
    // Three variants spanning the structure uncertainty of the original
    // example: a mid-width 9-line set, an 8-line set with the 525 nm pair
    // merged, and a sharp 10-line set with the 620 nm pair split.
    spec.line_sets = {
        lines({{507, 2.55, 2.5},
               {519, 7.82, 2.9},
               {531, 6.80, 2.7},
               {543, 3.23, 2.3},
               {561, 5.95, 3.6},
               {579, 5.10, 4.2},
               {599, 4.76, 3.5},
               {616, 7.48, 2.7},
               {626, 5.44, 2.4}}),
        lines({{507, 2.89, 2.7},
               {525, 8.50, 3.6},
               {543, 3.06, 2.6},
               {560, 6.12, 4.0},
               {580, 5.27, 4.6},
               {600, 4.59, 3.7},
               {615, 7.65, 2.9},
               {625, 5.61, 2.7}}),
        lines({{507, 2.72, 1.9},
               {520, 8.16, 2.2},
               {530, 6.97, 2.1},
               {543, 2.89, 1.9},
               {560, 6.29, 3.0},
               {580, 5.27, 3.4},
               {600, 4.59, 2.8},
               {612, 7.31, 2.0},
               {620, 5.10, 1.8},
               {628, 4.93, 1.9}}),
    };
    spec.noise_sds = {0.01, 0.02, 0.03, 0.04};
    spec.zeta_values = {-0.02, 0.01, 0.04};
    spec.alpha_grid = log_spaced(-6.0, 0.0, 41);
    spec.seeds = {1, 2};
    spec.target_grid = WavelengthGrid(450.0, 1.0, 201);
    spec.source_grid = WavelengthGrid(460.0, 1.0, 181);
    spec.q = 0.015;
    return spec;
}

const char* to_string(FitMode mode) { return mode == FitMode::scan ? "scan" : "analytic"; }

FitMode fit_mode_from_string(const std::string& s) {
    if (s == "scan") return FitMode::scan;
    if (s == "analytic") return FitMode::analytic;
    throw InvalidArgumentError("unknown fit mode: " + s + " (expected scan or analytic)");
}

Spectrum synth_spectrum(const std::vector<GaussianLine>& lines, const WavelengthGrid& grid) {
    std::vector<double> v(static_cast<size_t>(grid.count), 0.0);
    for (const auto& line : lines) {
        const double two_s2 = 2.0 * line.sigma * line.sigma;
        for (int i = 0; i < grid.count; ++i) {
            const double d = grid.node(i) - line.center;
            v[static_cast<size_t>(i)] += line.amplitude * std::exp(-d * d / two_s2);
        }
    }
    return Spectrum(grid, std::move(v), SpectrumKind::exact);
}

Spectrum add_noise(const Spectrum& f, double sd, std::uint64_t seed) {
    if (!(sd > 0.0))
        throw InvalidArgumentError("add_noise: sd must be positive");
    GaussianSampler sampler(seed);
    std::vector<double> v = f.values;
    for (double& x : v) x += sd * sampler.next();
    return Spectrum(f.grid, std::move(v), SpectrumKind::measured);
}

namespace {

std::string member_id(int line_count, double sd, double zeta, std::uint64_t seed) {
    std::ostringstream os;
    os << "q" << line_count << "_sd" << sd << "_z" << zeta << "_s" << seed;
    return os.str();
}

TrainingExample build_example(const TrainingSpec& spec, const DiscreteOperator& base_op,
                              const DiscreteOperator& perturbed_op, int line_set_index, int noise_index,
                              int zeta_index, std::uint64_t seed) {
    const auto& ls = spec.line_sets[static_cast<size_t>(line_set_index)];
    Spectrum y = synth_spectrum(ls, spec.source_grid);
    Spectrum f = forward_apply(base_op, y);
    Spectrum f_noisy = add_noise(f, spec.noise_sds[static_cast<size_t>(noise_index)], seed);

    CurveMeta meta;
    meta.noise_sd = spec.noise_sds[static_cast<size_t>(noise_index)];
    meta.zeta = spec.zeta_values[static_cast<size_t>(zeta_index)];
    meta.seed = seed;
    meta.line_count = static_cast<int>(ls.size());
    meta.id = member_id(meta.line_count, meta.noise_sd, meta.zeta, seed);
    return TrainingExample{std::move(y), std::move(f_noisy), perturbed_op, std::move(meta)};
}

}  // namespace

TrainingExample make_training_example(const TrainingSpec& spec, int line_set_index, int noise_index,
                                      int zeta_index, std::uint64_t seed) {
    spec.validate();
    if (line_set_index < 0 || line_set_index >= static_cast<int>(spec.line_sets.size()) ||
        noise_index < 0 || noise_index >= static_cast<int>(spec.noise_sds.size()) ||
        zeta_index < 0 || zeta_index >= static_cast<int>(spec.zeta_values.size()))
        throw InvalidArgumentError("make_training_example: index out of range");
    const SpreadFunctionModel base_model(spec.q, 0.0);
    const SpreadFunctionModel pert_model(spec.q, spec.zeta_values[static_cast<size_t>(zeta_index)]);
    const auto base_op = DiscreteOperator::discretize(spec.target_grid, spec.source_grid, base_model);
    const auto pert_op = DiscreteOperator::discretize(spec.target_grid, spec.source_grid, pert_model);
    return build_example(spec, base_op, pert_op, line_set_index, noise_index, zeta_index, seed);
}

ErrorCurve sweep_alpha(const DiscreteOperator& op, const Spectrum& f, const Spectrum& y_exact,
                       const std::vector<double>& alpha_grid, CurveMeta meta) {
    if (alpha_grid.size() < 2)
        throw InvalidArgumentError("sweep_alpha: alpha grid needs at least two values");
    std::vector<double> logs(alpha_grid.size());
    for (size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0))
            throw InvalidArgumentError("sweep_alpha: alpha values must be positive");
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1]))
            throw InvalidArgumentError("sweep_alpha: alpha grid must be strictly increasing");
        logs[i] = std::log10(alpha_grid[i]);
    }
    std::vector<double> sig(alpha_grid.size());
    for (size_t i = 0; i < alpha_grid.size(); ++i)
        sig[i] = relative_error(solve_tikhonov(op, f, alpha_grid[i]).spectrum, y_exact);
    return ErrorCurve(std::move(logs), std::move(sig), std::move(meta));
}

EnsembleResult run_ensemble(const TrainingSpec& spec) {
    spec.validate();

    const SpreadFunctionModel base_model(spec.q, 0.0);
    const auto base_op = DiscreteOperator::discretize(spec.target_grid, spec.source_grid, base_model);

    std::vector<DiscreteOperator> pert_ops;
    pert_ops.reserve(spec.zeta_values.size());
    std::vector<double> xi(spec.zeta_values.size());
    for (size_t z = 0; z < spec.zeta_values.size(); ++z) {
        pert_ops.push_back(DiscreteOperator::discretize(spec.target_grid, spec.source_grid,
                                                        SpreadFunctionModel(spec.q, spec.zeta_values[z])));
        xi[z] = xi_relative(base_op, pert_ops.back());
    }

    const int n_ls = static_cast<int>(spec.line_sets.size());
    const int n_sd = static_cast<int>(spec.noise_sds.size());
    const int n_z = static_cast<int>(spec.zeta_values.size());
    const int n_rep = static_cast<int>(spec.seeds.size());
    const int n = spec.member_count();

    std::vector<ErrorCurve> curves(static_cast<size_t>(n));
    std::vector<double> deltas(static_cast<size_t>(n));

    parallel_for(n, [&](int idx) {
        const int rep = idx % n_rep;
        const int zi = (idx / n_rep) % n_z;
        const int si = (idx / (n_rep * n_z)) % n_sd;
        const int li = idx / (n_rep * n_z * n_sd);

        std::uint64_t seed = spec.seeds[static_cast<size_t>(rep)];
        seed = hash_combine(seed, static_cast<std::uint64_t>(li));
        seed = hash_combine(seed, static_cast<std::uint64_t>(si));
        seed = hash_combine(seed, static_cast<std::uint64_t>(zi));

        auto ex = build_example(spec, base_op, pert_ops[static_cast<size_t>(zi)], li, si, zi, seed);

        // realized right-hand-side error of this member
        const Spectrum f_clean = forward_apply(base_op, ex.y_exact);
        std::vector<double> dn(f_clean.values.size());
        for (size_t k = 0; k < dn.size(); ++k) dn[k] = ex.f_noisy.values[k] - f_clean.values[k];
        deltas[static_cast<size_t>(idx)] =
            weighted_norm(f_clean.grid, dn) / weighted_norm(f_clean);

        curves[static_cast<size_t>(idx)] =
            sweep_alpha(ex.op, ex.f_noisy, ex.y_exact, spec.alpha_grid, ex.meta);
    });

    EnsembleResult out;
    out.curves = std::move(curves);
    out.upper = aggregate_upper(out.curves);
    out.lower = aggregate_lower(out.curves);
    out.norm_A = operator_norm(base_op);
    out.max_delta_rel = *std::max_element(deltas.begin(), deltas.end());
    out.mean_delta_rel = std::accumulate(deltas.begin(), deltas.end(), 0.0) / deltas.size();
    out.max_xi_rel = *std::max_element(xi.begin(), xi.end());
    out.mean_xi_rel = std::accumulate(xi.begin(), xi.end(), 0.0) / xi.size();
    // The budget eta is the ensemble's central estimate; the worst-case
    // sum overstates the data term so much that the envelope would contact
    // the curves far right of their trough.
    out.eta = out.mean_delta_rel + out.mean_xi_rel;
    return out;
}

SelectionReport select_alpha(const TrainingSpec& spec, FitMode mode, const FitOptions& options) {
    EnsembleResult ens = run_ensemble(spec);

    ContactResult contact;
    if (mode == FitMode::scan) {
        contact = fit_g_scan(ens.curves, options.g_grid, ens.norm_A, ens.eta);
    } else {
        contact = fit_g_analytic(ens.upper, ens.norm_A, ens.eta, options.tol, options.max_iter,
                                 options.g_initial);
    }

    SelectionReport report;
    report.alpha_g = contact.alpha_g;
    report.g = contact.g;
    report.eta_used = ens.eta;
    report.norm_A = ens.norm_A;
    report.curve_bundle = std::move(ens.curves);
    report.upper_curve = std::move(ens.upper);
    report.predicted_error = envelope_value(contact.alpha_g, EnvelopeParams(ens.norm_A, ens.eta, contact.g));
    report.mode = mode;
    report.contact_alpha = contact.contact_alpha;
    report.iterations = contact.iterations;
    report.converged = contact.converged;
    report.max_delta_rel = ens.max_delta_rel;
    report.mean_delta_rel = ens.mean_delta_rel;
    report.max_xi_rel = ens.max_xi_rel;
    report.mean_xi_rel = ens.mean_xi_rel;
    return report;
}

RegularizedSolution restore_original(const DiscreteOperator& op, const Spectrum& f_P,
                                     const SelectionReport& report) {
    RegularizedSolution sol = solve_tikhonov(op, f_P, report.alpha_g);
    sol.error_estimate = report.predicted_error;
    return sol;
}

int count_peaks(const Spectrum& s, double amp_frac, double prom_frac) {
    const auto& v = s.values;
    const int n = static_cast<int>(v.size());
    if (n < 3) return 0;
    const double vmax = *std::max_element(v.begin(), v.end());
    if (!(vmax > 0.0)) return 0;

    int count = 0;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
        if (v[i] < amp_frac * vmax) continue;
        // prominence: lowest point on the walk down each side before a
        // higher value is met; the peak must rise above the higher valley
        double left = v[i];
        for (int j = i - 1; j >= 0; --j) {
            if (v[j] > v[i]) break;
            left = std::min(left, v[j]);
        }
        double right = v[i];
        for (int j = i + 1; j < n; ++j) {
            if (v[j] > v[i]) break;
            right = std::min(right, v[j]);
        }
        if (v[i] - std::max(left, right) >= prom_frac * vmax) ++count;
    }
    return count;
}

}  // namespace speckit
