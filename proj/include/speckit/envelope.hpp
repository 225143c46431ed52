#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "speckit/errors.hpp"

namespace speckit {

/// Parameters of the truncated-spectrum error envelope
///   eps(alpha) = (norm_A / (2 sqrt(alpha))) * eta + alpha / (alpha + g).
struct EnvelopeParams {
    double norm_A = 0.0;  ///< weighted operator norm
    double eta = 0.0;     ///< combined relative data error, delta_rel + xi_rel
    double g = 0.0;       ///< spectrum-truncation level, > 0

    EnvelopeParams(double norm_A_, double eta_, double g_);
};

/// Provenance of a tabulated error curve.
struct CurveMeta {
    double noise_sd = 0.0;
    double zeta = 0.0;
    std::uint64_t seed = 0;
    int line_count = 0;
    std::string id;
};

/// sigma_rel(alpha) tabulated on a strictly increasing log10-alpha grid.
struct ErrorCurve {
    std::vector<double> log10_alphas;
    std::vector<double> sigmas;
    CurveMeta meta;

    ErrorCurve() = default;
    ErrorCurve(std::vector<double> log10_alphas_, std::vector<double> sigmas_, CurveMeta meta_ = {});

    size_t size() const { return log10_alphas.size(); }
    double alpha_min() const { return std::pow(10.0, log10_alphas.front()); }
    double alpha_max() const { return std::pow(10.0, log10_alphas.back()); }

    /// Piecewise-linear interpolation in (log10 alpha, sigma) space.
    /// alpha must lie within the tabulated range.
    double interpolate(double alpha) const;
};

/// Solution of the contact system: the fitted truncation level and the
/// regularization parameter at the contact point.
struct ContactResult {
    double g = 0.0;
    double alpha_g = 0.0;
    double epsilon_at_contact = 0.0;
    double contact_alpha = 0.0;  ///< alpha of minimal envelope-curve gap
    int iterations = 0;
    bool converged = false;
};

/// Envelope family evaluated over one tabulation grid, for plotting.
struct EnvelopeFamily {
    std::vector<double> log10_alphas;
    std::vector<double> g_values;
    std::vector<std::vector<double>> epsilons;  ///< one row per g
};

double envelope_value(double alpha, const EnvelopeParams& p);

/// True iff norm_A * eta / sqrt(g) < 3*sqrt(3)/4, the condition under
/// which eps(alpha) has a unique interior minimum.
bool has_unique_minimum(const EnvelopeParams& p);

/// The unique interior minimizer of eps(alpha). Returns 0 for eta == 0
/// (the envelope then increases from eps(0+) = 0). Throws NoMinimumError
/// if the minimum-existence condition fails.
double minimize_envelope(const EnvelopeParams& p);

/// Pointwise maximum of a family of curves sharing one tabulation.
ErrorCurve aggregate_upper(const std::vector<ErrorCurve>& curves);
/// Pointwise minimum (the lower boundary of the family).
ErrorCurve aggregate_lower(const std::vector<ErrorCurve>& curves);

/// One step of the analytic contact iteration, for trace output.
struct ContactStep {
    double alpha = 0.0;
    double g = 0.0;
};

/// Analytic contact fit: alternates the envelope-minimum update for alpha
/// with the contact equation resolved for g, iterating
///   alpha_i = chi_{i-1} (alpha_{i-1} + g_{i-1})^{4/3},
///   g_i = alpha_i [ (sigma(alpha_i) - norm_A eta / (2 sqrt(alpha_i)))^{-1} - 1 ],
/// until the relative alpha change drops below tol. Iterates leaving the
/// tabulated alpha range are clamped to the nearest endpoint; a fit that
/// ends pinned to an endpoint throws CurveRangeError.
ContactResult fit_g_analytic(const ErrorCurve& curve, double norm_A, double eta, double tol = 1e-8,
                             int max_iter = 100, double g_initial = 0.1,
                             std::vector<ContactStep>* trace = nullptr);

/// Scan fit: returns the largest g in g_grid whose envelope dominates the
/// pointwise upper boundary of the curves at every tabulated alpha (up to
/// a small absolute slack), with alpha_g the tabulated argmin of that
/// envelope. Optionally emits the whole (g, eps) family for plotting.
ContactResult fit_g_scan(const std::vector<ErrorCurve>& curves, const std::vector<double>& g_grid,
                         double norm_A, double eta, EnvelopeFamily* family = nullptr);

/// 25 log-spaced truncation levels in [1e-3, 1].
std::vector<double> default_g_grid();

/// Absolute slack allowed when testing envelope domination in the scan.
inline constexpr double kDominationSlack = 1e-3;

}  // namespace speckit
