#include "speckit/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace speckit {

namespace {

double data_term(double alpha, double norm_A, double eta) {
    return norm_A * eta / (2.0 * std::sqrt(alpha));
}

/// d eps / d alpha = -norm_A*eta/(4 alpha^{3/2}) + g/(alpha+g)^2
double envelope_slope(double alpha, const EnvelopeParams& p) {
    return -p.norm_A * p.eta / (4.0 * std::pow(alpha, 1.5)) + p.g / ((alpha + p.g) * (alpha + p.g));
}

}  // namespace

EnvelopeParams::EnvelopeParams(double norm_A_, double eta_, double g_)
    : norm_A(norm_A_), eta(eta_), g(g_) {
    if (!(norm_A >= 0.0) || !(eta >= 0.0))
        throw InvalidArgumentError("EnvelopeParams: norm_A and eta must be nonnegative");
    if (!(g > 0.0))
        throw InvalidArgumentError("EnvelopeParams: truncation level g must be positive");
}

ErrorCurve::ErrorCurve(std::vector<double> log10_alphas_, std::vector<double> sigmas_, CurveMeta meta_)
    : log10_alphas(std::move(log10_alphas_)), sigmas(std::move(sigmas_)), meta(std::move(meta_)) {
    if (log10_alphas.empty())
        throw InvalidArgumentError("ErrorCurve: empty tabulation");
    if (log10_alphas.size() != sigmas.size())
        throw DimensionError("ErrorCurve: tabulation lengths differ");
    for (size_t i = 1; i < log10_alphas.size(); ++i)
        if (!(log10_alphas[i] > log10_alphas[i - 1]))
            throw InvalidArgumentError("ErrorCurve: log10_alphas must be strictly increasing");
    for (double s : sigmas)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw InvalidArgumentError("ErrorCurve: sigma values must be finite and nonnegative");
}

double ErrorCurve::interpolate(double alpha) const {
    if (!(alpha > 0.0))
        throw InvalidArgumentError("ErrorCurve::interpolate: alpha must be positive");
    const double x = std::log10(alpha);
    const double lo = log10_alphas.front();
    const double hi = log10_alphas.back();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi) + std::abs(lo));
    if (x < lo - slack || x > hi + slack)
        throw CurveRangeError("ErrorCurve::interpolate: alpha outside tabulated range");
    if (x <= lo) return sigmas.front();
    if (x >= hi) return sigmas.back();
    const auto it = std::upper_bound(log10_alphas.begin(), log10_alphas.end(), x);
    const size_t k = static_cast<size_t>(it - log10_alphas.begin());
    const double x0 = log10_alphas[k - 1], x1 = log10_alphas[k];
    const double t = (x - x0) / (x1 - x0);
    return (1.0 - t) * sigmas[k - 1] + t * sigmas[k];
}

double envelope_value(double alpha, const EnvelopeParams& p) {
    if (!(alpha > 0.0))
        throw InvalidArgumentError("envelope_value: alpha must be positive");
    return data_term(alpha, p.norm_A, p.eta) + alpha / (alpha + p.g);
}

bool has_unique_minimum(const EnvelopeParams& p) {
    static const double kLimit = 3.0 * std::sqrt(3.0) / 4.0;
    return p.norm_A * p.eta / std::sqrt(p.g) < kLimit;
}

double minimize_envelope(const EnvelopeParams& p) {
    if (!has_unique_minimum(p)) {
        std::ostringstream os;
        os << "minimize_envelope: no minimum, norm_A*eta/sqrt(g) = " << p.norm_A * p.eta / std::sqrt(p.g)
           << " >= 3*sqrt(3)/4";
        throw NoMinimumError(os.str());
    }
    if (p.eta == 0.0 || p.norm_A == 0.0) return 0.0;

    // The slope goes -inf at 0+, crosses zero at the minimum, crosses back
    // at the local maximum further right. Bracket the first sign change.
    double lo = 1e-14;
    double hi = lo;
    bool bracketed = false;
    for (int i = 0; i < 2000; ++i) {
        hi = lo * 1.05;
        if (envelope_slope(hi, p) > 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
    }
    if (!bracketed)
        throw NumericError("minimize_envelope: failed to bracket the minimum");
    for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (envelope_slope(mid, p) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

ErrorCurve aggregate(const std::vector<ErrorCurve>& curves, bool take_max) {
    if (curves.empty())
        throw InvalidArgumentError("aggregate: empty curve family");
    const auto& tab = curves.front().log10_alphas;
    for (const auto& c : curves)
        if (c.log10_alphas != tab)
            throw DimensionError("aggregate: curves tabulated on different alpha grids");
    std::vector<double> out = curves.front().sigmas;
    for (size_t k = 1; k < curves.size(); ++k)
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = take_max ? std::max(out[i], curves[k].sigmas[i]) : std::min(out[i], curves[k].sigmas[i]);
    CurveMeta meta;
    meta.id = take_max ? "upper" : "lower";
    meta.line_count = static_cast<int>(curves.size());
    return ErrorCurve(tab, std::move(out), std::move(meta));
}

}  // namespace

ErrorCurve aggregate_upper(const std::vector<ErrorCurve>& curves) { return aggregate(curves, true); }
ErrorCurve aggregate_lower(const std::vector<ErrorCurve>& curves) { return aggregate(curves, false); }

ContactResult fit_g_analytic(const ErrorCurve& curve, double norm_A, double eta, double tol, int max_iter,
                             double g_initial, std::vector<ContactStep>* trace) {
    if (curve.size() == 0)
        throw InvalidArgumentError("fit_g_analytic: empty curve");
    if (!(eta > 0.0))
        throw InvalidArgumentError("fit_g_analytic: eta must be positive");
    if (!(norm_A > 0.0))
        throw InvalidArgumentError("fit_g_analytic: norm_A must be positive");
    if (!(g_initial > 0.0))
        throw InvalidArgumentError("fit_g_analytic: initial g must be positive");
    if (max_iter < 1)
        throw InvalidArgumentError("fit_g_analytic: max_iter must be >= 1");

    const double a_min = curve.alpha_min();
    const double a_max = curve.alpha_max();
    const auto clamp = [&](double a, bool& clamped) {
        if (a < a_min) { clamped = true; return a_min; }
        if (a > a_max) { clamped = true; return a_max; }
        return a;
    };

    double g = g_initial;
    double chi = std::pow(norm_A * eta / (4.0 * g), 2.0 / 3.0);
    bool clamped_last = false;
    double alpha = clamp(chi, clamped_last);

    int it = 0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        clamped_last = false;
        double alpha_next = clamp(chi * std::pow(alpha + g, 4.0 / 3.0), clamped_last);
        const double s = curve.interpolate(alpha_next);
        const double denom = s - data_term(alpha_next, norm_A, eta);
        if (denom <= 0.0) {
            std::ostringstream os;
            os << "fit_g_analytic: curve lies at or below the data term at alpha = " << alpha_next
               << " (sigma = " << s << "); the contact system is infeasible";
            throw InfeasibleContactError(os.str());
        }
        const double g_next = alpha_next * (1.0 / denom - 1.0);
        if (!(g_next > 0.0)) {
            std::ostringstream os;
            os << "fit_g_analytic: contact equation yields g <= 0 at alpha = " << alpha_next
               << " (sigma - data term = " << denom << " >= 1)";
            throw InfeasibleContactError(os.str());
        }
        chi = std::pow(norm_A * eta / (4.0 * g_next), 2.0 / 3.0);
        if (trace) trace->push_back({alpha_next, g_next});
        const bool done = std::abs(alpha_next - alpha) <= tol * std::abs(alpha_next);
        alpha = alpha_next;
        g = g_next;
        if (done) {
            converged = true;
            ++it;
            break;
        }
    }

    if (clamped_last && (alpha == a_min || alpha == a_max))
        throw CurveRangeError("fit_g_analytic: iterate pinned to the tabulated alpha range endpoint; "
                              "the contact point lies outside the curve");

    ContactResult out;
    out.g = g;
    out.alpha_g = alpha;
    out.contact_alpha = alpha;
    out.epsilon_at_contact = envelope_value(alpha, EnvelopeParams(norm_A, eta, g));
    out.iterations = it;
    out.converged = converged;
    return out;
}

ContactResult fit_g_scan(const std::vector<ErrorCurve>& curves, const std::vector<double>& g_grid,
                         double norm_A, double eta, EnvelopeFamily* family) {
    if (curves.empty())
        throw InvalidArgumentError("fit_g_scan: empty curve family");
    if (g_grid.empty())
        throw InvalidArgumentError("fit_g_scan: empty g grid");
    for (double g : g_grid)
        if (!(g > 0.0)) throw InvalidArgumentError("fit_g_scan: g grid values must be positive");

    const ErrorCurve upper = aggregate_upper(curves);
    const size_t n = upper.size();
    std::vector<double> alphas(n);
    for (size_t i = 0; i < n; ++i) alphas[i] = std::pow(10.0, upper.log10_alphas[i]);

    std::vector<double> gs = g_grid;
    std::sort(gs.begin(), gs.end());

    if (family) {
        family->log10_alphas = upper.log10_alphas;
        family->g_values = gs;
        family->epsilons.assign(gs.size(), std::vector<double>(n));
    }

    int best = -1;
    for (size_t k = 0; k < gs.size(); ++k) {
        const EnvelopeParams p(norm_A, eta, gs[k]);
        bool dominates = true;
        for (size_t i = 0; i < n; ++i) {
            const double e = envelope_value(alphas[i], p);
            if (family) family->epsilons[k][i] = e;
            if (e < upper.sigmas[i] - kDominationSlack) dominates = false;
        }
        if (dominates) best = static_cast<int>(k);
    }
    if (best < 0)
        throw NoContactError("fit_g_scan: no g in the grid dominates the curve family; widen the grid "
                             "toward smaller g");

    const EnvelopeParams p(norm_A, eta, gs[static_cast<size_t>(best)]);
    size_t i_min = 0, i_contact = 0;
    double e_min = 0.0, gap_min = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double e = envelope_value(alphas[i], p);
        const double gap = e - upper.sigmas[i];
        if (i == 0 || e < e_min) { e_min = e; i_min = i; }
        if (i == 0 || gap < gap_min) { gap_min = gap; i_contact = i; }
    }

    ContactResult out;
    out.g = gs[static_cast<size_t>(best)];
    out.alpha_g = alphas[i_min];
    out.contact_alpha = alphas[i_contact];
    out.epsilon_at_contact = envelope_value(alphas[i_contact], p);
    out.iterations = 0;
    out.converged = true;
    return out;
}

std::vector<double> default_g_grid() {
    std::vector<double> g(25);
    for (int k = 0; k < 25; ++k) g[static_cast<size_t>(k)] = std::pow(10.0, -3.0 + 3.0 * k / 24.0);
    return g;
}

}  // namespace speckit
