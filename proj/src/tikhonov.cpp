#include "speckit/tikhonov.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

namespace speckit {

ErrorBudget::ErrorBudget(double delta_rel_, double xi_rel_) : delta_rel(delta_rel_), xi_rel(xi_rel_) {
    if (!(delta_rel >= 0.0) || !(xi_rel >= 0.0))
        throw InvalidArgumentError("ErrorBudget: relative errors must be nonnegative");
}

RegularizedSolution solve_tikhonov(const DiscreteOperator& op, const Spectrum& f, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgumentError("solve_tikhonov: alpha must be positive, got " + std::to_string(alpha));
    if (f.grid != op.target_grid())
        throw DimensionError("solve_tikhonov: spectrum grid " + f.grid.describe() +
                             " does not match operator target grid " + op.target_grid().describe());

    const int n = op.cols();
    const auto& ahat = op.weighted_matrix();
    const auto& bhat = op.normal_matrix();

    // hatted coordinates: y_hat = D_s^{1/2} y, f_hat = D_t^{1/2} f
    Eigen::VectorXd f_hat(op.rows());
    for (int i = 0; i < op.rows(); ++i)
        f_hat(i) = std::sqrt(op.target_weights()[static_cast<size_t>(i)]) * f.values[static_cast<size_t>(i)];

    Eigen::MatrixXd lhs = bhat;
    lhs.diagonal().array() += alpha;
    Eigen::LLT<Eigen::MatrixXd> llt(lhs);
    if (llt.info() != Eigen::Success)
        throw NumericError("solve_tikhonov: Cholesky factorization failed at alpha = " + std::to_string(alpha));
    const Eigen::VectorXd y_hat = llt.solve(ahat.transpose() * f_hat);

    std::vector<double> y(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        y[static_cast<size_t>(j)] = y_hat(j) / std::sqrt(op.quad_weights()[static_cast<size_t>(j)]);
        if (!std::isfinite(y[static_cast<size_t>(j)]))
            throw NumericError("solve_tikhonov: non-finite solution value");
    }

    RegularizedSolution out{alpha, Spectrum(op.source_grid(), std::move(y), SpectrumKind::restored), 0.0, {}};
    out.residual_norm = (ahat * y_hat - f_hat).norm();
    return out;
}

double operator_norm(const DiscreteOperator& op) { return op.singular_values()(0); }

double min_singular_of_B(const DiscreteOperator& op) {
    const auto& sv = op.singular_values();
    const double smin = sv(sv.size() - 1);
    return smin * smin;
}

double classical_bound(double alpha, double norm_A, const ErrorBudget& budget, double mu_min) {
    if (!(alpha > 0.0))
        throw InvalidArgumentError("classical_bound: alpha must be positive");
    return norm_A * budget.eta() / (2.0 * std::sqrt(alpha)) + alpha / (alpha + mu_min);
}

double relative_error(const Spectrum& y_alpha, const Spectrum& y_exact) {
    if (y_alpha.grid != y_exact.grid)
        throw DimensionError("relative_error: spectra live on different grids");
    const double denom = weighted_norm(y_exact);
    if (!(denom > 0.0))
        throw InvalidArgumentError("relative_error: exact spectrum has zero norm");
    std::vector<double> diff(y_alpha.values.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = y_alpha.values[i] - y_exact.values[i];
    return weighted_norm(y_alpha.grid, diff) / denom;
}

}  // namespace speckit
