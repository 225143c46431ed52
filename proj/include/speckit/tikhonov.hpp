#pragma once

#include <optional>

#include "speckit/discrete_operator.hpp"

namespace speckit {

/// Result of one regularized solve.
struct RegularizedSolution {
    double alpha = 0.0;
    Spectrum spectrum;              ///< restored-kind spectrum on the source grid
    double residual_norm = 0.0;     ///< ||A y_alpha - f|| in the weighted target norm
    std::optional<double> error_estimate;  ///< envelope value attached by restore_original
};

/// Relative data-error budget: right-hand side and operator parts.
struct ErrorBudget {
    double delta_rel = 0.0;  ///< ||df|| / ||f||
    double xi_rel = 0.0;     ///< ||dA|| / ||A||

    ErrorBudget(double delta_rel_, double xi_rel_);
    double eta() const { return delta_rel + xi_rel; }
};

/// Zero-order Tikhonov regularization: solves (alpha*E + A*A) y = A* f
/// with the adjoint taken in the quadrature-weighted inner products,
/// via a dense SPD factorization.
RegularizedSolution solve_tikhonov(const DiscreteOperator& op, const Spectrum& f, double alpha);

/// Largest singular value of the weighted operator matrix.
double operator_norm(const DiscreteOperator& op);

/// Smallest eigenvalue of B = A*A, i.e. the square of the smallest
/// singular value of the weighted operator.
double min_singular_of_B(const DiscreteOperator& op);

/// Classical relative-error bound
///   (norm_A / (2 sqrt(alpha))) * eta + alpha / (alpha + mu_min);
/// with mu_min = 0 this is the degenerate bound that exceeds 1 everywhere.
double classical_bound(double alpha, double norm_A, const ErrorBudget& budget, double mu_min);

/// ||y_alpha - y_exact|| / ||y_exact|| in the weighted norm of the common grid.
double relative_error(const Spectrum& y_alpha, const Spectrum& y_exact);

}  // namespace speckit
