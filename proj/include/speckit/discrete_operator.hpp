#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <vector>

#include "speckit/spread_function.hpp"
#include "speckit/wavelength_grid.hpp"

namespace speckit {

/// Quadrature-discretized integral operator. Entry (i, j) of the stored
/// matrix is quad_weights[j] * K(lambda_i, lambda'_j), so `matrix() * y`
/// is the trapezoidal approximation of the forward integral.
///
/// Norms follow the quadrature-weighted L2 convention throughout: the
/// weighted matrix is D_t^{1/2} * M * D_s^{-1/2} with D_t, D_s the
/// diagonal weight matrices of the target/source grids, and singular
/// values always refer to that matrix. Immutable after construction;
/// the singular value decomposition is computed once on first use.
class DiscreteOperator {
public:
    DiscreteOperator(Eigen::MatrixXd matrix, WavelengthGrid target, WavelengthGrid source,
                     std::vector<double> target_weights, std::vector<double> source_weights);

    /// Build the operator for a spread function model on a grid pair,
    /// with trapezoidal weights taken from the grids themselves.
    static DiscreteOperator discretize(const WavelengthGrid& target, const WavelengthGrid& source,
                                       const SpreadFunctionModel& model);

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const WavelengthGrid& target_grid() const { return target_; }
    const WavelengthGrid& source_grid() const { return source_; }
    const std::vector<double>& quad_weights() const { return source_weights_; }
    const std::vector<double>& target_weights() const { return target_weights_; }

    int rows() const { return static_cast<int>(matrix_.rows()); }
    int cols() const { return static_cast<int>(matrix_.cols()); }

    /// D_t^{1/2} * M * D_s^{-1/2}; cached.
    const Eigen::MatrixXd& weighted_matrix() const;
    /// Gram matrix of the weighted operator (discrete B = A*A); cached.
    const Eigen::MatrixXd& normal_matrix() const;
    /// Singular values of the weighted matrix, descending; cached.
    const Eigen::VectorXd& singular_values() const;

private:
    Eigen::MatrixXd matrix_;
    WavelengthGrid target_;
    WavelengthGrid source_;
    std::vector<double> target_weights_;
    std::vector<double> source_weights_;

    struct Cache {
        std::once_flag mats_once;
        std::once_flag svd_once;
        Eigen::MatrixXd weighted;
        Eigen::MatrixXd normal;
        Eigen::VectorXd singular_values;
    };
    std::shared_ptr<Cache> cache_;
};

/// Spec-level name for DiscreteOperator::discretize.
DiscreteOperator discretize_operator(const WavelengthGrid& target, const WavelengthGrid& source,
                                     const SpreadFunctionModel& model);

/// Apply the forward operator: returns the measured-kind spectrum
/// matrix() * y.values on the target grid.
Spectrum forward_apply(const DiscreteOperator& op, const Spectrum& y);

/// Relative operator perturbation ||A_pert - A_base|| / ||A_base|| in the
/// weighted spectral norm (the xi_rel of an inexactly known kernel).
double xi_relative(const DiscreteOperator& base, const DiscreteOperator& perturbed);

}  // namespace speckit
