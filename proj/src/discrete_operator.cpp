#include "speckit/discrete_operator.hpp"

#include <cmath>

namespace speckit {

DiscreteOperator::DiscreteOperator(Eigen::MatrixXd matrix, WavelengthGrid target, WavelengthGrid source,
                                   std::vector<double> target_weights, std::vector<double> source_weights)
    : matrix_(std::move(matrix)),
      target_(target),
      source_(source),
      target_weights_(std::move(target_weights)),
      source_weights_(std::move(source_weights)),
      cache_(std::make_shared<Cache>()) {
    if (matrix_.rows() != target_.count || matrix_.cols() != source_.count)
        throw DimensionError("DiscreteOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + " but grids are " + std::to_string(target_.count) +
                             "x" + std::to_string(source_.count));
    if (target_weights_.size() != static_cast<size_t>(target_.count) ||
        source_weights_.size() != static_cast<size_t>(source_.count))
        throw DimensionError("DiscreteOperator: weight vector lengths do not match grids");
    for (double w : target_weights_)
        if (!(w > 0.0)) throw InvalidArgumentError("DiscreteOperator: target weights must be positive");
    for (double w : source_weights_)
        if (!(w > 0.0)) throw InvalidArgumentError("DiscreteOperator: source weights must be positive");
}

DiscreteOperator DiscreteOperator::discretize(const WavelengthGrid& target, const WavelengthGrid& source,
                                              const SpreadFunctionModel& model) {
    const auto ws = source.trapezoid_weights();
    Eigen::MatrixXd m(target.count, source.count);
    for (int i = 0; i < target.count; ++i) {
        const double lam = target.node(i);
        for (int j = 0; j < source.count; ++j)
            m(i, j) = ws[static_cast<size_t>(j)] * dispersion_kernel(lam, source.node(j), model);
    }
    return DiscreteOperator(std::move(m), target, source, target.trapezoid_weights(), ws);
}

DiscreteOperator discretize_operator(const WavelengthGrid& target, const WavelengthGrid& source,
                                     const SpreadFunctionModel& model) {
    return DiscreteOperator::discretize(target, source, model);
}

const Eigen::MatrixXd& DiscreteOperator::weighted_matrix() const {
    std::call_once(cache_->mats_once, [this] {
        const auto rows = matrix_.rows();
        const auto cols = matrix_.cols();
        Eigen::MatrixXd w(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double sj = 1.0 / std::sqrt(source_weights_[static_cast<size_t>(j)]);
            for (Eigen::Index i = 0; i < rows; ++i)
                w(i, j) = std::sqrt(target_weights_[static_cast<size_t>(i)]) * matrix_(i, j) * sj;
        }
        cache_->weighted = std::move(w);
        cache_->normal = cache_->weighted.transpose() * cache_->weighted;
    });
    return cache_->weighted;
}

const Eigen::MatrixXd& DiscreteOperator::normal_matrix() const {
    weighted_matrix();
    return cache_->normal;
}

const Eigen::VectorXd& DiscreteOperator::singular_values() const {
    std::call_once(cache_->svd_once, [this] {
        cache_->singular_values =
            Eigen::BDCSVD<Eigen::MatrixXd>(weighted_matrix()).singularValues();
    });
    return cache_->singular_values;
}

Spectrum forward_apply(const DiscreteOperator& op, const Spectrum& y) {
    if (y.grid != op.source_grid())
        throw DimensionError("forward_apply: spectrum grid " + y.grid.describe() +
                             " does not match operator source grid " + op.source_grid().describe());
    const Eigen::Map<const Eigen::VectorXd> yv(y.values.data(), static_cast<Eigen::Index>(y.values.size()));
    Eigen::VectorXd fv = op.matrix() * yv;
    return Spectrum(op.target_grid(), std::vector<double>(fv.data(), fv.data() + fv.size()),
                    SpectrumKind::measured);
}

double xi_relative(const DiscreteOperator& base, const DiscreteOperator& perturbed) {
    if (base.rows() != perturbed.rows() || base.cols() != perturbed.cols())
        throw DimensionError("xi_relative: operator shapes differ");
    const Eigen::MatrixXd diff = perturbed.weighted_matrix() - base.weighted_matrix();
    const double num = Eigen::BDCSVD<Eigen::MatrixXd>(diff).singularValues()(0);
    return num / base.singular_values()(0);
}

}  // namespace speckit
