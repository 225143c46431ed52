#include "speckit/spread_function.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace speckit {

SpreadFunctionModel::SpreadFunctionModel(double q_, double zeta_) : q(q_), zeta(zeta_) {
    if (!(q > 0.0) || !std::isfinite(q))
        throw InvalidArgumentError("SpreadFunctionModel: q must be positive, got " + std::to_string(q));
    if (!(q * (1.0 + zeta) > 0.0) || !std::isfinite(zeta))
        throw InvalidArgumentError("SpreadFunctionModel: effective width factor q*(1+zeta) must be positive");
}

double sf_width(double lambda, const SpreadFunctionModel& model) {
    if (!(lambda > 0.0))
        throw InvalidArgumentError("sf_width: lambda must be positive, got " + std::to_string(lambda));
    return model.q * (1.0 + model.zeta) * lambda;
}

double dispersion_kernel(double lambda, double lambda_prime, const SpreadFunctionModel& model) {
    const double omega = sf_width(lambda, model);
    const double d = lambda - lambda_prime;
    return (omega / (2.0 * std::numbers::pi)) / (d * d + (omega / 2.0) * (omega / 2.0));
}

double integral_width(double omega) {
    if (!(omega > 0.0))
        throw InvalidArgumentError("integral_width: omega must be positive");
    return std::numbers::pi / 2.0 * omega;
}

}  // namespace speckit
