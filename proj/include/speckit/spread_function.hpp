#pragma once

#include "speckit/errors.hpp"

namespace speckit {

/// Dispersion (Lorentzian) spread function with width proportional to
/// wavelength: omega(lambda) = q*(1+zeta)*lambda. zeta is the relative
/// width perturbation used to model an inexactly known instrument.
struct SpreadFunctionModel {
    double q = 0.015;   ///< width-to-wavelength ratio, > 0
    double zeta = 0.0;  ///< relative width perturbation

    SpreadFunctionModel(double q_, double zeta_);
};

/// Full width of the spread function at half its peak height (nm).
double sf_width(double lambda, const SpreadFunctionModel& model);

/// K(lambda, lambda') = (omega/2pi) / ((lambda-lambda')^2 + (omega/2)^2),
/// omega = sf_width(lambda). Unit area over the real line; peak 2/(pi*omega).
double dispersion_kernel(double lambda, double lambda_prime, const SpreadFunctionModel& model);

/// Integral width (area over height) of the dispersion SF: (pi/2)*omega.
double integral_width(double omega);

}  // namespace speckit
