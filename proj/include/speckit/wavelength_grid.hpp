#pragma once

#include <string>
#include <vector>

#include "speckit/errors.hpp"

namespace speckit {

/// Uniform sampling of a wavelength interval [start, start + (count-1)*step].
struct WavelengthGrid {
    double start = 0.0;   ///< first node (nm)
    double step = 1.0;    ///< node spacing h (nm), > 0
    int count = 2;        ///< number of nodes, >= 2

    WavelengthGrid(double start_, double step_, int count_);

    double node(int i) const { return start + i * step; }
    double last() const { return start + (count - 1) * step; }
    std::vector<double> nodes() const;

    /// Trapezoidal quadrature weights: h/2 at the two end nodes, h inside.
    std::vector<double> trapezoid_weights() const;

    bool operator==(const WavelengthGrid& other) const {
        return start == other.start && step == other.step && count == other.count;
    }
    bool operator!=(const WavelengthGrid& other) const { return !(*this == other); }

    std::string describe() const;
};

enum class SpectrumKind { exact, measured, restored };

const char* to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(const std::string& s);

/// Intensity values attached to a WavelengthGrid.
struct Spectrum {
    WavelengthGrid grid;
    std::vector<double> values;
    SpectrumKind kind = SpectrumKind::measured;

    Spectrum(WavelengthGrid grid_, std::vector<double> values_, SpectrumKind kind_);
};

/// Quadrature-weighted discrete L2 norm of nodal values on a grid.
double weighted_norm(const WavelengthGrid& grid, const std::vector<double>& values);
double weighted_norm(const Spectrum& s);

}  // namespace speckit
