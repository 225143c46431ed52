#include "speckit/wavelength_grid.hpp"

#include <cmath>
#include <sstream>

namespace speckit {

WavelengthGrid::WavelengthGrid(double start_, double step_, int count_)
    : start(start_), step(step_), count(count_) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw InvalidArgumentError("WavelengthGrid: step must be positive, got " + std::to_string(step));
    if (count < 2)
        throw InvalidArgumentError("WavelengthGrid: count must be >= 2, got " + std::to_string(count));
    if (!std::isfinite(start))
        throw InvalidArgumentError("WavelengthGrid: start must be finite");
}

std::vector<double> WavelengthGrid::nodes() const {
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = node(i);
    return out;
}

std::vector<double> WavelengthGrid::trapezoid_weights() const {
    std::vector<double> w(static_cast<size_t>(count), step);
    w.front() = step / 2.0;
    w.back() = step / 2.0;
    return w;
}

std::string WavelengthGrid::describe() const {
    std::ostringstream os;
    os << "[" << start << ", " << last() << "] step " << step << " (" << count << " nodes)";
    return os.str();
}

const char* to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::exact: return "exact";
        case SpectrumKind::measured: return "measured";
        case SpectrumKind::restored: return "restored";
    }
    return "measured";
}

SpectrumKind spectrum_kind_from_string(const std::string& s) {
    if (s == "exact") return SpectrumKind::exact;
    if (s == "measured") return SpectrumKind::measured;
    if (s == "restored") return SpectrumKind::restored;
    throw InvalidArgumentError("unknown spectrum kind: " + s);
}

Spectrum::Spectrum(WavelengthGrid grid_, std::vector<double> values_, SpectrumKind kind_)
    : grid(grid_), values(std::move(values_)), kind(kind_) {
    if (values.size() != static_cast<size_t>(grid.count))
        throw DimensionError("Spectrum: " + std::to_string(values.size()) + " values on a grid of " +
                             std::to_string(grid.count) + " nodes");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgumentError("Spectrum: non-finite intensity value");
}

double weighted_norm(const WavelengthGrid& grid, const std::vector<double>& values) {
    if (values.size() != static_cast<size_t>(grid.count))
        throw DimensionError("weighted_norm: value count does not match grid");
    const auto w = grid.trapezoid_weights();
    double acc = 0.0;
    for (size_t i = 0; i < values.size(); ++i) acc += w[i] * values[i] * values[i];
    return std::sqrt(acc);
}

double weighted_norm(const Spectrum& s) { return weighted_norm(s.grid, s.values); }

}  // namespace speckit
