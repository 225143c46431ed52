#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "speckit/envelope.hpp"
#include "speckit/wavelength_grid.hpp"

namespace speckit {

/// Doubles are written with 12 significant digits everywhere so that a
/// written-then-read value is identical to printed precision.
std::string format_number(double x);

/// Two-column spectrum file: `wavelength_nm, intensity` per line, strictly
/// increasing wavelengths, `#` comment lines ignored. The kind is carried
/// in a `# kind:` comment when written and recovered when read.
void write_spectrum(const std::filesystem::path& path, const Spectrum& s);

/// Accepts comma- or whitespace-separated columns. The grid is inferred
/// from the nodes, which must be uniformly spaced and increasing.
Spectrum read_spectrum(const std::filesystem::path& path);

/// Curve bundle: `log10_alpha, sigma_rel, curve_id` long-format rows.
void write_curve_bundle(const std::filesystem::path& path, const std::vector<ErrorCurve>& curves);
std::vector<ErrorCurve> read_curve_bundle(const std::filesystem::path& path);

/// Single curve: `log10_alpha, sigma_rel`.
void write_curve(const std::filesystem::path& path, const ErrorCurve& curve);
ErrorCurve read_curve(const std::filesystem::path& path);

/// Plot-ready envelope table: `log10_alpha, sigma_rel, epsilon_g_<g>...`
/// with one epsilon column per scanned g.
void write_envelope_table(const std::filesystem::path& path, const ErrorCurve& upper,
                          const EnvelopeFamily& family);

/// Whole-file FNV-1a 64-bit digest, hex-encoded (for run manifests).
std::string file_digest(const std::filesystem::path& path);

/// Write a whole file at once; removes the partial file on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace speckit
