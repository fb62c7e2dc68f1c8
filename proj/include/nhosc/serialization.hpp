#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "nhosc/operator_basis.hpp"
#include "nhosc/spectra_analysis.hpp"

namespace nhosc {

enum class ExportFormat { Json, Csv };

// Deterministic, locale-independent rendering: doubles use 17 significant
// digits, keys appear in a fixed order, lines end in LF.

/// "%.17g" rendering, independent of the global locale.
std::string format_double(double v);

std::string serialize_report(const IsospectralReport& report, ExportFormat format,
                             std::size_t row_count, std::string_view command);

std::string serialize_spectrum(const Spectrum& spectrum, const ClassifiedSpectrum& classes,
                               const TransformParams& params, const BasisSpec& basis,
                               ExportFormat format, std::size_t row_count,
                               std::string_view command);

std::string serialize_sweep(const SweepResult& sweep, ExportFormat format,
                            std::string_view command);

std::string serialize_commutator(const CommutatorDefect& defect, const TransformParams& params,
                                 const BasisSpec& basis, ExportFormat format,
                                 std::string_view command);

std::string serialize_duality(const DualityResult& result, const TransformParams& params,
                              const BasisSpec& basis, ExportFormat format,
                              std::string_view command);

/// Writes contents verbatim. Throws IoFailure with the OS error text.
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace nhosc
