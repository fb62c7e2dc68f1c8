#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nhosc/eigensolver.hpp"
#include "nhosc/hamiltonian.hpp"

namespace nhosc {

inline constexpr double kDefaultReportTol = 1e-3;

enum class Remark { Iso, NoIso };

struct ReportRow {
  std::size_t level = 0;
  double epsilon = 0.0;
  complex computed;
  double abs_dev = 0.0;
  Remark remark = Remark::NoIso;
};

struct ReportConfig {
  TransformParams params;
  BasisSpec basis;
  double report_tol = kDefaultReportTol;
  SortOrder sort_order = SortOrder::ReThenIm;
  std::optional<double> variational_freq;
};

struct IsospectralReport {
  std::vector<ReportRow> rows;  // one per level, ascending
  std::optional<std::size_t> first_deviation_index;
  std::size_t n_real = 0;
  std::size_t n_complex_pairs = 0;
  double matrix_norm = 0.0;
  ReportConfig config_echo;
};

/// Solves H, aligns the n-th sorted eigenvalue with the reference
/// (2n+1)|AB| s^2 and marks each level. A level is Iso iff it is classified
/// real and within report_tol of the reference. Throws DomainError in the
/// Broken regime.
IsospectralReport isospectral_report(const TransformParams& params, const BasisSpec& basis,
                                     double report_tol = kDefaultReportTol,
                                     SortOrder order = SortOrder::ReThenIm);

struct DualityResult {
  double distance = 0.0;
  double matrix_norm = 0.0;  // Frobenius norm of the original H
  TransformParams dual_params;
  BasisSpec dual_basis;
};

/// Multiset distance between the spectra of (L,R,A,B,w) and (R,L,B,A,1/w).
DualityResult duality_check(const TransformParams& params, const BasisSpec& basis);

enum class SweepAxis { BasisFrequency, TruncationSize };

const char* to_string(SweepAxis axis) noexcept;

struct SweepPoint {
  double axis_value = 0.0;
  std::size_t n_dim = 0;
  std::size_t n_real = 0;
  std::size_t n_complex_pairs = 0;
  std::optional<std::size_t> first_deviation_index;
  double max_abs_dev_below_first_deviation = 0.0;
  std::optional<std::string> error;  // set when this point failed
};

struct SweepResult {
  SweepAxis axis = SweepAxis::BasisFrequency;
  TransformParams params;
  double report_tol = kDefaultReportTol;
  std::vector<SweepPoint> points;  // ascending axis value
};

/// One report summary per basis frequency. Points run concurrently; failed
/// points carry an error message and the sweep continues.
SweepResult sweep_frequency(const TransformParams& params, std::size_t n_dim,
                            std::span<const double> w_values,
                            double report_tol = kDefaultReportTol, double scale = 1.0);

SweepResult sweep_truncation(const TransformParams& params, double freq,
                             std::span<const std::size_t> n_values,
                             double report_tol = kDefaultReportTol, double scale = 1.0);

}  // namespace nhosc
