#include "nhosc/spectra_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace nhosc {

const char* to_string(SweepAxis axis) noexcept {
  return axis == SweepAxis::BasisFrequency ? "basis_frequency" : "truncation_size";
}

IsospectralReport isospectral_report(const TransformParams& params, const BasisSpec& basis,
                                     double report_tol, SortOrder order) {
  if (classify_regime(params).regime != Regime::RealSpectrum) {
    throw Error(ErrorKind::DomainError,
                "isospectral_report: parameters lie in the broken regime; no analytic reference");
  }
  const HamiltonianSpec spec(params, basis);
  const Spectrum spectrum = sort_spectrum(eigenvalues(build_hamiltonian(spec)), order);
  const ClassifiedSpectrum classes = classify(spectrum);

  IsospectralReport report;
  report.n_real = classes.n_real;
  report.n_complex_pairs = classes.n_complex;
  report.matrix_norm = spectrum.matrix_norm;
  report.config_echo = {params, basis, report_tol, order, variational_frequency(params).w_v};

  const double s2 = basis.scale * basis.scale;
  const double realness_abs = spectrum.classify_tol;
  report.rows.reserve(spectrum.values.size());
  for (std::size_t n = 0; n < spectrum.values.size(); ++n) {
    ReportRow row;
    row.level = n;
    row.epsilon = analytic_level(params, n) * s2;
    row.computed = spectrum.values[n];
    row.abs_dev = std::abs(row.computed - row.epsilon);
    const bool real = std::abs(row.computed.imag()) <=
                      std::max(realness_abs, kDefaultTolRel * std::abs(row.computed));
    row.remark = (real && row.abs_dev <= report_tol) ? Remark::Iso : Remark::NoIso;
    if (row.remark == Remark::NoIso && !report.first_deviation_index) {
      report.first_deviation_index = n;
    }
    report.rows.push_back(row);
  }
  return report;
}

DualityResult duality_check(const TransformParams& params, const BasisSpec& basis) {
  DualityResult out;
  out.dual_params = params.dual();
  out.dual_basis = basis;
  out.dual_basis.freq = 1.0 / basis.freq;

  auto dual_future = std::async(std::launch::async, [&] {
    return eigenvalues(build_hamiltonian(HamiltonianSpec(out.dual_params, out.dual_basis)));
  });
  const Spectrum original = eigenvalues(build_hamiltonian(HamiltonianSpec(params, basis)));
  const Spectrum dual = dual_future.get();
  out.matrix_norm = original.matrix_norm;
  out.distance = multiset_distance(original.values, dual.values);
  return out;
}

namespace {

SweepPoint summarize(double axis_value, const TransformParams& params, const BasisSpec& basis,
                     double report_tol) {
  SweepPoint pt;
  pt.axis_value = axis_value;
  pt.n_dim = basis.n_dim;
  try {
    const IsospectralReport report = isospectral_report(params, basis, report_tol);
    pt.n_real = report.n_real;
    pt.n_complex_pairs = report.n_complex_pairs;
    pt.first_deviation_index = report.first_deviation_index;
    const std::size_t stop = report.first_deviation_index.value_or(report.rows.size());
    for (std::size_t n = 0; n < stop; ++n) {
      pt.max_abs_dev_below_first_deviation =
          std::max(pt.max_abs_dev_below_first_deviation, report.rows[n].abs_dev);
    }
  } catch (const std::exception& e) {
    pt.error = e.what();
  }
  return pt;
}

template <typename Axis, typename MakeBasis>
SweepResult run_sweep(SweepAxis axis, const TransformParams& params, std::span<const Axis> values,
                      double report_tol, MakeBasis make_basis) {
  SweepResult result;
  result.axis = axis;
  result.params = params;
  result.report_tol = report_tol;

  std::vector<Axis> sorted(values.begin(), values.end());
  std::ranges::sort(sorted);

  std::vector<std::future<SweepPoint>> futures;
  futures.reserve(sorted.size());
  for (const Axis v : sorted) {
    futures.push_back(std::async(std::launch::async, [&, v] {
      return summarize(static_cast<double>(v), params, make_basis(v), report_tol);
    }));
  }
  for (auto& f : futures) result.points.push_back(f.get());
  return result;
}

}  // namespace

SweepResult sweep_frequency(const TransformParams& params, std::size_t n_dim,
                            std::span<const double> w_values, double report_tol, double scale) {
  return run_sweep(SweepAxis::BasisFrequency, params, w_values, report_tol, [&](double w) {
    return BasisSpec{n_dim, w, scale};
  });
}

SweepResult sweep_truncation(const TransformParams& params, double freq,
                             std::span<const std::size_t> n_values, double report_tol,
                             double scale) {
  return run_sweep(SweepAxis::TruncationSize, params, n_values, report_tol,
                   [&](std::size_t n) { return BasisSpec{n, freq, scale}; });
}

}  // namespace nhosc
