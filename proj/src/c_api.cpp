#include "nhosc/nhosc.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "nhosc/eigensolver.hpp"
#include "nhosc/hamiltonian.hpp"
#include "nhosc/serialization.hpp"
#include "nhosc/spectra_analysis.hpp"

struct nhosc_spectrum {
  nhosc::Spectrum spectrum;
  std::optional<nhosc::TransformParams> params;
  std::optional<nhosc::BasisSpec> basis;
};

struct nhosc_report {
  nhosc::IsospectralReport report;
};

struct nhosc_sweep {
  nhosc::SweepResult sweep;
};

namespace {

thread_local std::string g_last_error;

nhosc_status set_error(nhosc_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

nhosc_status status_for(nhosc::ErrorKind kind) {
  switch (kind) {
    case nhosc::ErrorKind::SolverFailure: return NHOSC_ERROR_SOLVER;
    case nhosc::ErrorKind::IoFailure: return NHOSC_ERROR_IO;
    default: return NHOSC_ERROR_CONFIG;
  }
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
nhosc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return NHOSC_OK;
  } catch (const nhosc::Error& e) {
    return set_error(status_for(e.kind()), std::string(nhosc::to_string(e.kind())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return set_error(NHOSC_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(NHOSC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return set_error(NHOSC_ERROR_INTERNAL, "unknown exception");
  }
}

#define NHOSC_REQUIRE(ptr)                                                            \
  do {                                                                                \
    if ((ptr) == nullptr) return set_error(NHOSC_ERROR_CONFIG, "null argument: " #ptr); \
  } while (0)

nhosc::BasisSpec to_cpp(const nhosc_basis& b) { return {b.n_dim, b.freq, b.scale}; }
nhosc::TransformParams to_cpp(const nhosc_params& p) {
  return {p.l_coef, p.r_coef, p.a_coef, p.b_coef};
}
nhosc::ExportFormat to_cpp(nhosc_format f) {
  return f == NHOSC_FORMAT_CSV ? nhosc::ExportFormat::Csv : nhosc::ExportFormat::Json;
}
nhosc::SortOrder to_cpp(nhosc_sort_order o) {
  return o == NHOSC_SORT_MODULUS_THEN_PHASE ? nhosc::SortOrder::ModulusThenPhase
                                            : nhosc::SortOrder::ReThenIm;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nhosc_status check_format(nhosc_format f) {
  if (f != NHOSC_FORMAT_JSON && f != NHOSC_FORMAT_CSV) {
    return set_error(NHOSC_ERROR_CONFIG, "unknown export format");
  }
  return NHOSC_OK;
}

}  // namespace

extern "C" {

const char* nhosc_version(void) { return "1.0.0"; }

const char* nhosc_last_error(void) { return g_last_error.c_str(); }

void nhosc_string_free(char* s) { std::free(s); }

nhosc_status nhosc_variational_frequency(const nhosc_params* params, nhosc_variational* out) {
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const auto r = nhosc::variational_frequency(to_cpp(*params));
    *out = {r.defined() ? 1 : 0, r.w_v.value_or(0.0), r.numerator, r.denominator};
  });
}

nhosc_status nhosc_classify_regime(const nhosc_params* params, nhosc_regime* out) {
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const auto r = nhosc::classify_regime(to_cpp(*params));
    *out = {r.coef_p2, r.coef_x2, r.coef_cross, r.ab_plus_c2,
            r.regime == nhosc::Regime::RealSpectrum ? 1 : 0};
  });
}

nhosc_status nhosc_analytic_level(const nhosc_params* params, size_t level, double* out) {
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] { *out = nhosc::analytic_level(to_cpp(*params), level); });
}

nhosc_status nhosc_diagonal_expectation(const nhosc_basis* basis, const nhosc_params* params,
                                        size_t level, double trial_freq, double* out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const nhosc::HamiltonianSpec spec(to_cpp(*params), to_cpp(*basis));
    *out = nhosc::diagonal_expectation(spec, level, trial_freq);
  });
}

nhosc_status nhosc_hamiltonian_matrix(const nhosc_basis* basis, const nhosc_params* params,
                                      double* out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const auto h = nhosc::build_hamiltonian(nhosc::HamiltonianSpec(to_cpp(*params), to_cpp(*basis)))
                       .real_matrix();
    std::memcpy(out, h.data().data(), h.data().size() * sizeof(double));
  });
}

nhosc_status nhosc_commutator_check(const nhosc_basis* basis, const nhosc_params* params,
                                    nhosc_commutator_defect* out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const auto d = nhosc::normalized_commutator_check(to_cpp(*basis), to_cpp(*params));
    *out = {d.n_dim, d.max_diag_deviation, d.last_diagonal.real(), d.last_diagonal.imag(),
            d.max_offdiag};
  });
}

nhosc_status nhosc_commutator_serialize(const nhosc_basis* basis, const nhosc_params* params,
                                        nhosc_format format, const char* label, char** out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  if (check_format(format) != NHOSC_OK) return NHOSC_ERROR_CONFIG;
  return guarded([&] {
    const auto b = to_cpp(*basis);
    const auto p = to_cpp(*params);
    const auto d = nhosc::normalized_commutator_check(b, p);
    *out = duplicate(nhosc::serialize_commutator(d, p, b, to_cpp(format), label ? label : ""));
  });
}

nhosc_status nhosc_duality_check(const nhosc_basis* basis, const nhosc_params* params,
                                 nhosc_duality* out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const auto r = nhosc::duality_check(to_cpp(*params), to_cpp(*basis));
    *out = {r.distance, r.matrix_norm};
  });
}

nhosc_status nhosc_duality_serialize(const nhosc_basis* basis, const nhosc_params* params,
                                     nhosc_format format, const char* label, char** out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  if (check_format(format) != NHOSC_OK) return NHOSC_ERROR_CONFIG;
  return guarded([&] {
    const auto b = to_cpp(*basis);
    const auto p = to_cpp(*params);
    const auto r = nhosc::duality_check(p, b);
    *out = duplicate(nhosc::serialize_duality(r, p, b, to_cpp(format), label ? label : ""));
  });
}

nhosc_status nhosc_spectrum_compute(const nhosc_basis* basis, const nhosc_params* params,
                                    nhosc_spectrum** out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto b = to_cpp(*basis);
    const auto p = to_cpp(*params);
    auto s = nhosc::eigenvalues(nhosc::build_hamiltonian(nhosc::HamiltonianSpec(p, b)));
    *out = new nhosc_spectrum{std::move(s), p, b};
  });
}

nhosc_status nhosc_spectrum_from_matrix(size_t dim, const double* row_major, nhosc_spectrum** out) {
  NHOSC_REQUIRE(row_major);
  NHOSC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    nhosc::RealMatrix m(dim, std::vector<double>(row_major, row_major + dim * dim));
    *out = new nhosc_spectrum{nhosc::eigenvalues(m), std::nullopt, std::nullopt};
  });
}

size_t nhosc_spectrum_size(const nhosc_spectrum* s) { return s ? s->spectrum.values.size() : 0; }

nhosc_status nhosc_spectrum_value(const nhosc_spectrum* s, size_t index, double* re, double* im) {
  NHOSC_REQUIRE(s);
  NHOSC_REQUIRE(re);
  NHOSC_REQUIRE(im);
  if (index >= s->spectrum.values.size()) {
    return set_error(NHOSC_ERROR_CONFIG, "spectrum index out of range");
  }
  *re = s->spectrum.values[index].real();
  *im = s->spectrum.values[index].imag();
  return NHOSC_OK;
}

nhosc_status nhosc_spectrum_sort(nhosc_spectrum* s, nhosc_sort_order order) {
  NHOSC_REQUIRE(s);
  return guarded([&] { s->spectrum = nhosc::sort_spectrum(std::move(s->spectrum), to_cpp(order)); });
}

nhosc_status nhosc_spectrum_classify(const nhosc_spectrum* s, double tol_abs, double tol_rel,
                                     nhosc_classification* out) {
  NHOSC_REQUIRE(s);
  NHOSC_REQUIRE(out);
  return guarded([&] {
    const double ta = tol_abs < 0.0 ? s->spectrum.classify_tol : tol_abs;
    const double tr = tol_rel < 0.0 ? nhosc::kDefaultTolRel : tol_rel;
    const auto c = nhosc::classify(s->spectrum, ta, tr);
    *out = {c.n_real, c.n_complex};
  });
}

nhosc_status nhosc_spectrum_serialize(const nhosc_spectrum* s, nhosc_format format, size_t count,
                                      const char* label, char** out) {
  NHOSC_REQUIRE(s);
  NHOSC_REQUIRE(out);
  if (check_format(format) != NHOSC_OK) return NHOSC_ERROR_CONFIG;
  if (!s->params || !s->basis) {
    return set_error(NHOSC_ERROR_CONFIG, "spectrum has no model configuration to echo");
  }
  return guarded([&] {
    const auto c = nhosc::classify(s->spectrum);
    *out = duplicate(nhosc::serialize_spectrum(s->spectrum, c, *s->params, *s->basis,
                                               to_cpp(format), count, label ? label : ""));
  });
}

void nhosc_spectrum_free(nhosc_spectrum* s) { delete s; }

nhosc_status nhosc_report_compute(const nhosc_basis* basis, const nhosc_params* params,
                                  double report_tol, nhosc_sort_order order, nhosc_report** out) {
  NHOSC_REQUIRE(basis);
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto r = nhosc::isospectral_report(to_cpp(*params), to_cpp(*basis), report_tol, to_cpp(order));
    *out = new nhosc_report{std::move(r)};
  });
}

size_t nhosc_report_size(const nhosc_report* r) { return r ? r->report.rows.size() : 0; }

nhosc_status nhosc_report_row_at(const nhosc_report* r, size_t index, nhosc_report_row* out) {
  NHOSC_REQUIRE(r);
  NHOSC_REQUIRE(out);
  if (index >= r->report.rows.size()) {
    return set_error(NHOSC_ERROR_CONFIG, "report row index out of range");
  }
  const auto& row = r->report.rows[index];
  *out = {row.level,      row.epsilon, row.computed.real(), row.computed.imag(),
          row.abs_dev, row.remark == nhosc::Remark::Iso ? 1 : 0};
  return NHOSC_OK;
}

nhosc_status nhosc_report_get_summary(const nhosc_report* r, nhosc_report_summary* out) {
  NHOSC_REQUIRE(r);
  NHOSC_REQUIRE(out);
  const auto& rep = r->report;
  *out = {rep.rows.size(),
          rep.n_real,
          rep.n_complex_pairs,
          rep.first_deviation_index ? 1 : 0,
          rep.first_deviation_index.value_or(0),
          rep.matrix_norm};
  return NHOSC_OK;
}

nhosc_status nhosc_report_serialize(const nhosc_report* r, nhosc_format format, size_t count,
                                    const char* label, char** out) {
  NHOSC_REQUIRE(r);
  NHOSC_REQUIRE(out);
  if (check_format(format) != NHOSC_OK) return NHOSC_ERROR_CONFIG;
  return guarded([&] {
    *out = duplicate(nhosc::serialize_report(r->report, to_cpp(format), count, label ? label : ""));
  });
}

nhosc_status nhosc_report_export(const nhosc_report* r, nhosc_format format, size_t count,
                                 const char* label, const char* path) {
  NHOSC_REQUIRE(r);
  NHOSC_REQUIRE(path);
  if (check_format(format) != NHOSC_OK) return NHOSC_ERROR_CONFIG;
  return guarded([&] {
    nhosc::write_text_file(
        path, nhosc::serialize_report(r->report, to_cpp(format), count, label ? label : ""));
  });
}

void nhosc_report_free(nhosc_report* r) { delete r; }

nhosc_status nhosc_sweep_frequency(const nhosc_params* params, size_t n_dim, double scale,
                                   const double* w_values, size_t count, double report_tol,
                                   nhosc_sweep** out) {
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  if (count > 0) NHOSC_REQUIRE(w_values);
  *out = nullptr;
  return guarded([&] {
    for (size_t k = 0; k < count; ++k) {
      if (!(w_values[k] > 0.0)) {
        throw nhosc::Error(nhosc::ErrorKind::InvalidArgument, "sweep frequencies must be positive");
      }
    }
    auto s = nhosc::sweep_frequency(to_cpp(*params), n_dim, {w_values, count}, report_tol, scale);
    *out = new nhosc_sweep{std::move(s)};
  });
}

nhosc_status nhosc_sweep_truncation(const nhosc_params* params, double freq, double scale,
                                    const size_t* n_values, size_t count, double report_tol,
                                    nhosc_sweep** out) {
  NHOSC_REQUIRE(params);
  NHOSC_REQUIRE(out);
  if (count > 0) NHOSC_REQUIRE(n_values);
  *out = nullptr;
  return guarded([&] {
    for (size_t k = 0; k < count; ++k) {
      if (n_values[k] < 2) {
        throw nhosc::Error(nhosc::ErrorKind::InvalidArgument, "sweep truncation sizes must be >= 2");
      }
    }
    auto s = nhosc::sweep_truncation(to_cpp(*params), freq, {n_values, count}, report_tol, scale);
    *out = new nhosc_sweep{std::move(s)};
  });
}

size_t nhosc_sweep_size(const nhosc_sweep* s) { return s ? s->sweep.points.size() : 0; }

nhosc_status nhosc_sweep_point_at(const nhosc_sweep* s, size_t index, nhosc_sweep_point* out) {
  NHOSC_REQUIRE(s);
  NHOSC_REQUIRE(out);
  if (index >= s->sweep.points.size()) {
    return set_error(NHOSC_ERROR_CONFIG, "sweep point index out of range");
  }
  const auto& p = s->sweep.points[index];
  *out = {p.axis_value,
          p.n_dim,
          p.n_real,
          p.n_complex_pairs,
          p.first_deviation_index ? 1 : 0,
          p.first_deviation_index.value_or(0),
          p.max_abs_dev_below_first_deviation,
          p.error ? 1 : 0};
  return NHOSC_OK;
}

const char* nhosc_sweep_point_error(const nhosc_sweep* s, size_t index) {
  if (s == nullptr || index >= s->sweep.points.size()) return nullptr;
  const auto& err = s->sweep.points[index].error;
  return err ? err->c_str() : nullptr;
}

nhosc_status nhosc_sweep_serialize(const nhosc_sweep* s, nhosc_format format, const char* label,
                                   char** out) {
  NHOSC_REQUIRE(s);
  NHOSC_REQUIRE(out);
  if (check_format(format) != NHOSC_OK) return NHOSC_ERROR_CONFIG;
  return guarded([&] {
    *out = duplicate(nhosc::serialize_sweep(s->sweep, to_cpp(format), label ? label : ""));
  });
}

void nhosc_sweep_free(nhosc_sweep* s) { delete s; }

nhosc_status nhosc_write_file(const char* path, const char* contents) {
  NHOSC_REQUIRE(path);
  NHOSC_REQUIRE(contents);
  return guarded([&] { nhosc::write_text_file(path, contents); });
}

}  // extern "C"
