#include "nhosc/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace nhosc {

HamiltonianSpec::HamiltonianSpec(const TransformParams& params, const BasisSpec& basis)
    : params_(params), basis_(basis), norm_c_(params.normalization()) {
  basis_.validate();
}

HamiltonianSpec HamiltonianSpec::with_freq(double freq) const {
  BasisSpec b = basis_;
  b.freq = freq;
  return HamiltonianSpec(params_, b);
}

OperatorMatrix build_hamiltonian(const HamiltonianSpec& spec) {
  const auto& prm = spec.params();
  const auto y = transformed_momentum(spec.basis(), prm).entries();
  const auto z = transformed_position(spec.basis(), prm).entries();
  const double a2 = prm.a_coef * prm.a_coef;
  const double b2 = prm.b_coef * prm.b_coef;
  ComplexMatrix h = (y * y) * complex(a2) + (z * z) * complex(b2);
  h *= complex(spec.norm_c());
  return OperatorMatrix(std::move(h));
}

double diagonal_expectation(const HamiltonianSpec& spec, std::size_t level, double trial_freq) {
  if (level >= spec.basis().n_dim) {
    throw Error(ErrorKind::InvalidArgument,
                "diagonal_expectation: level " + std::to_string(level) +
                    " outside basis of dimension " + std::to_string(spec.basis().n_dim));
  }
  const HamiltonianSpec trial = spec.with_freq(trial_freq);
  const auto& prm = trial.params();
  const auto y = transformed_momentum(trial.basis(), prm).entries();
  const auto z = transformed_position(trial.basis(), prm).entries();

  // (M^2)_{nn} only receives contributions from the tridiagonal neighbours.
  const std::size_t n = level;
  const std::size_t lo = n == 0 ? 0 : n - 1;
  const std::size_t hi = std::min(n + 1, trial.basis().n_dim - 1);
  complex yy{}, zz{};
  for (std::size_t k = lo; k <= hi; ++k) {
    yy += y(n, k) * y(k, n);
    zz += z(n, k) * z(k, n);
  }
  const double a2 = prm.a_coef * prm.a_coef;
  const double b2 = prm.b_coef * prm.b_coef;
  return trial.norm_c() * (a2 * yy + b2 * zz).real();
}

VariationalResult variational_frequency(const TransformParams& p) {
  VariationalResult r;
  const double a2 = p.a_coef * p.a_coef;
  const double b2 = p.b_coef * p.b_coef;
  r.numerator = b2 - p.l_coef * p.l_coef * a2;
  r.denominator = a2 - p.r_coef * p.r_coef * b2;
  if (r.denominator != 0.0) {
    const double ratio = r.numerator / r.denominator;
    if (ratio > 0.0 && std::isfinite(ratio)) r.w_v = std::sqrt(ratio);
  }
  return r;
}

const char* to_string(Regime regime) noexcept {
  return regime == Regime::RealSpectrum ? "real_spectrum" : "broken";
}

RegimeReport classify_regime(const TransformParams& p) {
  const double c = p.normalization();
  const double a2 = p.a_coef * p.a_coef;
  const double b2 = p.b_coef * p.b_coef;
  RegimeReport r;
  r.coef_p2 = c * (a2 - p.r_coef * p.r_coef * b2);
  r.coef_x2 = c * (b2 - p.l_coef * p.l_coef * a2);
  r.coef_cross = c * (p.l_coef * a2 + p.r_coef * b2);
  r.ab_plus_c2 = r.coef_p2 * r.coef_x2 + r.coef_cross * r.coef_cross;
  r.regime = (r.coef_p2 > 0.0 && r.coef_x2 > 0.0) ? Regime::RealSpectrum : Regime::Broken;
  return r;
}

double analytic_level(const TransformParams& params, std::size_t level) {
  if (classify_regime(params).regime != Regime::RealSpectrum) {
    throw Error(ErrorKind::DomainError,
                "analytic_level: parameters lie in the broken regime; no real reference spectrum");
  }
  return static_cast<double>(2 * level + 1) * std::abs(params.a_coef * params.b_coef);
}

}  // namespace nhosc
