#pragma once

#include <cstddef>
#include <optional>

#include "nhosc/operator_basis.hpp"

namespace nhosc {

class HamiltonianSpec {
 public:
  /// Validates the basis and the normalization 1 + L R != 0.
  HamiltonianSpec(const TransformParams& params, const BasisSpec& basis);

  const TransformParams& params() const noexcept { return params_; }
  const BasisSpec& basis() const noexcept { return basis_; }
  double norm_c() const noexcept { return norm_c_; }

  HamiltonianSpec with_freq(double freq) const;

 private:
  TransformParams params_;
  BasisSpec basis_;
  double norm_c_;
};

/// H = C [A^2 y^2 + B^2 z^2]. Exactly real for real parameters.
OperatorMatrix build_hamiltonian(const HamiltonianSpec& spec);

/// <n|H|n> evaluated in a basis of frequency trial_freq.
double diagonal_expectation(const HamiltonianSpec& spec, std::size_t level,
                            double trial_freq);

struct VariationalResult {
  std::optional<double> w_v;  // empty when the ratio is not positive
  double numerator = 0.0;     // B^2 - L^2 A^2
  double denominator = 0.0;   // A^2 - R^2 B^2

  bool defined() const noexcept { return w_v.has_value(); }
};

/// Stationary point of <n|H|n>_w in w.
VariationalResult variational_frequency(const TransformParams& params);

enum class Regime { RealSpectrum, Broken };

const char* to_string(Regime regime) noexcept;

/// Expansion H = a p^2 + b x^2 + i c (xp + px).
struct RegimeReport {
  double coef_p2 = 0.0;     // a = C (A^2 - R^2 B^2)
  double coef_x2 = 0.0;     // b = C (B^2 - L^2 A^2)
  double coef_cross = 0.0;  // c = C (L A^2 + R B^2)
  double ab_plus_c2 = 0.0;  // equals (A B)^2 identically
  Regime regime = Regime::Broken;
};

RegimeReport classify_regime(const TransformParams& params);

/// (2n+1)|AB|. Throws DomainError outside the RealSpectrum regime.
double analytic_level(const TransformParams& params, std::size_t level);

}  // namespace nhosc
