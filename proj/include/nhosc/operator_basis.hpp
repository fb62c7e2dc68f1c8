#pragma once

#include <cstddef>
#include <vector>

#include "nhosc/dense_matrix.hpp"

namespace nhosc {

/// Truncated Fock-basis representation (units hbar = m = 1).
struct BasisSpec {
  std::size_t n_dim = 100;
  double freq = 1.0;   // basis oscillator frequency w
  double scale = 1.0;  // overall length scale s

  /// Throws InvalidArgument unless n_dim >= 2, freq > 0 and scale > 0.
  void validate() const;
};

/// Coefficients of x -> x + iRp, p -> p + iLx and of the Hamiltonian
/// C [A^2 (p+iLx)^2 + B^2 (x+iRp)^2].
struct TransformParams {
  double l_coef = 0.0;
  double r_coef = 0.0;
  double a_coef = 1.0;
  double b_coef = 1.0;

  /// C = 1 / (1 + L R). Throws SingularNormalization when 1 + L R == 0.
  double normalization() const;

  /// (L, R, A, B) -> (R, L, B, A); pairs with w -> 1/w.
  TransformParams dual() const { return {r_coef, l_coef, b_coef, a_coef}; }
};

/// sqrt(k) for k = 1 .. n_dim-1.
std::vector<double> ladder_weights(std::size_t n_dim);

/// x = s / sqrt(2w) (a + a^dagger); real symmetric tridiagonal.
OperatorMatrix position_matrix(const BasisSpec& basis);

/// p = i s sqrt(w/2) (a^dagger - a); Hermitian, purely imaginary.
OperatorMatrix momentum_matrix(const BasisSpec& basis);

/// y = p + i L x (unnormalized).
OperatorMatrix transformed_momentum(const BasisSpec& basis, const TransformParams& params);

/// z = x + i R p (unnormalized). Real for real R.
OperatorMatrix transformed_position(const BasisSpec& basis, const TransformParams& params);

/// a b - b a.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

struct CommutatorDefect {
  std::size_t n_dim = 0;
  double max_diag_deviation = 0.0;  // max |d_k - 1| over k = 0 .. n_dim-2
  complex last_diagonal;            // d_{n_dim-1}; equals 1 - n_dim for s = 1
  double max_offdiag = 0.0;
};

/// Evaluates (z y - y z) / (i (1 + L R)). In a finite basis the last diagonal
/// entry carries the truncation defect 1 - N, which is reported separately.
CommutatorDefect normalized_commutator_check(const BasisSpec& basis,
                                             const TransformParams& params);

}  // namespace nhosc
