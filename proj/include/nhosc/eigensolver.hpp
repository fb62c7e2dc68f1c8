#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nhosc/dense_matrix.hpp"

namespace nhosc {

enum class SortOrder {
  ReThenIm,          // ascending real part, ties by imaginary part
  ModulusThenPhase,  // ascending |v|, ties by arg(v) in (-pi, pi]
};

const char* to_string(SortOrder order) noexcept;

struct Spectrum {
  std::vector<complex> values;
  SortOrder sort_order = SortOrder::ReThenIm;
  double classify_tol = 0.0;  // default absolute realness tolerance
  double matrix_norm = 0.0;   // Frobenius norm of the source matrix
};

struct ComplexPair {
  double real_part;
  double imag_magnitude;
};

struct ClassifiedSpectrum {
  std::vector<double> real_values;         // ascending
  std::vector<ComplexPair> complex_pairs;  // ascending real part
  std::size_t n_real = 0;
  std::size_t n_complex = 0;
};

struct BalanceResult {
  RealMatrix balanced;          // D^-1 m D
  std::vector<double> scaling;  // diagonal of D, powers of two
};

/// Diagonal similarity scaling (radix 2) that roughly equalizes the
/// off-diagonal row and column 1-norms.
BalanceResult balance(const RealMatrix& m);

/// Orthogonal similarity to upper Hessenberg form by Householder reflections.
RealMatrix hessenberg_reduce(const RealMatrix& m);

inline constexpr double kDefaultTolRelNorm = 1e-8;  // tol_abs = 1e-8 ||m||_F
inline constexpr double kDefaultTolRel = 1e-10;

struct SolverOptions {
  int sweeps_per_dim = 30;  // total QR sweep budget is sweeps_per_dim * N
};

/// All eigenvalues of a real matrix via balancing, Hessenberg reduction and
/// Francis double-shift QR. Result is sorted ReThenIm. Throws SolverError if
/// the sweep budget is exhausted.
Spectrum eigenvalues(const RealMatrix& m, const SolverOptions& options = {});

/// Requires m.is_real().
Spectrum eigenvalues(const OperatorMatrix& m);

Spectrum sort_spectrum(Spectrum s, SortOrder order);

/// v counts as real iff |Im v| <= max(tol_abs, tol_rel |v|). The rest are
/// greedily paired by nearest conjugate; an unpaired value throws DomainError.
ClassifiedSpectrum classify(const Spectrum& s, double tol_abs, double tol_rel);

/// classify with tol_abs = s.classify_tol and tol_rel = kDefaultTolRel.
ClassifiedSpectrum classify(const Spectrum& s);

/// Largest distance in a greedy nearest-neighbour matching of two multisets
/// of equal size, symmetrized over both matching directions.
double multiset_distance(const std::vector<complex>& a, const std::vector<complex>& b);

}  // namespace nhosc
