#include "nhosc/operator_basis.hpp"

#include <cmath>
#include <string>

namespace nhosc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::SingularNormalization: return "singular normalization";
    case ErrorKind::DomainError: return "domain error";
    case ErrorKind::SolverFailure: return "solver failure";
    case ErrorKind::IoFailure: return "I/O failure";
  }
  return "unknown error";
}

void BasisSpec::validate() const {
  if (n_dim < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "basis dimension must be at least 2, got " + std::to_string(n_dim));
  }
  if (!(freq > 0.0) || !std::isfinite(freq)) {
    throw Error(ErrorKind::InvalidArgument, "basis frequency must be positive and finite");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidArgument, "basis scale must be positive and finite");
  }
}

double TransformParams::normalization() const {
  const double denom = 1.0 + l_coef * r_coef;
  if (denom == 0.0 || !std::isfinite(1.0 / denom)) {
    throw Error(ErrorKind::SingularNormalization, "1 + L*R vanishes; C = 1/(1+LR) is undefined");
  }
  return 1.0 / denom;
}

std::vector<double> ladder_weights(std::size_t n_dim) {
  if (n_dim < 2) {
    throw Error(ErrorKind::InvalidArgument, "ladder_weights: n_dim must be at least 2");
  }
  std::vector<double> m(n_dim - 1);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::sqrt(static_cast<double>(k + 1));
  return m;
}

OperatorMatrix position_matrix(const BasisSpec& basis) {
  basis.validate();
  const auto m = ladder_weights(basis.n_dim);
  const double pref = basis.scale / std::sqrt(2.0 * basis.freq);
  ComplexMatrix x(basis.n_dim);
  for (std::size_t k = 0; k < m.size(); ++k) {
    x(k + 1, k) = pref * m[k];
    x(k, k + 1) = pref * m[k];
  }
  return OperatorMatrix(std::move(x));
}

OperatorMatrix momentum_matrix(const BasisSpec& basis) {
  basis.validate();
  const auto m = ladder_weights(basis.n_dim);
  // i s / sqrt(2/w) = i s sqrt(w/2)
  const double pref = basis.scale / std::sqrt(2.0 / basis.freq);
  ComplexMatrix p(basis.n_dim);
  for (std::size_t k = 0; k < m.size(); ++k) {
    p(k + 1, k) = complex(0.0, pref * m[k]);
    p(k, k + 1) = complex(0.0, -pref * m[k]);
  }
  return OperatorMatrix(std::move(p));
}

namespace {

// a + i*coef*b, formed componentwise so that exact zeros stay exact.
ComplexMatrix add_i_times(const ComplexMatrix& a, double coef, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const complex v = b(i, j);
      out(i, j) += complex(-coef * v.imag(), coef * v.real());
    }
  }
  return out;
}

}  // namespace

OperatorMatrix transformed_momentum(const BasisSpec& basis, const TransformParams& params) {
  const auto x = position_matrix(basis);
  const auto p = momentum_matrix(basis);
  return OperatorMatrix(add_i_times(p.entries(), params.l_coef, x.entries()));
}

OperatorMatrix transformed_position(const BasisSpec& basis, const TransformParams& params) {
  const auto x = position_matrix(basis);
  const auto p = momentum_matrix(basis);
  return OperatorMatrix(add_i_times(x.entries(), params.r_coef, p.entries()));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "commutator: operands have dimensions " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
  return OperatorMatrix(a.entries() * b.entries() - b.entries() * a.entries());
}

CommutatorDefect normalized_commutator_check(const BasisSpec& basis,
                                             const TransformParams& params) {
  const double c = params.normalization();
  const auto y = transformed_momentum(basis, params);
  const auto z = transformed_position(basis, params);
  const auto zy = commutator(z, y);

  const std::size_t n = basis.n_dim;
  // divide by i: (u + iv)/i = v - iu
  const complex scale = complex(0.0, -c);
  CommutatorDefect d;
  d.n_dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const complex v = zy(i, j) * scale;
      if (i != j) {
        d.max_offdiag = std::max(d.max_offdiag, std::abs(v));
      } else if (i + 1 < n) {
        d.max_diag_deviation = std::max(d.max_diag_deviation, std::abs(v - 1.0));
      } else {
        d.last_diagonal = v;
      }
    }
  }
  return d;
}

}  // namespace nhosc
