#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nhosc/error.hpp"

namespace nhosc {

using complex = std::complex<double>;

/// Dense square matrix, row-major. Operators in the truncated Fock basis are
/// banded, but the eigensolver works on dense Hessenberg form and the
/// dimensions involved are small, so no sparsity is exploited.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, T{}) {}
  SquareMatrix(std::size_t dim, std::vector<T> row_major)
      : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "SquareMatrix: data length does not equal dim*dim");
    }
  }

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  T& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * dim_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  SquareMatrix transpose() const {
    SquareMatrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T sum{};
    for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
    return sum;
  }

  double frobenius_norm() const {
    double sum = 0.0;
    for (const T& v : data_) sum += std::norm(v);
    return std::sqrt(sum);
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : data_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  SquareMatrix& operator*=(const T& s) {
    for (T& v : data_) v *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, const T& s) { return a *= s; }
  friend SquareMatrix operator*(const T& s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    a.require_same_dim(b);
    const std::size_t n = a.dim_;
    SquareMatrix c(n);
    // i-k-j order; exact zeros are skipped, which matters for banded operands.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  void require_same_dim(const SquareMatrix& o) const {
    if (o.dim_ != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "SquareMatrix: dimension mismatch");
    }
  }

  std::size_t dim_ = 0;
  std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<complex>;

/// Complex operator matrix tagged with whether every entry is exactly real.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(ComplexMatrix entries)
      : entries_(std::move(entries)) {
    real_ = std::ranges::all_of(entries_.data(),
                                [](const complex& v) { return v.imag() == 0.0; });
  }

  std::size_t dim() const noexcept { return entries_.dim(); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  bool is_real() const noexcept { return real_; }
  complex operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }

  double max_abs_imag() const {
    double m = 0.0;
    for (const complex& v : entries_.data()) m = std::max(m, std::abs(v.imag()));
    return m;
  }

  /// Real part as a real matrix. Throws DomainError unless is_real().
  RealMatrix real_matrix() const {
    if (!real_) {
      throw Error(ErrorKind::DomainError,
                  "operator matrix has non-zero imaginary entries");
    }
    RealMatrix r(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) r(i, j) = entries_(i, j).real();
    return r;
  }

 private:
  ComplexMatrix entries_;
  bool real_ = true;
};

}  // namespace nhosc
