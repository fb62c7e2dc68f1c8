#include "nhosc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace nhosc {

const char* to_string(SortOrder order) noexcept {
  return order == SortOrder::ReThenIm ? "re_then_im" : "modulus_then_phase";
}

BalanceResult balance(const RealMatrix& m) {
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  const std::size_t n = m.dim();
  BalanceResult out{m, std::vector<double>(n, 1.0)};
  RealMatrix& a = out.balanced;

  bool converged = false;
  while (!converged) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;

      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        out.scaling[i] *= f;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return out;
}

RealMatrix hessenberg_reduce(const RealMatrix& m) {
  const std::size_t n = m.dim();
  RealMatrix h = m;
  std::vector<double> u(n);

  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t top = col + 1;
    double tail = 0.0;
    for (std::size_t i = top + 1; i < n; ++i) tail += std::abs(h(i, col));
    if (tail == 0.0) continue;  // column already in Hessenberg shape

    double scale = std::abs(h(top, col)) + tail;
    double sigma = 0.0;
    for (std::size_t i = top; i < n; ++i) {
      u[i] = h(i, col) / scale;
      sigma += u[i] * u[i];
    }
    double alpha = std::sqrt(sigma);
    if (u[top] > 0.0) alpha = -alpha;
    const double beta = sigma - u[top] * alpha;  // = |u|^2 / 2 after the update
    u[top] -= alpha;

    // Left application: rows top..n-1.
    for (std::size_t j = col; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = top; i < n; ++i) f += u[i] * h(i, j);
      f /= beta;
      for (std::size_t i = top; i < n; ++i) h(i, j) -= f * u[i];
    }
    // Right application: columns top..n-1.
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      for (std::size_t j = top; j < n; ++j) f += u[j] * h(i, j);
      f /= beta;
      for (std::size_t j = top; j < n; ++j) h(i, j) -= f * u[j];
    }
    h(top, col) = scale * alpha;
    for (std::size_t i = top + 1; i < n; ++i) h(i, col) = 0.0;
  }
  return h;
}

namespace {

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
// Follows the classic EISPACK hqr structure. h is destroyed.
std::vector<complex> hessenberg_qr(RealMatrix& h, int sweeps_per_dim) {
  const int nn = static_cast<int>(h.dim());
  std::vector<complex> eig(nn);
  if (nn == 0) return eig;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double norm = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));

  const int iteration_cap = sweeps_per_dim * nn;
  int total_iterations = 0;
  int n = nn - 1;
  int its = 0;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, t = 0, w = 0, x = 0, y = 0, z = 0;

  while (n >= 0) {
    // Find the lowest negligible subdiagonal entry.
    int l = n;
    while (l > 0) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) < eps * s) break;
      --l;
    }

    x = h(n, n);
    if (l == n) {
      // One root.
      eig[n] = complex(x + exshift, 0.0);
      --n;
      its = 0;
      continue;
    }

    y = h(n - 1, n - 1);
    w = h(n, n - 1) * h(n - 1, n);
    if (l == n - 1) {
      // Trailing 2x2 block.
      p = 0.5 * (y - x);
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      x += exshift;
      if (q >= 0.0) {
        z = p >= 0.0 ? p + z : p - z;
        const double hi = x + z;
        const double lo = z != 0.0 ? x - w / z : hi;
        eig[n - 1] = complex(hi, 0.0);
        eig[n] = complex(lo, 0.0);
      } else {
        eig[n - 1] = complex(x + p, z);
        eig[n] = complex(x + p, -z);
      }
      n -= 2;
      its = 0;
      continue;
    }

    if (total_iterations >= iteration_cap) {
      throw SolverError(static_cast<std::size_t>(n),
                        "QR iteration did not converge within " + std::to_string(iteration_cap) +
                            " sweeps; subdiagonal entry at row " + std::to_string(n) +
                            " failed to deflate");
    }

    // Exceptional shift after every 10 stalled sweeps.
    if (its > 0 && its % 10 == 0) {
      exshift += x;
      for (int i = 0; i <= n; ++i) h(i, i) -= x;
      s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
      x = y = 0.75 * s;
      w = -0.4375 * s * s;
    }
    ++its;
    ++total_iterations;

    // Look for two consecutive small subdiagonal entries.
    int m = n - 2;
    for (; m >= l; --m) {
      z = h(m, m);
      r = x - z;
      s = y - z;
      p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
      q = h(m + 1, m + 1) - z - r - s;
      r = h(m + 2, m + 1);
      s = std::abs(p) + std::abs(q) + std::abs(r);
      p /= s;
      q /= s;
      r /= s;
      if (m == l) break;
      const double lhs = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
      const double rhs =
          std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
      if (lhs < eps * rhs) break;
    }

    for (int i = m + 2; i <= n; ++i) {
      h(i, i - 2) = 0.0;
      if (i > m + 2) h(i, i - 3) = 0.0;
    }

    // Double QR sweep on rows l..n, columns m..n.
    for (int k = m; k <= n - 1; ++k) {
      const bool notlast = k != n - 1;
      if (k != m) {
        p = h(k, k - 1);
        q = h(k + 1, k - 1);
        r = notlast ? h(k + 2, k - 1) : 0.0;
        x = std::abs(p) + std::abs(q) + std::abs(r);
        if (x == 0.0) continue;
        p /= x;
        q /= x;
        r /= x;
      }
      s = std::sqrt(p * p + q * q + r * r);
      if (p < 0.0) s = -s;
      if (s == 0.0) continue;

      if (k != m) {
        h(k, k - 1) = -s * x;
      } else if (l != m) {
        h(k, k - 1) = -h(k, k - 1);
      }
      p += s;
      x = p / s;
      y = q / s;
      z = r / s;
      q /= p;
      r /= p;

      for (int j = k; j < nn; ++j) {
        t = h(k, j) + q * h(k + 1, j);
        if (notlast) {
          t += r * h(k + 2, j);
          h(k + 2, j) -= t * z;
        }
        h(k, j) -= t * x;
        h(k + 1, j) -= t * y;
      }
      const int last_row = std::min(n, k + 3);
      for (int i = 0; i <= last_row; ++i) {
        t = x * h(i, k) + y * h(i, k + 1);
        if (notlast) {
          t += z * h(i, k + 2);
          h(i, k + 2) -= t * r;
        }
        h(i, k) -= t;
        h(i, k + 1) -= t * q;
      }
    }
  }
  return eig;
}

bool less_re_then_im(const complex& a, const complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

bool less_modulus_then_phase(const complex& a, const complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  return std::arg(a) < std::arg(b);
}

}  // namespace

Spectrum eigenvalues(const RealMatrix& m, const SolverOptions& options) {
  const std::size_t n = m.dim();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "eigenvalues: empty matrix");
  for (double v : m.data()) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "eigenvalues: non-finite entry");
  }

  RealMatrix h = hessenberg_reduce(balance(m).balanced);
  Spectrum s;
  s.values = hessenberg_qr(h, options.sweeps_per_dim);
  s.matrix_norm = m.frobenius_norm();
  s.classify_tol = kDefaultTolRelNorm * s.matrix_norm;

  // Similarity preserves the trace; a violation means the iteration went wrong.
  const double sum = std::accumulate(s.values.begin(), s.values.end(), complex{}).real();
  if (std::abs(sum - m.trace()) > 1e-9 * std::max(s.matrix_norm, 1.0)) {
    throw SolverError(0, "eigenvalue sum departs from the trace by " +
                             std::to_string(std::abs(sum - m.trace())));
  }
  return sort_spectrum(std::move(s), SortOrder::ReThenIm);
}

Spectrum eigenvalues(const OperatorMatrix& m) { return eigenvalues(m.real_matrix()); }

Spectrum sort_spectrum(Spectrum s, SortOrder order) {
  if (order == SortOrder::ReThenIm) {
    std::ranges::stable_sort(s.values, less_re_then_im);
  } else {
    std::ranges::stable_sort(s.values, less_modulus_then_phase);
  }
  s.sort_order = order;
  return s;
}

ClassifiedSpectrum classify(const Spectrum& s, double tol_abs, double tol_rel) {
  ClassifiedSpectrum out;
  std::vector<complex> upper, lower;
  for (const complex& v : s.values) {
    const double tol = std::max(tol_abs, tol_rel * std::abs(v));
    if (std::abs(v.imag()) <= tol) {
      out.real_values.push_back(v.real());
    } else if (v.imag() > 0.0) {
      upper.push_back(v);
    } else {
      lower.push_back(v);
    }
  }
  if (upper.size() != lower.size()) {
    throw Error(ErrorKind::DomainError,
                "classify: " + std::to_string(upper.size()) + " values above and " +
                    std::to_string(lower.size()) +
                    " below the real axis; spectrum is not closed under conjugation");
  }

  std::vector<bool> used(lower.size(), false);
  for (const complex& v : upper) {
    std::size_t best = lower.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lower.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(lower[k] - std::conj(v));
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    const double tol = std::max(tol_abs, tol_rel * std::abs(v));
    if (best == lower.size() || best_dist > 10.0 * tol) {
      throw Error(ErrorKind::DomainError,
                  "classify: no conjugate partner for eigenvalue (" + std::to_string(v.real()) +
                      ", " + std::to_string(v.imag()) + ")");
    }
    used[best] = true;
    const complex partner = lower[best];
    out.complex_pairs.push_back({0.5 * (v.real() + partner.real()),
                                 0.5 * (v.imag() - partner.imag())});
  }

  std::ranges::sort(out.real_values);
  std::ranges::sort(out.complex_pairs, [](const ComplexPair& a, const ComplexPair& b) {
    if (a.real_part != b.real_part) return a.real_part < b.real_part;
    return a.imag_magnitude < b.imag_magnitude;
  });
  out.n_real = out.real_values.size();
  out.n_complex = out.complex_pairs.size();
  return out;
}

ClassifiedSpectrum classify(const Spectrum& s) { return classify(s, s.classify_tol, kDefaultTolRel); }

namespace {

double one_way_matching(const std::vector<complex>& a, const std::vector<complex>& b) {
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const complex& v : a) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(v - b[k]);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

}  // namespace

double multiset_distance(const std::vector<complex>& a, const std::vector<complex>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "multiset_distance: multisets differ in size");
  }
  if (a.empty()) return 0.0;
  return std::max(one_way_matching(a, b), one_way_matching(b, a));
}

}  // namespace nhosc
