#ifndef GENNUM_SLICE_LINALG_HPP
#define GENNUM_SLICE_LINALG_HPP

// Dense linear algebra on a single eps-slice. Matrices are row-major vectors
// of length n*n.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gennum/bounded.hpp"

namespace gennum::slice {

template <class R>
using bmat = std::vector<bounded<R>>;

namespace detail {

template <class R>
bool any_error(const bmat<R>& a) {
  return std::any_of(a.begin(), a.end(), [](const bounded<R>& x) { return x.err > 0; });
}

}  // namespace detail

/// Determinant. Cofactor expansion for n <= 3 (no division, exact on dyadic
/// data), LU with partial pivoting above that.
template <class R>
bounded<R> det(bmat<R> a, int n) {
  auto at = [&](int i, int j) -> const bounded<R>& { return a[i * n + j]; };
  if (n == 1) return at(0, 0);
  if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  if (n == 3)
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  const bool inexact = detail::any_error(a);
  bounded<R> d(R(1), 0);
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (a[r * n + c].mag() > a[p * n + c].mag()) p = r;
    if (a[p * n + c].value == 0) return {R(0), inexact ? std::numeric_limits<long double>::infinity() : 0.0L};
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      d = -d;
    }
    d = d * a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const bounded<R> f = a[r * n + c] / a[c * n + c];
      for (int j = c + 1; j < n; ++j) a[r * n + j] = a[r * n + j] - f * a[c * n + j];
    }
  }
  return d;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting. Returns false
/// (and leaves `out` zero with infinite error) for an exactly singular slice.
template <class R>
bool inverse(bmat<R> a, int n, bmat<R>& out) {
  out.assign(n * n, bounded<R>(R(0), 0));
  for (int i = 0; i < n; ++i) out[i * n + i] = bounded<R>(R(1), 0);
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (a[r * n + c].mag() > a[p * n + c].mag()) p = r;
    if (a[p * n + c].value == 0) {
      out.assign(n * n, bounded<R>(R(0), std::numeric_limits<long double>::infinity()));
      return false;
    }
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a[p * n + j], a[c * n + j]);
        std::swap(out[p * n + j], out[c * n + j]);
      }
    const bounded<R> piv = a[c * n + c];
    for (int j = 0; j < n; ++j) {
      a[c * n + j] = a[c * n + j] / piv;
      out[c * n + j] = out[c * n + j] / piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r * n + c].value == 0) continue;
      const bounded<R> f = a[r * n + c];
      for (int j = 0; j < n; ++j) {
        a[r * n + j] = a[r * n + j] - f * a[c * n + j];
        out[r * n + j] = out[r * n + j] - f * out[c * n + j];
      }
    }
  }
  return true;
}

/// Solves a x = b. Returns false for an exactly singular slice.
template <class R>
bool solve(const bmat<R>& a, int n, const std::vector<bounded<R>>& b, std::vector<bounded<R>>& x) {
  bmat<R> inv;
  if (!inverse(a, n, inv)) {
    x.assign(n, bounded<R>(R(0), std::numeric_limits<long double>::infinity()));
    return false;
  }
  x.assign(n, bounded<R>(R(0), 0));
  for (int i = 0; i < n; ++i) {
    bounded<R> s = inv[i * n] * b[0];
    for (int j = 1; j < n; ++j) s = s + inv[i * n + j] * b[j];
    x[i] = s;
  }
  return true;
}

/// Output of the cyclic Jacobi method: eigenvalues in the order the sweep
/// leaves them, and eigenvectors as rows of `vectors`.
template <class R>
struct JacobiResult {
  std::vector<R> values;
  std::vector<R> vectors;  // row i is the eigenvector of values[i]
  R off{};                 // Frobenius norm of the remaining off-diagonal part
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix. Stops when the
/// off-diagonal Frobenius mass drops to unit roundoff times ||A||_F.
template <class R>
JacobiResult<R> jacobi(std::vector<R> a, int n, int max_sweeps = 30) {
  using std::abs;
  using std::sqrt;
  JacobiResult<R> res;
  std::vector<R> v(n * n, R(0));
  for (int i = 0; i < n; ++i) v[i * n + i] = R(1);
  R fro(0);
  for (const auto& x : a) fro += x * x;
  fro = sqrt(fro);
  const R tol = R(real_traits<R>::unit_roundoff()) * fro;
  auto off = [&] {
    R s(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return R(sqrt(s));
  };
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    const R o = off();
    if (o <= tol || o == 0) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const R apq = a[p * n + q];
        if (apq == 0) continue;
        const R theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        R t;
        if (abs(theta) > R(1e150L)) {
          t = R(1) / (2 * theta);
        } else {
          t = R(1) / (abs(theta) + sqrt(theta * theta + 1));
          if (theta < 0) t = -t;
        }
        const R c = R(1) / sqrt(t * t + 1);
        const R s = t * c;
        for (int k = 0; k < n; ++k) {
          const R akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const R apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const R vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
  }
  res.sweeps = sweep;
  res.off = off();
  res.values.resize(n);
  res.vectors.resize(n * n);
  for (int i = 0; i < n; ++i) {
    res.values[i] = a[i * n + i];
    for (int k = 0; k < n; ++k) res.vectors[i * n + k] = v[k * n + i];
  }
  return res;
}

}  // namespace gennum::slice

#endif  // GENNUM_SLICE_LINALG_HPP
