#ifndef GENNUM_ORACLE_HPP
#define GENNUM_ORACLE_HPP

// Brute-force per-slice validators. The spectral and inertia computations
// here deliberately share no code with the Jacobi/LU path of gen_linalg.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gennum/causal.hpp"

namespace gennum::oracle {

using ld = long double;
using cld = std::complex<long double>;

struct SliceReport {
  int k = 0;
  std::vector<ld> values;     // oracle eigenvalues, descending
  std::vector<ld> pipeline;   // generalized pipeline eigenvalues at the same slice
  ld delta = 0;               // max |values - pipeline|
  ld scale = 0;               // max(1, ||A_eps||_F)
  // Perturbation check (only when E was supplied).
  ld spectral_distance = 0;   // l2 distance of ordered spectra of A and A+E
  ld bound = 0;               // sqrt(2) ||E_eps||_F
  bool within_bound = true;
};

namespace detail {

inline std::vector<ld> values_of(const GenMatrix& a, int k) {
  std::vector<ld> v;
  for (const auto& x : a.entries()) v.push_back(x.value(k));
  return v;
}

inline ld frobenius(const std::vector<ld>& a) {
  ld s = 0;
  for (auto x : a) s += x * x;
  return std::sqrt(s);
}

inline std::vector<ld> quadratic(const std::vector<ld>& a) {
  const ld m = (a[0] + a[3]) / 2, h = (a[0] - a[3]) / 2, b = (a[1] + a[2]) / 2;
  const ld r = std::hypot(h, b);
  return {m + r, m - r};
}

/// Three real roots of a symmetric 3x3 characteristic polynomial by the
/// trigonometric method.
inline std::vector<ld> cubic(const std::vector<ld>& a) {
  auto at = [&](int i, int j) { return (a[i * 3 + j] + a[j * 3 + i]) / 2; };
  const ld p1 = at(0, 1) * at(0, 1) + at(0, 2) * at(0, 2) + at(1, 2) * at(1, 2);
  const ld q = (at(0, 0) + at(1, 1) + at(2, 2)) / 3;
  if (p1 == 0) {
    std::vector<ld> d{at(0, 0), at(1, 1), at(2, 2)};
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  }
  const ld p2 = (at(0, 0) - q) * (at(0, 0) - q) + (at(1, 1) - q) * (at(1, 1) - q) + (at(2, 2) - q) * (at(2, 2) - q) + 2 * p1;
  const ld p = std::sqrt(p2 / 6);
  ld b[9];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i * 3 + j] = (at(i, j) - (i == j ? q : 0)) / p;
  const ld detb = b[0] * (b[4] * b[8] - b[5] * b[7]) - b[1] * (b[3] * b[8] - b[5] * b[6]) + b[2] * (b[3] * b[7] - b[4] * b[6]);
  const ld r = std::clamp(detb / 2, ld(-1), ld(1));
  const ld phi = std::acos(r) / 3;
  const ld pi = std::numbers::pi_v<ld>;
  const ld e1 = q + 2 * p * std::cos(phi);
  const ld e3 = q + 2 * p * std::cos(phi + 2 * pi / 3);
  const ld e2 = 3 * q - e1 - e3;
  std::vector<ld> d{e1, e2, e3};
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

/// Householder reduction of a symmetric matrix to tridiagonal form
/// (diagonal d, off-diagonal e with e[0] unused).
inline void tridiagonalize(std::vector<ld> a, int n, std::vector<ld>& d, std::vector<ld>& e) {
  d.assign(n, 0);
  e.assign(n, 0);
  for (int c = 0; c + 2 < n; ++c) {
    ld alpha = 0;
    for (int r = c + 1; r < n; ++r) alpha += a[r * n + c] * a[r * n + c];
    alpha = std::sqrt(alpha);
    if (alpha == 0) continue;
    if (a[(c + 1) * n + c] > 0) alpha = -alpha;
    std::vector<ld> v(n, 0);
    v[c + 1] = a[(c + 1) * n + c] - alpha;
    for (int r = c + 2; r < n; ++r) v[r] = a[r * n + c];
    ld vv = 0;
    for (ld x : v) vv += x * x;
    if (vv == 0) continue;
    // A <- H A H with H = I - 2 v v^t / (v^t v).
    std::vector<ld> p(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p[i] += a[i * n + j] * v[j];
    for (ld& x : p) x *= 2 / vv;
    ld k = 0;
    for (int i = 0; i < n; ++i) k += v[i] * p[i];
    k /= vv;
    for (int i = 0; i < n; ++i) p[i] -= k * v[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i * n + j] -= v[i] * p[j] + p[i] * v[j];
  }
  for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
  for (int i = 1; i < n; ++i) e[i] = a[i * n + i - 1];
}

/// Number of eigenvalues of the tridiagonal (d, e) below sigma: sign changes
/// in the Sturm sequence of leading principal characteristic polynomials.
inline int count_below(const std::vector<ld>& d, const std::vector<ld>& e, ld sigma) {
  const int n = static_cast<int>(d.size());
  const ld tiny = std::numeric_limits<ld>::min() * 1e10L;
  int neg = 0;
  ld q = 1;
  for (int i = 0; i < n; ++i) {
    q = d[i] - sigma - (i > 0 ? e[i] * e[i] / q : 0);
    if (q == 0) q = -tiny;
    if (q < 0) ++neg;
  }
  return neg;
}

/// Eigenvalues of a symmetric matrix by bisection inside the Gershgorin
/// interval of its tridiagonal form.
inline std::vector<ld> bisection(const std::vector<ld>& a_in, int n) {
  std::vector<ld> a(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = (a_in[i * n + j] + a_in[j * n + i]) / 2;
  std::vector<ld> d, e;
  tridiagonalize(a, n, d, e);
  ld lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < n; ++i) {
    const ld r = (i > 0 ? std::fabs(e[i]) : 0) + (i + 1 < n ? std::fabs(e[i + 1]) : 0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const ld pad = std::max(std::fabs(lo), std::fabs(hi)) * 1e-15L + std::numeric_limits<ld>::min();
  lo -= pad;
  hi += pad;
  std::vector<ld> out(n);
  for (int i = 0; i < n; ++i) {
    // i-th largest eigenvalue: the point where count_below crosses n - i - 1.
    ld l = lo, h = hi;
    for (int it = 0; it < 200 && h - l > 0; ++it) {
      const ld mid = l + (h - l) / 2;
      if (mid == l || mid == h) break;
      if (count_below(d, e, mid) >= n - i) h = mid;
      else l = mid;
    }
    out[i] = l + (h - l) / 2;
  }
  return out;
}

/// Coefficients c_0..c_n (c_n = 1) of det(lambda I - A) by Faddeev-LeVerrier.
inline std::vector<ld> char_poly(const std::vector<ld>& a, int n) {
  std::vector<ld> c(n + 1, 0);
  c[n] = 1;
  std::vector<ld> m(n * n, 0), am(n * n);
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<ld> next(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ld s = 0;
        for (int l = 0; l < n; ++l) s += a[i * n + l] * m[l * n + j];
        next[i * n + j] = s + (i == j ? c[n - k + 1] : 0);
      }
    m = next;
    ld tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) tr += a[i * n + l] * m[l * n + i];
    c[n - k] = -tr / k;
  }
  return c;
}

/// All complex roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<cld> roots(const std::vector<ld>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  ld radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::fabs(c[i]));
  radius = 1 + radius;
  std::vector<cld> z(n);
  const cld seed(0.4L, 0.9L);
  for (int i = 0; i < n; ++i) z[i] = radius * std::pow(seed, i);
  auto eval = [&](cld x) {
    cld s = c[n];
    for (int i = n - 1; i >= 0; --i) s = s * x + c[i];
    return s;
  };
  // Stop a few sweeps after the corrections reach the rounding level.
  int polish = 3;
  for (int it = 0; it < 2000 && polish > 0; ++it) {
    ld change = 0;
    for (int i = 0; i < n; ++i) {
      cld den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (den == cld(0)) den = cld(std::numeric_limits<ld>::epsilon(), 0);
      const cld d = eval(z[i]) / den;
      z[i] -= d;
      change = std::max(change, std::abs(d));
    }
    if (change <= 8 * std::numeric_limits<ld>::epsilon() * radius) --polish;
  }
  return z;
}

}  // namespace detail

/// Eigenvalues of one symmetric slice by the closed form (n <= 3) or
/// bisection (n <= 6).
inline std::vector<ld> slice_eigenvalues(const std::vector<ld>& a, int n) {
  if (n > 6) throw Error(ErrorCode::DimensionTooLarge, "oracle supports n <= 6");
  if (n == 1) return {a[0]};
  if (n == 2) return detail::quadratic(a);
  if (n == 3) return detail::cubic(a);
  return detail::bisection(a, n);
}

/// Spectrum of a general real slice (complex), ordered by descending real part.
inline std::vector<cld> slice_spectrum(const std::vector<ld>& a, int n) {
  if (n > 6) throw Error(ErrorCode::DimensionTooLarge, "oracle supports n <= 6");
  auto z = detail::roots(detail::char_poly(a, n));
  std::stable_sort(z.begin(), z.end(), [](const cld& x, const cld& y) { return x.real() > y.real(); });
  return z;
}

/// Per-slice comparison of the generalized eigenvalues with an independent
/// computation; with E, also checks the perturbation bound on A + E.
inline std::vector<SliceReport> slice_eigen_oracle(const GenMatrix& a, const std::optional<GenMatrix>& e = std::nullopt) {
  const int n = a.dim();
  if (n > 6) throw Error(ErrorCode::DimensionTooLarge, "oracle supports n <= 6");
  const auto eig = gen_eigen(a);
  const EpsGrid& g = a.grid();
  std::vector<SliceReport> out;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    SliceReport r;
    r.k = k;
    const auto av = detail::values_of(a, k);
    r.values = slice_eigenvalues(av, n);
    for (int i = 0; i < n; ++i) r.pipeline.push_back(eig.eigenvalues[i].value(k));
    for (int i = 0; i < n; ++i) r.delta = std::max(r.delta, std::fabs(r.values[i] - r.pipeline[i]));
    r.scale = std::max<ld>(1, detail::frobenius(av));
    if (e) {
      const auto ev = detail::values_of(*e, k);
      std::vector<ld> pert(n * n);
      for (int i = 0; i < n * n; ++i) pert[i] = av[i] + ev[i];
      const auto mu = slice_spectrum(pert, n);
      ld d2 = 0;
      for (int i = 0; i < n; ++i) d2 += std::norm(mu[i] - cld(r.values[i], 0));
      r.spectral_distance = std::sqrt(d2);
      r.bound = std::sqrt(ld(2)) * detail::frobenius(ev);
      r.within_bound = r.spectral_distance <= r.bound + 1e-10L;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- causality

struct CausalSlice {
  int k = 0;
  ld norm = 0;           // g_eps(u_eps, u_eps)
  std::string kind;      // "timelike", "spacelike" or "null"
  bool lorentzian = true;
};

struct CausalOracleReport {
  std::vector<CausalSlice> slices;  // tail slices
  CausalKind expected = CausalKind::Unclassifiable;
  bool uniform = false;  // same classical kind on the tail, bounded away from 0 by eps^M_cap
};

/// Classical slice-wise causal character of u under g.
inline CausalOracleReport slice_causality_oracle(const GenMatrix& g, const GenVector& u) {
  const int n = g.dim();
  const EpsGrid& grid = g.grid();
  CausalOracleReport rep;
  bool all_t = true, all_s = true, all_n = true, bounded_away = true;
  for (int k = grid.tail_start; k <= grid.k_max; ++k) {
    CausalSlice s;
    s.k = k;
    auto gv = detail::values_of(g, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gv[i * n + j] = (gv[i * n + j] + gv[j * n + i]) / 2;
    std::vector<ld> td, te;
    detail::tridiagonalize(gv, n, td, te);
    const int neg = detail::count_below(td, te, 0);
    const int nonpos = detail::count_below(td, te, std::numeric_limits<ld>::min());
    s.lorentzian = neg == 1 && nonpos == 1;
    if (!s.lorentzian) throw Error(ErrorCode::SliceNotLorentzian, "slice k=" + std::to_string(k) + " is not Lorentzian");
    ld q = 0, scale = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ld t = gv[i * n + j] * u[i].value(k) * u[j].value(k);
        q += t;
        scale += std::fabs(t);
      }
    s.norm = q;
    const ld tol = 64 * std::numeric_limits<ld>::epsilon() * scale;
    if (q < -tol) s.kind = "timelike", all_s = all_n = false;
    else if (q > tol) s.kind = "spacelike", all_t = all_n = false;
    else s.kind = "null", all_t = all_s = false;
    if (s.kind != "null" && std::log2(std::fabs(q)) <= -static_cast<ld>(grid.m_cap) * k) bounded_away = false;
    rep.slices.push_back(std::move(s));
  }
  if (all_t) rep.expected = CausalKind::TimeLike;
  else if (all_s) rep.expected = CausalKind::SpaceLike;
  else if (all_n) rep.expected = CausalKind::Null;
  rep.uniform = (all_t || all_s || all_n) && bounded_away;
  return rep;
}

// ---------------------------------------------------------------- freeness

struct FreenessReport {
  std::vector<ld> max_abs;   // per tail slice
  std::vector<int> zero_slices;
  int exponent = 0;          // smallest m with max_i |v_i| >= eps^m on the tail
  bool free = false;
};

/// Eventually-nonzero slice test: v_eps != 0 with a power-law lower bound.
inline FreenessReport freeness_oracle(const GenVector& v) {
  const EpsGrid& g = v.grid();
  FreenessReport r;
  int m = 0;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    ld mx = 0;
    for (int i = 0; i < v.dim(); ++i) mx = std::max(mx, std::fabs(static_cast<ld>(v[i].value(k))));
    r.max_abs.push_back(mx);
    if (mx == 0 || std::log2(mx) <= -static_cast<ld>(g.m_cap) * k) {
      r.zero_slices.push_back(k);
      continue;
    }
    m = std::max(m, static_cast<int>(std::ceil(-std::log2(mx) / k - 1e-12L)));
  }
  r.free = r.zero_slices.empty();
  r.exponent = m;
  return r;
}

}  // namespace gennum::oracle

#endif  // GENNUM_ORACLE_HPP
