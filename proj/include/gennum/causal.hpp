#ifndef GENNUM_CAUSAL_HPP
#define GENNUM_CAUSAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gennum/gen_linalg.hpp"

namespace gennum {

/// Symmetric non-degenerate bilinear form with certified index and inverse.
template <class R>
class basic_bilinear_form {
 public:
  using matrix = basic_gen_matrix<R>;

  explicit basic_bilinear_form(const matrix& g) : g_(symmetrize(g)), index_(matrix_index(g_)), inv_(inverse(g_)) {}

  const matrix& g() const { return g_; }
  const matrix& inverse_metric() const { return inv_; }
  const MatrixIndex& index() const { return index_; }
  int dim() const { return g_.dim(); }
  const EpsGrid& grid() const { return g_.grid(); }
  bool lorentzian() const { return index_.lorentzian(dim()); }
  bool positive_definite() const { return index_.positive_definite(dim()); }

  basic_gen_number<R> operator()(const basic_gen_vector<R>& u, const basic_gen_vector<R>& v) const { return form(g_, u, v); }
  basic_gen_vector<R> lower(const basic_gen_vector<R>& u) const { return g_ * u; }
  basic_gen_vector<R> raise(const basic_gen_vector<R>& u) const { return inv_ * u; }

  void require_lorentzian() const {
    if (!lorentzian()) {
      std::string idx = index_.defined() ? "(" + std::to_string(*index_.nu_minus) + " negative, " +
                                               std::to_string(*index_.nu_plus) + " positive)"
                                         : "undefined";
      throw Error(ErrorCode::NotLorentzian, "form has index " + idx);
    }
  }

 private:
  matrix g_;
  MatrixIndex index_;
  matrix inv_;
};

using BilinearForm = basic_bilinear_form<long double>;

template <class R>
inline basic_gen_matrix<R> minkowski(int n, const EpsGrid& g) {
  std::vector<basic_gen_number<R>> d(n, basic_gen_number<R>::constant(R(1), g));
  d[0] = basic_gen_number<R>::constant(R(-1), g);
  return basic_gen_matrix<R>::diag(d);
}

// ---------------------------------------------------------------- causality

enum class CausalKind { TimeLike, Null, SpaceLike, Unclassifiable };

inline std::string_view to_string(CausalKind c) {
  switch (c) {
    case CausalKind::TimeLike: return "TimeLike";
    case CausalKind::Null: return "Null";
    case CausalKind::SpaceLike: return "SpaceLike";
    case CausalKind::Unclassifiable: return "Unclassifiable";
  }
  return "?";
}

template <class R>
struct basic_causal_class {
  CausalKind kind = CausalKind::Unclassifiable;
  basic_gen_number<R> norm;  // g(u,u)
  Verdict negative, positive, negligible_norm, free, zero;
};
using CausalClass = basic_causal_class<long double>;

/// Causal character of u under a Lorentzian form.
template <class R>
inline basic_causal_class<R> classify(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u) {
  g.require_lorentzian();
  basic_causal_class<R> c;
  c.norm = g(u, u);
  c.negative = is_strictly_negative(c.norm);
  c.positive = is_strictly_positive(c.norm);
  c.negligible_norm = is_negligible(c.norm);
  c.free = is_free(u);
  c.zero = all_negligible(u);
  if (c.negative.is_holds()) c.kind = CausalKind::TimeLike;
  else if (c.positive.is_holds()) c.kind = CausalKind::SpaceLike;
  else if (c.negligible_norm.is_holds() && (c.free.is_holds() || c.zero.is_holds())) c.kind = CausalKind::Null;
  else c.kind = CausalKind::Unclassifiable;
  return c;
}

template <class R>
inline void require_timelike(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u, const char* what) {
  const auto c = classify(g, u);
  if (c.kind != CausalKind::TimeLike)
    throw Error(ErrorCode::NotTimeLike, std::string(what) + " is " + std::string(to_string(c.kind)));
}

/// Same time orientation: g(u,v) strictly negative.
template <class R>
inline Verdict same_orientation(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u, const basic_gen_vector<R>& v) {
  require_timelike(g, u, "u");
  require_timelike(g, v, "v");
  return is_strictly_negative(g(u, v));
}

/// u / sqrt(-g(u,u)) for a time-like u.
template <class R>
inline basic_gen_vector<R> unit_normalize(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u) {
  require_timelike(g, u, "u");
  return inverse(sqrt(-g(u, u))) * u;
}

// ---------------------------------------------------------------- u-perp

template <class R>
struct basic_complement {
  std::vector<basic_gen_vector<R>> vectors;  // n-1 vectors spanning u-perp
  basic_gen_matrix<R> gram;                  // g(xi_A, xi_B)
  basic_gen_number<R> det_identity_residual;  // det(gram) det(g') - g'_11
};
using Complement = basic_complement<long double>;

/// Basis of the g-orthogonal complement of a time-like u. In coordinates
/// adapted to u (first basis vector u) the complement is spanned by the rows
/// 2..n of the inverse metric.
template <class R>
inline basic_complement<R> orthogonal_complement_basis(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u) {
  require_timelike(g, u, "u");
  const int n = g.dim();
  const auto basis = extend_to_basis(u);
  const auto p = coordinate_matrix(basis);
  const auto gp = p.transpose() * g.g() * p;
  const auto gpi = inverse(gp);
  basic_complement<R> out;
  for (int a = 1; a < n; ++a) out.vectors.push_back(p * gpi.row(a));
  std::vector<basic_gen_number<R>> ge;
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) ge.push_back(g(out.vectors[a - 1], out.vectors[b - 1]));
  out.gram = basic_gen_matrix<R>(n - 1, std::move(ge));
  std::vector<basic_gen_number<R>> sub;
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) sub.push_back(gpi(a, b));
  out.det_identity_residual = det(basic_gen_matrix<R>(n - 1, std::move(sub))) * det(gp) - gp(0, 0);
  return out;
}

template <class R>
struct basic_decomposition {
  basic_gen_number<R> a;
  basic_gen_vector<R> w;
};

/// v = a u + w with w in u-perp.
template <class R>
inline basic_decomposition<R> decompose(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u, const basic_gen_vector<R>& v) {
  require_timelike(g, u, "u");
  const auto a = g(u, v) / g(u, u);
  return {a, v - a * u};
}

/// Representative repair: given pairing(u, v) = sum_i u_i v_i negligible and
/// u free, rewrites v at the dominant coordinate of u so that the pairing
/// vanishes on every tail sample. Samples before the tail are set to 0.
template <class R>
inline basic_gen_vector<R> repair_orthogonal(const basic_gen_vector<R>& u, const basic_gen_vector<R>& v) {
  const Verdict f = is_free(u);
  if (!f.is_holds()) throw Error(ErrorCode::NotFree, "u is not free");
  const Verdict o = is_negligible(dot(u, v));
  if (!o.is_holds()) throw Error(ErrorCode::NotOrthogonal, "u^t v is not negligible: " + o.note);
  const int n = u.dim();
  const EpsGrid& g = u.grid();
  const auto dom = dominant_index(u);
  return basic_gen_vector<R>::assemble(g, n, [&](int k) {
    std::vector<bounded<R>> s(n, bounded<R>(R(0), 0));
    if (k < g.tail_start) return s;
    const auto us = u.slice(k);
    s = v.slice(k);
    const int j = dom[k - 1];
    for (int it = 0; it < 4; ++it) {
      R pair(0);
      for (int i = 0; i < n; ++i) pair += us[i].value * s[i].value;
      if (pair == 0) break;
      s[j].value -= pair / us[j].value;
    }
    long double e = 0;
    for (int i = 0; i < n; ++i) e += us[i].mag() * v.slice(k)[i].err + us[i].err * s[i].mag();
    s[j].err = e / us[j].mag() + s[j].err;
    return s;
  });
}

/// Same repair for the pairing g(u, v).
template <class R>
inline basic_gen_vector<R> repair_orthogonal(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u,
                                             const basic_gen_vector<R>& v) {
  return repair_orthogonal(g.lower(u), v);
}

// ---------------------------------------------------------------- Cauchy-Schwarz

template <class R>
struct basic_cs_report {
  basic_gen_number<R> lhs;         // <u,v>^2
  basic_gen_number<R> rhs;         // <u,u><v,v>
  basic_gen_number<R> gap;         // -<u,u><w,w>, w = v - (<u,v>/<u,u>) u
  basic_gen_number<R> gap_direct;  // lhs - rhs
  Verdict inequality;              // 0 <= gap
  Verdict strict;                  // gap strictly positive
  Verdict residual_free;           // w free
  std::string label;               // "strict", "equality" or "zero-divisor-like"
};
using CsReport = basic_cs_report<long double>;

/// Inverse Cauchy-Schwarz inequality <u,v>^2 >= <u,u><v,v> for time-like u, v.
template <class R>
inline basic_cs_report<R> inverse_cauchy_schwarz(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u,
                                                 const basic_gen_vector<R>& v) {
  require_timelike(g, v, "v");
  const auto d = decompose(g, u, v);
  basic_cs_report<R> r;
  const auto uv = g(u, v), uu = g(u, u);
  r.lhs = uv * uv;
  r.rhs = uu * g(v, v);
  r.gap = -(uu * g(d.w, d.w));
  r.gap_direct = r.lhs - r.rhs;
  const auto zero = basic_gen_number<R>::constant(R(0), g.grid());
  r.inequality = leq(zero, r.gap);
  r.strict = is_strictly_positive(r.gap);
  r.residual_free = is_free(d.w);
  if (r.strict.is_holds()) r.label = "strict";
  else if (is_negligible(r.gap).is_holds()) r.label = "equality";
  else if (r.inequality.is_holds()) r.label = "zero-divisor-like";
  else r.label = "violated";
  return r;
}

// ---------------------------------------------------------------- boosts, h

/// Lorentz transformation mapping the unit time-like xi to eta.
template <class R>
inline basic_gen_matrix<R> lorentz_boost(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& xi,
                                         const basic_gen_vector<R>& eta) {
  const auto one = basic_gen_number<R>::constant(R(1), g.grid());
  for (const auto* p : {&xi, &eta}) {
    const Verdict un = is_negligible(g(*p, *p) + one);
    if (!un.is_holds()) throw Error(ErrorCode::NotUnit, "g(x,x) + 1 is not negligible");
  }
  const Verdict so = same_orientation(g, xi, eta);
  if (!so.is_holds()) throw Error(ErrorCode::NotSameOrientation, "g(xi,eta) is not strictly negative");
  const int n = g.dim();
  const auto xl = g.lower(xi);
  const auto s = xi + eta;
  const auto sl = g.lower(s);
  const auto inv = inverse(one - g(xi, eta));
  const auto two = basic_gen_number<R>::constant(R(2), g.grid());
  std::vector<basic_gen_number<R>> e;
  for (int mu = 0; mu < n; ++mu)
    for (int la = 0; la < n; ++la) {
      auto x = basic_gen_number<R>::constant(R(mu == la ? 1 : 0), g.grid()) - two * eta[mu] * xl[la] + s[mu] * sl[la] * inv;
      e.push_back(x);
    }
  return basic_gen_matrix<R>(n, std::move(e));
}

/// h_{mu nu} = u_(mu v_nu) - 1/2 <u,v> g_{mu nu}; positive definite for
/// time-like u, v with the same orientation.
template <class R>
inline basic_gen_matrix<R> metrconstr(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& u, const basic_gen_vector<R>& v) {
  const Verdict so = same_orientation(g, u, v);
  if (!so.is_holds()) throw Error(ErrorCode::NotSameOrientation, "g(u,v) is not strictly negative");
  const int n = g.dim();
  const auto ul = g.lower(u), vl = g.lower(v);
  const auto half = basic_gen_number<R>::constant(R(0.5L), g.grid());
  const auto huv = half * g(u, v);
  std::vector<basic_gen_number<R>> e;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // (u_a v_b + u_b v_a) / 2, summed in index order so h is exactly symmetric
      const auto sym = a <= b ? ul[a] * vl[b] + ul[b] * vl[a] : ul[b] * vl[a] + ul[a] * vl[b];
      e.push_back(half * sym - huv * g.g()(a, b));
    }
  return basic_gen_matrix<R>(n, std::move(e));
}

// ---------------------------------------------------------------- energy

template <class R>
struct basic_energy_tensor {
  basic_gen_matrix<R> E;  // E^{ab}
  basic_gen_vector<R> theta;
};
using EnergyTensor = basic_energy_tensor<long double>;

/// E^{ab}(theta) = theta^a theta^b - 1/2 g^{ab} <theta,theta>.
template <class R>
inline basic_energy_tensor<R> energy_tensor(const basic_bilinear_form<R>& g, const basic_gen_vector<R>& theta) {
  const int n = g.dim();
  const auto half = basic_gen_number<R>::constant(R(0.5L), g.grid());
  const auto tt = half * g(theta, theta);
  std::vector<basic_gen_number<R>> e;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) e.push_back(theta[a] * theta[b] - g.inverse_metric()(a, b) * tt);
  return {basic_gen_matrix<R>(n, std::move(e)), theta};
}

/// E^{ab} xi_a eta_b.
template <class R>
inline basic_gen_number<R> energy_contraction(const basic_bilinear_form<R>& g, const basic_energy_tensor<R>& E,
                                              const basic_gen_vector<R>& xi, const basic_gen_vector<R>& eta) {
  return form(E.E, g.lower(xi), g.lower(eta));
}

/// Dominant energy condition: E^{ab} xi_a eta_b strictly positive.
template <class R>
inline Verdict dominant_energy_check(const basic_bilinear_form<R>& g, const basic_energy_tensor<R>& E,
                                     const basic_gen_vector<R>& xi, const basic_gen_vector<R>& eta) {
  const Verdict f = is_free(E.theta);
  if (!f.is_holds()) throw Error(ErrorCode::NotFree, "theta is not free");
  const Verdict so = same_orientation(g, xi, eta);
  if (!so.is_holds()) throw Error(ErrorCode::NotSameOrientation, "xi and eta have different orientation");
  return is_strictly_positive(energy_contraction(g, E, xi, eta));
}

/// Flux eta^b = E^{ab} xi_a.
template <class R>
inline basic_gen_vector<R> flux_vector(const basic_bilinear_form<R>& g, const basic_energy_tensor<R>& E, const basic_gen_vector<R>& xi) {
  return E.E.transpose() * g.lower(xi);
}

/// <eta,eta> - 1/4 <theta,theta>^2 <xi,xi> for eta = flux_vector(xi).
template <class R>
inline basic_gen_number<R> energy_identity_residual(const basic_bilinear_form<R>& g, const basic_energy_tensor<R>& E,
                                                    const basic_gen_vector<R>& xi) {
  const auto eta = flux_vector(g, E, xi);
  const auto tt = g(E.theta, E.theta);
  const auto q = basic_gen_number<R>::constant(R(0.25L), g.grid());
  return g(eta, eta) - q * tt * tt * g(xi, xi);
}

}  // namespace gennum

#endif  // GENNUM_CAUSAL_HPP
