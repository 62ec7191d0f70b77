#ifndef GENNUM_CHARTS_HPP
#define GENNUM_CHARTS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gennum/causal.hpp"
#include "gennum/mollifier.hpp"

namespace gennum {

/// Open box in R^n standing in for a chart image psi(V).
struct ChartDomain {
  int n = 1;
  std::vector<long double> lo, hi;
  std::string name;

  ChartDomain() = default;
  ChartDomain(std::vector<long double> lower, std::vector<long double> upper, std::string nm = {})
      : n(static_cast<int>(lower.size())), lo(std::move(lower)), hi(std::move(upper)), name(std::move(nm)) {
    if (n < 1 || static_cast<int>(hi.size()) != n) throw Error(ErrorCode::DimensionMismatch, "box bounds differ in dimension");
    for (int i = 0; i < n; ++i)
      if (!(lo[i] < hi[i])) throw Error(ErrorCode::InvalidGrid, "box must be nonempty and open");
  }

  static ChartDomain cube(int n, long double a, long double b, std::string nm = {}) {
    return ChartDomain(std::vector<long double>(n, a), std::vector<long double>(n, b), std::move(nm));
  }

  bool contains(const std::vector<long double>& x) const {
    for (int i = 0; i < n; ++i)
      if (!(x[i] > lo[i] && x[i] < hi[i])) return false;
    return true;
  }
};

using PointFn = std::function<std::vector<long double>(long double eps)>;
using MatrixFieldFn = std::function<std::vector<long double>(long double eps, const std::vector<long double>& x)>;
using VectorFieldFn = std::function<std::vector<long double>(long double eps, const std::vector<long double>& x)>;
using ScalarFieldFn = std::function<long double(long double eps, const std::vector<long double>& x)>;

/// Net of points (x_eps) with tail samples inside a compact box.
class GenPoint {
 public:
  GenPoint(PointFn f, const EpsGrid& g, std::string label = {}) : f_(std::move(f)), grid_(g), label_(std::move(label)) {
    for (int k = 1; k <= g.k_max; ++k) {
      auto x = f_(g.eps_at(k));
      for (auto v : x)
        if (!std::isfinite(v)) throw Error(ErrorCode::NotFinite, "point sample at k=" + std::to_string(k));
      if (k > 1 && x.size() != samples_.front().size()) throw Error(ErrorCode::DimensionMismatch, "point dimension varies");
      samples_.push_back(std::move(x));
    }
    const int n = dim();
    box_lo_.assign(n, INFINITY);
    box_hi_.assign(n, -INFINITY);
    for (int k = g.tail_start; k <= g.k_max; ++k)
      for (int i = 0; i < n; ++i) {
        box_lo_[i] = std::min(box_lo_[i], samples_[k - 1][i]);
        box_hi_[i] = std::max(box_hi_[i], samples_[k - 1][i]);
      }
  }

  static GenPoint standard(std::vector<long double> x, const EpsGrid& g) {
    std::string l = "(";
    for (std::size_t i = 0; i < x.size(); ++i) l += (i ? "," : "") + std::to_string(static_cast<double>(x[i]));
    return GenPoint([x](long double) { return x; }, g, l + ")");
  }

  int dim() const { return static_cast<int>(samples_.front().size()); }
  const EpsGrid& grid() const { return grid_; }
  const std::string& label() const { return label_; }
  const std::vector<long double>& at(int k) const { return samples_[k - 1]; }
  /// Bounding box of the tail samples (compact-support certificate).
  const std::vector<long double>& box_lo() const { return box_lo_; }
  const std::vector<long double>& box_hi() const { return box_hi_; }

  bool supported_in(const ChartDomain& d) const {
    if (d.n != dim()) return false;
    return d.contains(box_lo_) && d.contains(box_hi_);
  }

 private:
  PointFn f_;
  EpsGrid grid_;
  std::string label_;
  std::vector<std::vector<long double>> samples_;
  std::vector<long double> box_lo_, box_hi_;
};

struct MetricField {
  ChartDomain domain;
  MatrixFieldFn f;  // returns n*n row-major
  std::string label;
};

struct VectorField {
  ChartDomain domain;
  VectorFieldFn f;
  std::string label;
};

struct ScalarField {
  ChartDomain domain;
  ScalarFieldFn f;
  std::string label;
};

namespace detail {

inline void require_inside(const ChartDomain& d, const GenPoint& p) {
  if (!p.supported_in(d))
    throw Error(ErrorCode::PointOutsideDomain,
                "point " + p.label() + " is not compactly supported in " + (d.name.empty() ? std::string("the domain") : d.name));
}

inline bounded<long double> sampled(long double v) { return {v, 2 * bounded<long double>::u() * std::fabs(v)}; }

}  // namespace detail

/// Generalized point value g(x~) of a metric field; symmetric by construction.
inline GenMatrix eval_metric(const MetricField& gf, const GenPoint& p) {
  detail::require_inside(gf.domain, p);
  const int n = gf.domain.n;
  return GenMatrix::assemble(p.grid(), n, [&](int k) {
    const auto m = gf.f(p.grid().eps_at(k), p.at(k));
    if (static_cast<int>(m.size()) != n * n) throw Error(ErrorCode::DimensionMismatch, "metric field must return n*n entries");
    std::vector<bounded<long double>> s(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const long double v = i == j ? m[i * n + i] : (i < j ? (m[i * n + j] + m[j * n + i]) / 2 : (m[j * n + i] + m[i * n + j]) / 2);
        if (!std::isfinite(v)) throw Error(ErrorCode::NotFinite, "metric sample at k=" + std::to_string(k));
        s[i * n + j] = detail::sampled(v);
      }
    return s;
  });
}

inline GenVector eval_vector(const VectorField& vf, const GenPoint& p) {
  detail::require_inside(vf.domain, p);
  const int n = vf.domain.n;
  return GenVector::assemble(p.grid(), n, [&](int k) {
    const auto v = vf.f(p.grid().eps_at(k), p.at(k));
    if (static_cast<int>(v.size()) != n) throw Error(ErrorCode::DimensionMismatch, "vector field must return n entries");
    std::vector<bounded<long double>> s(n);
    for (int i = 0; i < n; ++i) s[i] = detail::sampled(v[i]);
    return s;
  });
}

inline gen_number eval_scalar(const ScalarField& sf, const GenPoint& p) {
  detail::require_inside(sf.domain, p);
  std::vector<bounded<long double>> s(p.grid().k_max);
  for (int k = 1; k <= p.grid().k_max; ++k) s[k - 1] = detail::sampled(sf.f(p.grid().eps_at(k), p.at(k)));
  return gen_number::from_samples(p.grid(), std::move(s));
}

/// Sampled family of generalized points in a domain: standard points,
/// points drifting as x + eps v, and points alternating with grid parity.
inline std::vector<GenPoint> default_point_family(const ChartDomain& d, const EpsGrid& g, unsigned long seed = 1, int count = 32) {
  std::mt19937_64 rng(seed);
  const int n = d.n;
  auto inner = [&]() {
    std::vector<long double> x(n);
    for (int i = 0; i < n; ++i) {
      const long double w = d.hi[i] - d.lo[i];
      std::uniform_real_distribution<long double> u(d.lo[i] + w / 4, d.hi[i] - w / 4);
      x[i] = u(rng);
    }
    return x;
  };
  std::vector<GenPoint> pts;
  const int n_std = count * 3 / 8, n_drift = count * 3 / 8;
  for (int i = 0; i < n_std; ++i) pts.push_back(GenPoint::standard(inner(), g));
  for (int i = 0; i < n_drift; ++i) {
    auto x = inner();
    std::vector<long double> v(n);
    for (int j = 0; j < n; ++j) {
      std::uniform_real_distribution<long double> u(-1, 1);
      v[j] = u(rng) * (d.hi[j] - d.lo[j]) / 8;
    }
    pts.emplace_back([x, v](long double e) {
      auto y = x;
      for (std::size_t j = 0; j < y.size(); ++j) y[j] += e * v[j];
      return y;
    }, g, "drift" + std::to_string(i));
  }
  for (int i = static_cast<int>(pts.size()); i < count; ++i) {
    auto a = inner(), b = inner();
    pts.emplace_back([a, b](long double e) {
      return grid_index_of(e) % 2 == 0 ? a : b;
    }, g, "alternating" + std::to_string(i));
  }
  return pts;
}

/// Outcome of the point-value index test.
struct PointIndexReport {
  Verdict verdict;
  std::optional<int> index;                  // common index j when Holds
  std::vector<MatrixIndex> per_point;
  std::vector<int> failing_points;           // positions in the input list
};

/// Index of a metric field from its generalized point values.
inline PointIndexReport metric_index_at_points(const MetricField& gf, const std::vector<GenPoint>& points) {
  PointIndexReport r;
  std::optional<int> common;
  std::vector<int> witnesses;
  int m = 0;
  std::string note;
  for (std::size_t i = 0; i < points.size(); ++i) {
    MatrixIndex mi;
    try {
      mi = matrix_index(eval_metric(gf, points[i]));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Degenerate)
        throw Error(ErrorCode::DegenerateAtPoint, "metric is degenerate at point " + points[i].label());
      throw;
    }
    r.per_point.push_back(mi);
    if (!mi.defined()) {
      r.failing_points.push_back(static_cast<int>(i));
      witnesses.insert(witnesses.end(), mi.verdict.witnesses.begin(), mi.verdict.witnesses.end());
      if (note.empty()) note = "no index at point " + points[i].label() + ": " + mi.verdict.note;
      continue;
    }
    m = std::max(m, mi.verdict.exponent.value_or(0));
    if (!common) common = *mi.nu_minus;
    else if (*common != *mi.nu_minus) {
      r.failing_points.push_back(static_cast<int>(i));
      if (note.empty()) note = "index differs at point " + points[i].label();
    }
  }
  if (r.failing_points.empty()) {
    r.index = common;
    r.verdict = Verdict::holds(m, "index " + std::to_string(common.value_or(0)));
  } else {
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
    r.verdict = Verdict::fails(witnesses, note);
  }
  return r;
}

struct FieldClassification {
  std::vector<CausalKind> per_point;
  std::optional<CausalKind> common;  // set when all points agree
  Verdict timelike;                  // Holds iff TimeLike at every point
};

/// Causal character of a vector field from its generalized point values.
inline FieldClassification classify_field(const MetricField& gf, const VectorField& vf, const std::vector<GenPoint>& points) {
  const auto idx = metric_index_at_points(gf, points);
  if (!idx.verdict.is_holds() || *idx.index != 1 || gf.domain.n < 2)
    throw Error(ErrorCode::NotLorentzian, "metric field is not Lorentzian on the sampled points");
  FieldClassification r;
  std::vector<int> bad;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const BilinearForm g(eval_metric(gf, points[i]));
    const auto c = classify(g, eval_vector(vf, points[i]));
    r.per_point.push_back(c.kind);
    if (c.kind != CausalKind::TimeLike) bad.push_back(static_cast<int>(i));
  }
  if (std::all_of(r.per_point.begin(), r.per_point.end(), [&](CausalKind k) { return k == r.per_point.front(); }))
    r.common = r.per_point.front();
  r.timelike = bad.empty() ? Verdict::holds(0) : Verdict::fails({}, std::to_string(bad.size()) + " point(s) not time-like");
  return r;
}

struct RiemannianConstruction {
  MetricField h;
  PointIndexReport index;
};

/// h_ab = xi_(a eta_b) - 1/2 <xi,eta> g_ab from two time-like fields with the
/// same orientation.
inline RiemannianConstruction riemannian_from_timelike(const MetricField& gf, const VectorField& xi, const VectorField& eta,
                                                       const std::vector<GenPoint>& points) {
  const auto cx = classify_field(gf, xi, points);
  const auto ce = classify_field(gf, eta, points);
  if (!cx.timelike.is_holds() || !ce.timelike.is_holds())
    throw Error(ErrorCode::OrientationMismatch, "both fields must be time-like at every sampled point");
  for (const auto& p : points) {
    const BilinearForm g(eval_metric(gf, p));
    if (!same_orientation(g, eval_vector(xi, p), eval_vector(eta, p)).is_holds())
      throw Error(ErrorCode::OrientationMismatch, "fields have different time orientation at " + p.label());
  }
  const int n = gf.domain.n;
  MetricField h;
  h.domain = gf.domain;
  h.label = "h(" + xi.label + "," + eta.label + ")";
  h.f = [gf, xi, eta, n](long double e, const std::vector<long double>& x) {
    const auto g = gf.f(e, x);
    const auto a = xi.f(e, x), b = eta.f(e, x);
    std::vector<long double> al(n, 0), bl(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        al[i] += g[i * n + j] * a[j];
        bl[i] += g[i * n + j] * b[j];
      }
    long double ab = 0;
    for (int i = 0; i < n; ++i) ab += al[i] * b[i];
    std::vector<long double> out(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = (al[i] * bl[j] + al[j] * bl[i]) / 2 - ab / 2 * g[i * n + j];
    return out;
  };
  RiemannianConstruction r{h, metric_index_at_points(h, points)};
  return r;
}

}  // namespace gennum

#endif  // GENNUM_CHARTS_HPP
