#ifndef GENNUM_GEN_NUMBER_HPP
#define GENNUM_GEN_NUMBER_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gennum/bounded.hpp"
#include "gennum/eps_grid.hpp"
#include "gennum/error.hpp"
#include "gennum/index_set.hpp"
#include "gennum/verdict.hpp"

namespace gennum {

/// Result of fitting |x_eps| ~ eps^order on the tail window.
struct OrderEstimate {
  bool negligible = false;
  int order = 0;
  long double slope = 0;  // fitted exponent before rounding
  bool low_confidence = false;
};

/// Grid index of a dyadic eps = 2^-k (0 if eps is not on a dyadic point).
template <class Real>
inline int grid_index_of(const Real& eps) {
  using std::frexp;
  int e = 0;
  const Real m = frexp(eps, &e);
  if (m != Real(0.5)) return 0;
  return 1 - e;
}

/// A generalized number represented by its net of samples on an EpsGrid.
///
/// Instances are immutable; copies share the sample storage.
template <class Real>
class basic_gen_number {
 public:
  using real_type = Real;
  using sample_type = bounded<Real>;
  using evaluator_type = std::function<Real(const Real&)>;

  basic_gen_number() : basic_gen_number(EpsGrid{}, std::vector<sample_type>(EpsGrid{}.k_max), nullptr, "0") {}

  /// Net from an evaluator. Rejects non-finite or non-moderate nets.
  static basic_gen_number make(evaluator_type f, const EpsGrid& grid, std::string label = {}) {
    grid.validate();
    std::vector<sample_type> s(grid.k_max);
    const long double u2 = 2 * sample_type::u();
    for (int k = 1; k <= grid.k_max; ++k) {
      Real v = f(grid.template eps_at<Real>(k));
      check_sample(grid, k, v, true);
      const long double e = u2 * std::fabs(to_ld(v));
      s[k - 1] = sample_type(std::move(v), e);
    }
    auto fp = std::make_shared<const evaluator_type>(std::move(f));
    return basic_gen_number(grid, std::move(s), std::move(fp), std::move(label));
  }

  /// Net from explicit samples (index k-1 holds eps_k). The evaluator looks
  /// the sample up by grid index.
  static basic_gen_number from_samples(const EpsGrid& grid, std::vector<sample_type> s, std::string label = {}) {
    if (static_cast<int>(s.size()) != grid.k_max) throw Error(ErrorCode::GridMismatch, "sample count does not match k_max");
    for (int k = 1; k <= grid.k_max; ++k) {
      const long double lv = log2_abs(s[k - 1].value);
      if (std::isnan(lv) || (std::isinf(lv) && lv > 0)) throw Error(ErrorCode::NotFinite, "sample at k=" + std::to_string(k));
    }
    return basic_gen_number(grid, std::move(s), nullptr, std::move(label));
  }

  static basic_gen_number constant(const Real& c, const EpsGrid& grid = {}) {
    std::vector<sample_type> s(grid.k_max, sample_type(c, 0));
    auto f = std::make_shared<const evaluator_type>([c](const Real&) { return c; });
    return basic_gen_number(grid, std::move(s), std::move(f), {});
  }

  static basic_gen_number eps(const EpsGrid& grid = {}) {
    std::vector<sample_type> s(grid.k_max);
    for (int k = 1; k <= grid.k_max; ++k) s[k - 1] = sample_type(grid.template eps_at<Real>(k), 0);
    auto f = std::make_shared<const evaluator_type>([](const Real& e) { return e; });
    return basic_gen_number(grid, std::move(s), std::move(f), "eps");
  }

  /// Characteristic net of a grid-index set: exactly 1 on A, 0 elsewhere.
  static basic_gen_number chi(const IndexSet& a, const EpsGrid& grid = {}) {
    std::vector<sample_type> s(grid.k_max);
    for (int k = 1; k <= grid.k_max; ++k) s[k - 1] = sample_type(Real(a.contains(k) ? 1 : 0), 0);
    auto f = std::make_shared<const evaluator_type>(
        [a](const Real& e) { return Real(a.contains(grid_index_of(e)) ? 1 : 0); });
    return basic_gen_number(grid, std::move(s), std::move(f), "chi(" + a.to_string() + ")");
  }

  const EpsGrid& grid() const { return grid_; }
  const std::string& label() const { return label_; }
  basic_gen_number with_label(std::string l) const {
    basic_gen_number r = *this;
    r.label_ = std::move(l);
    return r;
  }

  /// Sample at grid index k (1-based).
  const sample_type& sample(int k) const { return (*samples_)[k - 1]; }
  const Real& value(int k) const { return sample(k).value; }
  long double err(int k) const { return sample(k).err; }
  const std::vector<sample_type>& samples() const { return *samples_; }

  /// Re-evaluate the underlying representative at an arbitrary eps.
  Real evaluate(const Real& e) const {
    if (eval_) return (*eval_)(e);
    const int k = grid_index_of(e);
    if (k < 1 || k > grid_.k_max) throw Error(ErrorCode::OffGrid, "net is only known on grid points");
    return value(k);
  }

  /// Pointwise map with a caller-supplied error propagation. The result must
  /// again be moderate.
  template <class F, class Prop>
  basic_gen_number map(F f, Prop prop, std::string label = {}) const {
    std::vector<sample_type> s(grid_.k_max);
    for (int k = 1; k <= grid_.k_max; ++k) {
      const auto& a = sample(k);
      Real v = f(a.value);
      check_sample(grid_, k, v, true);
      const long double e = prop(a, v);
      s[k - 1] = sample_type(std::move(v), e);
    }
    std::shared_ptr<const evaluator_type> ev;
    if (eval_) {
      auto inner = eval_;
      ev = std::make_shared<const evaluator_type>([inner, f](const Real& e) { return f((*inner)(e)); });
    }
    return basic_gen_number(grid_, std::move(s), std::move(ev), std::move(label));
  }

  template <class Op>
  static basic_gen_number zip(const basic_gen_number& a, const basic_gen_number& b, Op op, const char* sym) {
    if (!(a.grid_ == b.grid_)) throw Error(ErrorCode::GridMismatch, "operands live on different grids");
    std::vector<sample_type> s(a.grid_.k_max);
    for (int k = 1; k <= a.grid_.k_max; ++k) {
      s[k - 1] = op(a.sample(k), b.sample(k));
      check_sample(a.grid_, k, s[k - 1].value, false);
    }
    std::shared_ptr<const evaluator_type> ev;
    if (a.eval_ && b.eval_) {
      auto fa = a.eval_;
      auto fb = b.eval_;
      ev = std::make_shared<const evaluator_type>([fa, fb, op](const Real& e) {
        return op(sample_type((*fa)(e)), sample_type((*fb)(e))).value;
      });
    }
    return basic_gen_number(a.grid_, std::move(s), std::move(ev), combine_label(a.label_, sym, b.label_));
  }

 private:
  /// NaN is NotFinite, overflow is NotModerate; with `cap`, so is growth
  /// beyond eps^-m_cap on the tail.
  static void check_sample(const EpsGrid& grid, int k, const Real& v, bool cap) {
    const long double lv = log2_abs(v);
    if (std::isnan(lv)) throw Error(ErrorCode::NotFinite, "sample at k=" + std::to_string(k) + " is NaN");
    if (std::isinf(lv) && lv > 0) throw Error(ErrorCode::NotModerate, "sample at k=" + std::to_string(k) + " is infinite");
    if (cap && grid.in_tail(k) && lv > static_cast<long double>(grid.m_cap) * k)
      throw Error(ErrorCode::NotModerate, "|x| exceeds eps^-" + std::to_string(grid.m_cap) + " at k=" + std::to_string(k));
  }

  basic_gen_number(const EpsGrid& g, std::vector<sample_type> s, std::shared_ptr<const evaluator_type> f, std::string label)
      : grid_(g),
        samples_(std::make_shared<const std::vector<sample_type>>(std::move(s))),
        eval_(std::move(f)),
        label_(std::move(label)) {}

  static std::string combine_label(const std::string& a, const char* sym, const std::string& b) {
    if (a.empty() || b.empty() || a.size() + b.size() > 120) return {};
    return "(" + a + " " + sym + " " + b + ")";
  }

  EpsGrid grid_;
  std::shared_ptr<const std::vector<sample_type>> samples_;
  std::shared_ptr<const evaluator_type> eval_;
  std::string label_;
};

using gen_number = basic_gen_number<long double>;

// ---------------------------------------------------------------- arithmetic

template <class R>
inline basic_gen_number<R> operator+(const basic_gen_number<R>& a, const basic_gen_number<R>& b) {
  return basic_gen_number<R>::zip(a, b, [](const bounded<R>& x, const bounded<R>& y) { return x + y; }, "+");
}
template <class R>
inline basic_gen_number<R> operator-(const basic_gen_number<R>& a, const basic_gen_number<R>& b) {
  return basic_gen_number<R>::zip(a, b, [](const bounded<R>& x, const bounded<R>& y) { return x - y; }, "-");
}
template <class R>
inline basic_gen_number<R> operator*(const basic_gen_number<R>& a, const basic_gen_number<R>& b) {
  return basic_gen_number<R>::zip(a, b, [](const bounded<R>& x, const bounded<R>& y) { return x * y; }, "*");
}
template <class R>
inline basic_gen_number<R> operator-(const basic_gen_number<R>& a) {
  return a.map([](const R& v) { return R(-v); }, [](const bounded<R>& s, const R&) { return s.err; },
               a.label().empty() ? std::string{} : "-" + a.label());
}

template <class R>
inline basic_gen_number<R> operator+(const basic_gen_number<R>& a, const R& c) { return a + basic_gen_number<R>::constant(c, a.grid()); }
template <class R>
inline basic_gen_number<R> operator+(const R& c, const basic_gen_number<R>& a) { return basic_gen_number<R>::constant(c, a.grid()) + a; }
template <class R>
inline basic_gen_number<R> operator-(const basic_gen_number<R>& a, const R& c) { return a - basic_gen_number<R>::constant(c, a.grid()); }
template <class R>
inline basic_gen_number<R> operator-(const R& c, const basic_gen_number<R>& a) { return basic_gen_number<R>::constant(c, a.grid()) - a; }
template <class R>
inline basic_gen_number<R> operator*(const basic_gen_number<R>& a, const R& c) { return a * basic_gen_number<R>::constant(c, a.grid()); }
template <class R>
inline basic_gen_number<R> operator*(const R& c, const basic_gen_number<R>& a) { return basic_gen_number<R>::constant(c, a.grid()) * a; }

template <class R>
inline basic_gen_number<R> abs(const basic_gen_number<R>& a) {
  using std::abs;
  return a.map([](const R& v) { return R(abs(v)); }, [](const bounded<R>& s, const R&) { return s.err; },
               a.label().empty() ? std::string{} : "abs(" + a.label() + ")");
}

template <class R>
inline basic_gen_number<R> sqrt(const basic_gen_number<R>& a) {
  using std::sqrt;
  return a.map([](const R& v) { return v > 0 ? R(sqrt(v)) : R(0); },
               [](const bounded<R>& s, const R&) { return sqrt(s).err; },
               a.label().empty() ? std::string{} : "sqrt(" + a.label() + ")");
}

template <class R>
inline basic_gen_number<R> exp(const basic_gen_number<R>& a) {
  using std::exp;
  return a.map([](const R& v) { return R(exp(v)); }, [](const bounded<R>& s, const R&) { return exp(s).err; },
               a.label().empty() ? std::string{} : "exp(" + a.label() + ")");
}

/// Pointwise application of a function with Lipschitz-type error bound:
/// |f(x + d) - f(x)| <= slope(|x| + |d|) * |d| for |d| <= err.
template <class R, class F, class Slope>
inline basic_gen_number<R> apply(const basic_gen_number<R>& a, F f, Slope slope, const std::string& name) {
  return a.map(f,
               [slope](const bounded<R>& s, const R& v) {
                 const long double e = s.err == 0 ? 0 : slope(s.mag() + s.err) * s.err;
                 return e + 2 * bounded<R>::u() * std::fabs(to_ld(v));
               },
               a.label().empty() ? std::string{} : name + "(" + a.label() + ")");
}

template <class R>
inline basic_gen_number<R> sin(const basic_gen_number<R>& a) {
  using std::sin;
  return apply(a, [](const R& v) { return R(sin(v)); }, [](long double) { return 1.0L; }, "sin");
}
template <class R>
inline basic_gen_number<R> cos(const basic_gen_number<R>& a) {
  using std::cos;
  return apply(a, [](const R& v) { return R(cos(v)); }, [](long double) { return 1.0L; }, "cos");
}
template <class R>
inline basic_gen_number<R> tanh(const basic_gen_number<R>& a) {
  using std::tanh;
  return apply(a, [](const R& v) { return R(tanh(v)); }, [](long double) { return 1.0L; }, "tanh");
}
template <class R>
inline basic_gen_number<R> cosh(const basic_gen_number<R>& a) {
  using std::cosh;
  return apply(a, [](const R& v) { return R(cosh(v)); }, [](long double m) { return std::cosh(m); }, "cosh");
}
template <class R>
inline basic_gen_number<R> sinh(const basic_gen_number<R>& a) {
  using std::sinh;
  return apply(a, [](const R& v) { return R(sinh(v)); }, [](long double m) { return std::cosh(m); }, "sinh");
}

// ---------------------------------------------------------------- analysis

/// Fit of the exponent m in |x_eps| ~ eps^m over the tail window.
template <class R>
inline OrderEstimate estimate_order(const basic_gen_number<R>& x) {
  const EpsGrid& g = x.grid();
  OrderEstimate r;
  std::vector<std::pair<long double, long double>> pts;
  bool all_negligible = true;
  int excluded = 0;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    const auto& s = x.sample(k);
    const long double mag = s.mag();
    const long double lv = log2_abs(s.value);
    const bool tiny = mag <= s.err || lv <= -static_cast<long double>(g.m_cap) * k;
    if (!tiny) all_negligible = false;
    if (mag <= s.err || std::isinf(lv)) {
      ++excluded;
      continue;
    }
    pts.emplace_back(static_cast<long double>(k), lv);
  }
  if (all_negligible) {
    r.negligible = true;
    r.order = g.m_cap;
    r.slope = g.m_cap;
    return r;
  }
  if (pts.size() < 2) {
    r.low_confidence = true;
    r.order = pts.empty() ? 0 : static_cast<int>(std::floor(-pts[0].second / pts[0].first + 0.25L));
    r.slope = r.order;
    return r;
  }
  long double sx = 0, sy = 0;
  for (auto& [k, y] : pts) sx += k, sy += y;
  const long double n = pts.size();
  const long double mx = sx / n, my = sy / n;
  long double sxx = 0, sxy = 0;
  for (auto& [k, y] : pts) sxx += (k - mx) * (k - mx), sxy += (k - mx) * (y - my);
  const long double b = sxy / sxx;  // log2|x| ~ a + b k  ->  order -b
  long double resid = 0;
  for (auto& [k, y] : pts) resid = std::max(resid, std::fabs(y - (my + b * (k - mx))));
  r.slope = -b;
  r.order = static_cast<int>(std::floor(r.slope + 0.25L));
  r.low_confidence = excluded > 0 || resid > 2;
  return r;
}

namespace detail {

template <class R>
inline Verdict decide_from_violations(const EpsGrid& g, const std::vector<int>& viol, int holds_exponent,
                                      const std::string& what) {
  switch (tail_pattern(g, viol)) {
    case TailPattern::None: return Verdict::holds(holds_exponent);
    case TailPattern::EarlyOnly: return Verdict::inconclusive(viol, what + " violated only early in the tail window");
    case TailPattern::Recurrent: return Verdict::fails(viol, what + " violated recurrently");
    case TailPattern::Persistent: return Verdict::fails(viol, what + " violated persistently");
  }
  return Verdict::inconclusive(viol);
}

}  // namespace detail

/// x is negligible: |x_eps| <= eps^M_cap on the tail (samples indistinguishable
/// from 0 within their rounding bound count as 0).
template <class R>
inline Verdict is_negligible(const basic_gen_number<R>& x) {
  const EpsGrid& g = x.grid();
  std::vector<int> viol;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    const auto& s = x.sample(k);
    if (s.mag() > s.err && log2_abs(s.value) > -static_cast<long double>(g.m_cap) * k) viol.push_back(k);
  }
  Verdict v = detail::decide_from_violations<R>(g, viol, g.m_cap, "|x| <= eps^" + std::to_string(g.m_cap));
  if (v.is_fails()) {
    const auto o = estimate_order(x);
    v.note += "; fitted order " + std::to_string(o.order);
  }
  return v;
}

/// Stronger check for use with high-precision scalars: |x_eps| + err <= eps^M
/// at every tail index, with no allowance for rounding.
template <class R>
inline Verdict is_negligible_strict(const basic_gen_number<R>& x, int m) {
  const EpsGrid& g = x.grid();
  std::vector<int> viol;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    const auto& s = x.sample(k);
    const long double bound = s.mag() + s.err;
    if (bound > 0 && std::log2(bound) > -static_cast<long double>(m) * k) viol.push_back(k);
  }
  if (viol.empty()) return Verdict::holds(m);
  return Verdict::fails(viol, "|x| + err exceeds eps^" + std::to_string(m));
}

/// |x_eps| > eps^m0 on the tail for some m0 <= M_cap (equivalently invertible).
template <class R>
inline Verdict is_strictly_nonzero(const basic_gen_number<R>& x) {
  const EpsGrid& g = x.grid();
  std::vector<int> viol;
  int m0 = 0;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    const auto& s = x.sample(k);
    const long double lb = s.mag() - s.err;
    if (lb <= 0 || std::log2(lb) <= -static_cast<long double>(g.m_cap) * k) {
      viol.push_back(k);
      continue;
    }
    const long double lv = log2_abs(s.value);
    m0 = std::max(m0, static_cast<int>(std::floor(-lv / k)) + 1);
  }
  return detail::decide_from_violations<R>(g, viol, m0, "|x| > eps^" + std::to_string(g.m_cap));
}

template <class R>
inline Verdict is_invertible(const basic_gen_number<R>& x) {
  return is_strictly_nonzero(x);
}

/// x_eps >= eps^m0 on the tail for some m0 (m0 = 0 for nets bounded below by 1).
template <class R>
inline Verdict is_strictly_positive(const basic_gen_number<R>& x) {
  const EpsGrid& g = x.grid();
  std::vector<int> viol;
  int m0 = 0;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    const auto& s = x.sample(k);
    const long double v = to_ld(s.value);
    const long double lb = v - s.err;
    if (!(lb > 0) || std::log2(lb) <= -static_cast<long double>(g.m_cap) * k) {
      viol.push_back(k);
      continue;
    }
    const long double lv = log2_abs(s.value);
    m0 = std::max(m0, static_cast<int>(std::ceil(-lv / k)));
  }
  return detail::decide_from_violations<R>(g, viol, m0, "x >= eps^" + std::to_string(g.m_cap));
}

template <class R>
inline Verdict is_strictly_negative(const basic_gen_number<R>& x) {
  return is_strictly_positive(-x);
}

/// x <= y in the partial order: y - x >= -n for some negligible n.
template <class R>
inline Verdict leq(const basic_gen_number<R>& x, const basic_gen_number<R>& y) {
  const basic_gen_number<R> d = y - x;
  const EpsGrid& g = d.grid();
  std::vector<int> viol;
  for (int k = g.tail_start; k <= g.k_max; ++k) {
    const auto& s = d.sample(k);
    const long double v = to_ld(s.value);
    if (v + s.err < 0 && std::log2(-v - s.err) > -static_cast<long double>(g.m_cap) * k) viol.push_back(k);
  }
  switch (tail_pattern(g, viol)) {
    case TailPattern::None: return Verdict::holds(g.m_cap);
    case TailPattern::Persistent: return Verdict::fails(viol, "y - x < -eps^" + std::to_string(g.m_cap) + " persistently");
    case TailPattern::Recurrent: return Verdict::inconclusive(viol, "y - x changes sign along the tail");
    case TailPattern::EarlyOnly: return Verdict::inconclusive(viol, "y - x negative only early in the tail window");
  }
  return Verdict::inconclusive(viol);
}

/// Equality in the factor ring.
template <class R>
inline Verdict equal(const basic_gen_number<R>& x, const basic_gen_number<R>& y) {
  return is_negligible(x - y);
}

/// Multiplicative inverse. Requires a strictly nonzero net; samples before the
/// tail that vanish are mapped to 0 (any value there gives the same class).
template <class R>
inline basic_gen_number<R> inverse(const basic_gen_number<R>& x) {
  const Verdict v = is_invertible(x);
  if (!v.is_holds())
    throw Error(ErrorCode::DivisionByNonInvertible,
                (x.label().empty() ? std::string("divisor") : x.label()) + " is not strictly nonzero (" +
                    std::string(to_string(v.status)) + ")");
  const bounded<R> one(R(1), 0);
  return x.map([](const R& a) { return a == 0 ? R(0) : R(R(1) / a); },
               [one](const bounded<R>& s, const R&) { return s.value == 0 ? 0.0L : (one / s).err; },
               x.label().empty() ? std::string{} : "1/" + x.label());
}

template <class R>
inline basic_gen_number<R> operator/(const basic_gen_number<R>& a, const basic_gen_number<R>& b) {
  return a * inverse(b);
}

/// Integer power; negative exponents require invertibility.
template <class R>
inline basic_gen_number<R> pow(const basic_gen_number<R>& x, int n) {
  if (n < 0) return pow(inverse(x), -n);
  basic_gen_number<R> r = basic_gen_number<R>::constant(R(1), x.grid());
  for (int i = 0; i < n; ++i) r = r * x;
  if (!x.label().empty()) r = r.with_label("pow(" + x.label() + "," + std::to_string(n) + ")");
  return r;
}

}  // namespace gennum

#endif  // GENNUM_GEN_NUMBER_HPP
