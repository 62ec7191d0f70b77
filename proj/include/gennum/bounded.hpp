#ifndef GENNUM_BOUNDED_HPP
#define GENNUM_BOUNDED_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace gennum {

/// Per-scalar numeric hooks. Specialize (or overload `to_ld`) for scalar
/// types that are not convertible with static_cast.
template <class Real>
struct real_traits {
  /// Unit roundoff of one correctly rounded operation.
  static long double unit_roundoff() {
    return static_cast<long double>(std::numeric_limits<Real>::epsilon()) / 2;
  }
};

template <class Real>
inline long double to_ld(const Real& x) {
  return static_cast<long double>(x);
}

/// log2|x| for any scalar that supports frexp; -inf for zero.
template <class Real>
inline long double log2_abs(const Real& x) {
  using std::frexp;
  if (x == 0) return -std::numeric_limits<long double>::infinity();
  int e = 0;
  const Real m = frexp(x, &e);
  return static_cast<long double>(e) + std::log2(std::fabs(to_ld(m)));
}

/// A sample value together with an absolute bound on its accumulated
/// rounding error. The value is computed exactly as plain arithmetic would
/// compute it; only the bound is extra.
namespace detail {
// 0 * inf is 0 for error propagation: an exact zero carries no error.
inline long double prod(long double x, long double y) { return (x == 0 || y == 0) ? 0 : x * y; }
}  // namespace detail

template <class Real>
struct bounded {
  Real value{};
  long double err = 0;

  bounded() = default;
  bounded(Real v, long double e = 0) : value(std::move(v)), err(e) {}

  static long double u() { return real_traits<Real>::unit_roundoff(); }
  long double mag() const { return std::fabs(to_ld(value)); }
};

template <class Real>
inline bounded<Real> operator+(const bounded<Real>& a, const bounded<Real>& b) {
  Real v = a.value + b.value;
  const long double e = a.err + b.err + bounded<Real>::u() * std::fabs(to_ld(v));
  return {std::move(v), e};
}

template <class Real>
inline bounded<Real> operator-(const bounded<Real>& a, const bounded<Real>& b) {
  Real v = a.value - b.value;
  const long double e = a.err + b.err + bounded<Real>::u() * std::fabs(to_ld(v));
  return {std::move(v), e};
}

template <class Real>
inline bounded<Real> operator-(const bounded<Real>& a) {
  return {Real(-a.value), a.err};
}

template <class Real>
inline bounded<Real> operator*(const bounded<Real>& a, const bounded<Real>& b) {
  Real v = a.value * b.value;
  const long double e = detail::prod(a.mag(), b.err) + detail::prod(b.mag(), a.err) +
                        detail::prod(a.err, b.err) +
                        bounded<Real>::u() * std::fabs(to_ld(v));
  return {std::move(v), e};
}

/// Division. When the divisor is not bounded away from zero by its own error
/// the bound is infinite.
template <class Real>
inline bounded<Real> operator/(const bounded<Real>& a, const bounded<Real>& b) {
  if (b.value == 0) return {Real(0), std::numeric_limits<long double>::infinity()};
  Real v = a.value / b.value;
  const long double vm = std::fabs(to_ld(v));
  const long double denom = b.mag() - b.err;
  const long double e = denom > 0 ? (a.err + detail::prod(vm, b.err)) / denom + bounded<Real>::u() * vm
                                  : std::numeric_limits<long double>::infinity();
  return {std::move(v), e};
}

template <class Real>
inline bounded<Real> abs(const bounded<Real>& a) {
  using std::abs;
  return {Real(abs(a.value)), a.err};
}

/// Square root of a non-negative quantity; negative values are clamped to 0.
template <class Real>
inline bounded<Real> sqrt(const bounded<Real>& a) {
  using std::sqrt;
  const Real clamped = a.value > 0 ? a.value : Real(0);
  Real v = sqrt(clamped);
  const long double vm = to_ld(v);
  const long double lower = std::max(to_ld(clamped) - a.err, 0.0L);
  long double e = std::sqrt(a.err);
  const long double denom = vm + std::sqrt(lower);
  if (denom > 0) e = std::min(e, a.err / denom);
  return {std::move(v), e + bounded<Real>::u() * vm};
}

template <class Real>
inline bounded<Real> exp(const bounded<Real>& a) {
  using std::exp;
  Real v = exp(a.value);
  const long double vm = std::fabs(to_ld(v));
  return {std::move(v), vm * std::expm1(a.err) + 2 * bounded<Real>::u() * vm};
}

}  // namespace gennum

#endif  // GENNUM_BOUNDED_HPP
