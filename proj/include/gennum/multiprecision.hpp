#ifndef GENNUM_MULTIPRECISION_HPP
#define GENNUM_MULTIPRECISION_HPP

// High-precision scalar for decisions that need residuals below eps^M_cap
// literally. Requires Boost.Multiprecision and linking against MPFR and GMP.

#include <cmath>

#include <boost/multiprecision/mpfr.hpp>

#include "gennum/bounded.hpp"
#include "gennum/eps_grid.hpp"

namespace gennum {

using mp_real = boost::multiprecision::mpfr_float;

template <>
struct real_traits<mp_real> {
  static long double unit_roundoff() {
    return std::ldexp(1.0L, -static_cast<int>(mpfr_get_default_prec()) + 1) / 2;
  }
};

template <>
inline long double to_ld<mp_real>(const mp_real& x) {
  return x.convert_to<long double>();
}

/// Bits needed so that rounding noise stays below eps^(m_cap + margin) on the
/// whole grid.
inline unsigned precision_bits_for(const EpsGrid& g, int margin = 24) {
  return static_cast<unsigned>((g.m_cap + margin) * g.k_max + 64);
}

/// Sets the default MPFR precision for the lifetime of the guard.
class precision_guard {
 public:
  explicit precision_guard(unsigned bits) : old_digits_(mp_real::default_precision()), old_bits_(mpfr_get_default_prec()) {
    mp_real::default_precision(digits10_for(bits));
    mpfr_set_default_prec(bits);
  }
  explicit precision_guard(const EpsGrid& g) : precision_guard(precision_bits_for(g)) {}
  ~precision_guard() {
    mp_real::default_precision(old_digits_);
    mpfr_set_default_prec(old_bits_);
  }
  precision_guard(const precision_guard&) = delete;
  precision_guard& operator=(const precision_guard&) = delete;

  static unsigned digits10_for(unsigned bits) { return static_cast<unsigned>(bits * 0.30103) + 1; }

 private:
  unsigned old_digits_;
  mpfr_prec_t old_bits_;
};

}  // namespace gennum

#endif  // GENNUM_MULTIPRECISION_HPP
