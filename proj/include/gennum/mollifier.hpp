#ifndef GENNUM_MOLLIFIER_HPP
#define GENNUM_MOLLIFIER_HPP

#include <cmath>

#include "gennum/gen_number.hpp"

namespace gennum {

/// Standard bump function supported in [-1, 1] with unit integral.
inline long double bump(long double y) {
  if (std::fabs(y) >= 1) return 0;
  constexpr long double norm = 2.25228362104881693L;  // 1 / int exp(-1/(1-y^2)) dy
  return norm * std::exp(-1 / (1 - y * y));
}

/// Pointwise bump of a net (|bump'| < 1.8).
inline gen_number bump(const gen_number& a) {
  return apply(a, [](long double v) { return bump(v); }, [](long double) { return 1.8L; }, "bump");
}

}  // namespace gennum

#endif  // GENNUM_MOLLIFIER_HPP
