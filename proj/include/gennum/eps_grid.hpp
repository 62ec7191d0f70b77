#ifndef GENNUM_EPS_GRID_HPP
#define GENNUM_EPS_GRID_HPP

#include <cmath>

#include "gennum/error.hpp"

namespace gennum {

/// Dyadic sampling of the index set (0,1]: eps_k = 2^-k for k = 1..k_max.
/// Asymptotic ("for all sufficiently small eps") statements are decided on
/// the tail window [tail_start, k_max].
struct EpsGrid {
  int k_max = 32;
  int tail_start = 16;
  int m_cap = 40;

  EpsGrid() = default;
  explicit EpsGrid(int kmax, int tail = -1, int mcap = 40) : k_max(kmax), tail_start(tail < 0 ? kmax / 2 : tail), m_cap(mcap) {
    validate();
  }

  void validate() const {
    if (k_max < 2) throw Error(ErrorCode::InvalidGrid, "k_max must be at least 2");
    if (tail_start < 1 || tail_start >= k_max) throw Error(ErrorCode::InvalidGrid, "tail_start must satisfy 1 <= tail_start < k_max");
    if (m_cap < 1) throw Error(ErrorCode::InvalidGrid, "m_cap must be positive");
    // Thresholds eps^(+-m_cap) must stay inside the long double exponent range.
    if (static_cast<long>(m_cap) * k_max > 16000) throw Error(ErrorCode::InvalidGrid, "m_cap * k_max exceeds the representable range");
  }

  template <class Real = long double>
  Real eps_at(int k) const {
    using std::ldexp;
    return ldexp(Real(1), -k);
  }

  /// First index of the upper half of the tail window. Violations that only
  /// occur before it are treated as transient.
  int upper_tail_start() const { return (tail_start + k_max + 1) / 2; }
  int tail_size() const { return k_max - tail_start + 1; }
  bool in_tail(int k) const { return k >= tail_start && k <= k_max; }

  friend bool operator==(const EpsGrid&, const EpsGrid&) = default;
};

}  // namespace gennum

#endif  // GENNUM_EPS_GRID_HPP
