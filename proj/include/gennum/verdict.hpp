#ifndef GENNUM_VERDICT_HPP
#define GENNUM_VERDICT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gennum/eps_grid.hpp"

namespace gennum {

enum class Status { Holds, Fails, Inconclusive };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Finite-grid decision for a statement of the form
/// "exists m, exists eps0, for all eps < eps0: ...".
///
/// Holds carries an exponent certificate, Fails carries the grid indices
/// that witness the failure. Inconclusive may carry either.
struct Verdict {
  Status status = Status::Inconclusive;
  std::optional<int> exponent;
  std::vector<int> witnesses;
  std::string note;

  static Verdict holds(int exponent, std::string note = {}) {
    return {Status::Holds, exponent, {}, std::move(note)};
  }
  static Verdict fails(std::vector<int> witnesses, std::string note = {}, std::optional<int> exponent = {}) {
    if (witnesses.empty()) witnesses.push_back(0);  // 0 marks "no specific grid index"
    return {Status::Fails, exponent, std::move(witnesses), std::move(note)};
  }
  static Verdict inconclusive(std::vector<int> witnesses, std::string note = {}) {
    return {Status::Inconclusive, std::nullopt, std::move(witnesses), std::move(note)};
  }

  bool is_holds() const { return status == Status::Holds; }
  bool is_fails() const { return status == Status::Fails; }
  bool is_inconclusive() const { return status == Status::Inconclusive; }
  explicit operator bool() const { return is_holds(); }
};

/// Shape of the set of tail indices at which a sampled condition is violated.
enum class TailPattern {
  None,        // no violation on the tail
  EarlyOnly,   // violations only before the upper half of the tail
  Recurrent,   // some violations in the upper half, not all
  Persistent,  // every index of the upper half is violated
};

inline TailPattern tail_pattern(const EpsGrid& grid, const std::vector<int>& violations) {
  if (violations.empty()) return TailPattern::None;
  const int upper = grid.upper_tail_start();
  const auto in_upper = std::count_if(violations.begin(), violations.end(), [&](int k) { return k >= upper; });
  if (in_upper == 0) return TailPattern::EarlyOnly;
  if (in_upper == grid.k_max - upper + 1) return TailPattern::Persistent;
  return TailPattern::Recurrent;
}

/// Conjunction: Holds iff all hold (certificate = max exponent); the first
/// Fails wins over Inconclusive.
inline Verdict all_of(const std::vector<Verdict>& vs, std::string note = {}) {
  int m = 0;
  const Verdict* inconclusive = nullptr;
  for (const auto& v : vs) {
    if (v.is_fails()) return Verdict::fails(v.witnesses, note.empty() ? v.note : note + ": " + v.note, v.exponent);
    if (v.is_inconclusive() && !inconclusive) inconclusive = &v;
    if (v.is_holds()) m = std::max(m, v.exponent.value_or(0));
  }
  if (inconclusive) return Verdict::inconclusive(inconclusive->witnesses, note.empty() ? inconclusive->note : note + ": " + inconclusive->note);
  return Verdict::holds(m, std::move(note));
}

}  // namespace gennum

#endif  // GENNUM_VERDICT_HPP
