#ifndef GENNUM_INDEX_SET_HPP
#define GENNUM_INDEX_SET_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "gennum/error.hpp"

namespace gennum {

/// A subset of the grid indices k = 1, 2, ... used to build characteristic
/// nets. Sets that are not representable on the dyadic grid (such as the
/// rationals in (0,1]) are replaced by index patterns with the same algebraic
/// role, e.g. Even/Odd for a complementary pair of idempotents.
class IndexSet {
 public:
  enum class Kind { All, Even, Odd, ArithmeticProgression, PowersOfTwo, Explicit };

  static IndexSet all() { return IndexSet(Kind::All); }
  static IndexSet even() { return IndexSet(Kind::Even); }
  static IndexSet odd() { return IndexSet(Kind::Odd); }
  static IndexSet powers_of_two() { return IndexSet(Kind::PowersOfTwo); }

  /// {start, start + step, start + 2 step, ...}
  static IndexSet progression(int start, int step) {
    if (step < 1) throw Error(ErrorCode::ParseError, "arithmetic progression step must be positive");
    IndexSet s(Kind::ArithmeticProgression);
    s.start_ = start;
    s.step_ = step;
    return s;
  }

  static IndexSet explicit_set(std::vector<int> ks) {
    IndexSet s(Kind::Explicit);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    s.members_ = std::move(ks);
    return s;
  }

  Kind kind() const { return kind_; }

  bool contains(int k) const {
    switch (kind_) {
      case Kind::All: return true;
      case Kind::Even: return k % 2 == 0;
      case Kind::Odd: return k % 2 != 0;
      case Kind::ArithmeticProgression: return k >= start_ && (k - start_) % step_ == 0;
      case Kind::PowersOfTwo: return k > 0 && (k & (k - 1)) == 0;
      case Kind::Explicit: return std::binary_search(members_.begin(), members_.end(), k);
    }
    return false;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::All: return "all";
      case Kind::Even: return "even";
      case Kind::Odd: return "odd";
      case Kind::ArithmeticProgression: return "ap(" + std::to_string(start_) + "," + std::to_string(step_) + ")";
      case Kind::PowersOfTwo: return "pow2";
      case Kind::Explicit: {
        std::string s = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? "," : "") + std::to_string(members_[i]);
        return s + "}";
      }
    }
    return "?";
  }

 private:
  explicit IndexSet(Kind k) : kind_(k) {}

  Kind kind_;
  int start_ = 0;
  int step_ = 1;
  std::vector<int> members_;
};

}  // namespace gennum

#endif  // GENNUM_INDEX_SET_HPP
