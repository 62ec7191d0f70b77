#ifndef GENNUM_GEN_MATRIX_HPP
#define GENNUM_GEN_MATRIX_HPP

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "gennum/gen_number.hpp"

namespace gennum {

/// Element of the module R~^n, stored by coordinates in the canonical basis.
template <class R>
class basic_gen_vector {
 public:
  using number = basic_gen_number<R>;

  basic_gen_vector() = default;
  explicit basic_gen_vector(std::vector<number> entries) : v_(std::move(entries)) { check(); }
  basic_gen_vector(std::initializer_list<number> entries) : v_(entries) { check(); }

  static basic_gen_vector zero(int n, const EpsGrid& g) { return basic_gen_vector(std::vector<number>(n, number::constant(R(0), g))); }
  /// Canonical basis vector e_i (0-based i).
  static basic_gen_vector unit(int n, int i, const EpsGrid& g) {
    auto z = std::vector<number>(n, number::constant(R(0), g));
    z[i] = number::constant(R(1), g);
    return basic_gen_vector(std::move(z));
  }

  int dim() const { return static_cast<int>(v_.size()); }
  const EpsGrid& grid() const { return v_.front().grid(); }
  const number& operator[](int i) const { return v_[i]; }
  const std::vector<number>& entries() const { return v_; }

  std::vector<bounded<R>> slice(int k) const {
    std::vector<bounded<R>> s;
    s.reserve(v_.size());
    for (const auto& x : v_) s.push_back(x.sample(k));
    return s;
  }

  /// Vector from per-slice samples; f(k) must return dim() samples.
  template <class F>
  static basic_gen_vector assemble(const EpsGrid& g, int n, F f) {
    std::vector<std::vector<bounded<R>>> cols(n, std::vector<bounded<R>>(g.k_max));
    for (int k = 1; k <= g.k_max; ++k) {
      const std::vector<bounded<R>> s = f(k);
      for (int i = 0; i < n; ++i) cols[i][k - 1] = s[i];
    }
    std::vector<number> e;
    e.reserve(n);
    for (int i = 0; i < n; ++i) e.push_back(number::from_samples(g, std::move(cols[i])));
    return basic_gen_vector(std::move(e));
  }

 private:
  void check() const {
    if (v_.empty()) throw Error(ErrorCode::DimensionMismatch, "vectors need at least one entry");
    for (const auto& x : v_)
      if (!(x.grid() == v_.front().grid())) throw Error(ErrorCode::GridMismatch, "vector entries live on different grids");
  }

  std::vector<number> v_;
};

/// Square matrix over R~, row-major.
template <class R>
class basic_gen_matrix {
 public:
  using number = basic_gen_number<R>;
  using vector = basic_gen_vector<R>;

  basic_gen_matrix() = default;
  basic_gen_matrix(int n, std::vector<number> entries) : n_(n), a_(std::move(entries)) { check(); }
  basic_gen_matrix(std::initializer_list<std::initializer_list<number>> rows) {
    n_ = static_cast<int>(rows.size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
      a_.insert(a_.end(), r.begin(), r.end());
    }
    check();
  }

  static basic_gen_matrix identity(int n, const EpsGrid& g) {
    std::vector<number> e;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e.push_back(number::constant(R(i == j ? 1 : 0), g));
    return basic_gen_matrix(n, std::move(e));
  }
  static basic_gen_matrix diag(const std::vector<number>& d) {
    const int n = static_cast<int>(d.size());
    const EpsGrid& g = d.front().grid();
    std::vector<number> e;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e.push_back(i == j ? d[i] : number::constant(R(0), g));
    return basic_gen_matrix(n, std::move(e));
  }
  /// Matrix whose columns are the given vectors.
  static basic_gen_matrix from_columns(const std::vector<vector>& cols) {
    const int n = static_cast<int>(cols.size());
    std::vector<number> e;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (cols[j].dim() != n) throw Error(ErrorCode::DimensionMismatch, "need n vectors of dimension n");
        e.push_back(cols[j][i]);
      }
    return basic_gen_matrix(n, std::move(e));
  }

  template <class F>
  static basic_gen_matrix assemble(const EpsGrid& g, int n, F f) {
    std::vector<std::vector<bounded<R>>> ent(n * n, std::vector<bounded<R>>(g.k_max));
    for (int k = 1; k <= g.k_max; ++k) {
      const std::vector<bounded<R>> s = f(k);
      for (int i = 0; i < n * n; ++i) ent[i][k - 1] = s[i];
    }
    std::vector<number> e;
    e.reserve(n * n);
    for (int i = 0; i < n * n; ++i) e.push_back(number::from_samples(g, std::move(ent[i])));
    return basic_gen_matrix(n, std::move(e));
  }

  int dim() const { return n_; }
  const EpsGrid& grid() const { return a_.front().grid(); }
  const number& operator()(int i, int j) const { return a_[i * n_ + j]; }
  const std::vector<number>& entries() const { return a_; }

  vector row(int i) const { return vector(std::vector<number>(a_.begin() + i * n_, a_.begin() + (i + 1) * n_)); }
  vector col(int j) const {
    std::vector<number> c;
    for (int i = 0; i < n_; ++i) c.push_back((*this)(i, j));
    return vector(std::move(c));
  }

  basic_gen_matrix transpose() const {
    std::vector<number> e;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) e.push_back((*this)(j, i));
    return basic_gen_matrix(n_, std::move(e));
  }

  /// Leading principal k x k submatrix.
  basic_gen_matrix leading(int k) const {
    std::vector<number> e;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) e.push_back((*this)(i, j));
    return basic_gen_matrix(k, std::move(e));
  }

  std::vector<bounded<R>> slice(int k) const {
    std::vector<bounded<R>> s;
    s.reserve(a_.size());
    for (const auto& x : a_) s.push_back(x.sample(k));
    return s;
  }

 private:
  void check() const {
    if (n_ < 1 || static_cast<int>(a_.size()) != n_ * n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be n x n with n >= 1");
    for (const auto& x : a_)
      if (!(x.grid() == a_.front().grid())) throw Error(ErrorCode::GridMismatch, "matrix entries live on different grids");
  }

  int n_ = 0;
  std::vector<number> a_;
};

using GenVector = basic_gen_vector<long double>;
using GenMatrix = basic_gen_matrix<long double>;

// ---------------------------------------------------------------- algebra

template <class R>
inline basic_gen_vector<R> operator+(const basic_gen_vector<R>& a, const basic_gen_vector<R>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < a.dim(); ++i) e.push_back(a[i] + b[i]);
  return basic_gen_vector<R>(std::move(e));
}
template <class R>
inline basic_gen_vector<R> operator-(const basic_gen_vector<R>& a, const basic_gen_vector<R>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < a.dim(); ++i) e.push_back(a[i] - b[i]);
  return basic_gen_vector<R>(std::move(e));
}
template <class R>
inline basic_gen_vector<R> operator-(const basic_gen_vector<R>& a) {
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < a.dim(); ++i) e.push_back(-a[i]);
  return basic_gen_vector<R>(std::move(e));
}
template <class R>
inline basic_gen_vector<R> operator*(const basic_gen_number<R>& c, const basic_gen_vector<R>& a) {
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < a.dim(); ++i) e.push_back(c * a[i]);
  return basic_gen_vector<R>(std::move(e));
}

/// Euclidean pairing sum_i a_i b_i.
template <class R>
inline basic_gen_number<R> dot(const basic_gen_vector<R>& a, const basic_gen_vector<R>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
  basic_gen_number<R> s = a[0] * b[0];
  for (int i = 1; i < a.dim(); ++i) s = s + a[i] * b[i];
  return s;
}

template <class R>
inline basic_gen_vector<R> operator*(const basic_gen_matrix<R>& m, const basic_gen_vector<R>& v) {
  if (m.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix and vector dimensions differ");
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < m.dim(); ++i) {
    basic_gen_number<R> s = m(i, 0) * v[0];
    for (int j = 1; j < m.dim(); ++j) s = s + m(i, j) * v[j];
    e.push_back(s);
  }
  return basic_gen_vector<R>(std::move(e));
}

template <class R>
inline basic_gen_matrix<R> operator*(const basic_gen_matrix<R>& a, const basic_gen_matrix<R>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
  const int n = a.dim();
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      basic_gen_number<R> s = a(i, 0) * b(0, j);
      for (int l = 1; l < n; ++l) s = s + a(i, l) * b(l, j);
      e.push_back(s);
    }
  return basic_gen_matrix<R>(n, std::move(e));
}

template <class R>
inline basic_gen_matrix<R> operator+(const basic_gen_matrix<R>& a, const basic_gen_matrix<R>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
  std::vector<basic_gen_number<R>> e;
  for (std::size_t i = 0; i < a.entries().size(); ++i) e.push_back(a.entries()[i] + b.entries()[i]);
  return basic_gen_matrix<R>(a.dim(), std::move(e));
}
template <class R>
inline basic_gen_matrix<R> operator-(const basic_gen_matrix<R>& a, const basic_gen_matrix<R>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
  std::vector<basic_gen_number<R>> e;
  for (std::size_t i = 0; i < a.entries().size(); ++i) e.push_back(a.entries()[i] - b.entries()[i]);
  return basic_gen_matrix<R>(a.dim(), std::move(e));
}

/// Bilinear form sum_ij g_ij u^i v^j.
template <class R>
inline basic_gen_number<R> form(const basic_gen_matrix<R>& g, const basic_gen_vector<R>& u, const basic_gen_vector<R>& v) {
  return dot(u, g * v);
}

/// Index lowering u_a = g_ab u^b (the same as g * u).
template <class R>
inline basic_gen_vector<R> lower(const basic_gen_matrix<R>& g, const basic_gen_vector<R>& u) {
  return g * u;
}

/// Conjunction of is_negligible over all entries.
template <class R>
inline Verdict all_negligible(const basic_gen_vector<R>& v) {
  std::vector<Verdict> vs;
  for (const auto& x : v.entries()) vs.push_back(is_negligible(x));
  return all_of(vs);
}
template <class R>
inline Verdict all_negligible(const basic_gen_matrix<R>& m) {
  std::vector<Verdict> vs;
  for (const auto& x : m.entries()) vs.push_back(is_negligible(x));
  return all_of(vs);
}

}  // namespace gennum

#endif  // GENNUM_GEN_MATRIX_HPP
