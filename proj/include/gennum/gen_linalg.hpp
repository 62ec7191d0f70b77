#ifndef GENNUM_GEN_LINALG_HPP
#define GENNUM_GEN_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gennum/gen_matrix.hpp"
#include "gennum/slice_linalg.hpp"

namespace gennum {

// ---------------------------------------------------------------- symmetry

/// Verdict that A - A^t is entrywise negligible.
template <class R>
inline Verdict is_symmetric_class(const basic_gen_matrix<R>& a) {
  std::vector<Verdict> vs;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) {
      Verdict v = is_negligible(a(i, j) - a(j, i));
      if (!v.is_holds()) v.note = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + v.note;
      vs.push_back(v);
    }
  return all_of(vs);
}

/// Symmetric representative (A + A^t)/2 of a symmetric class.
template <class R>
inline basic_gen_matrix<R> symmetrize(const basic_gen_matrix<R>& a) {
  const Verdict v = is_symmetric_class(a);
  if (!v.is_holds()) throw Error(ErrorCode::NotSymmetricClass, v.note);
  const int n = a.dim();
  const auto half = basic_gen_number<R>::constant(R(0.5L), a.grid());
  std::vector<basic_gen_number<R>> e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) e.push_back(a(i, i));
      else if (i < j) e.push_back((a(i, j) + a(j, i)) * half);
      else e.push_back((a(j, i) + a(i, j)) * half);
    }
  return basic_gen_matrix<R>(n, std::move(e));
}

// ---------------------------------------------------------------- determinant

template <class R>
inline basic_gen_number<R> det(const basic_gen_matrix<R>& a) {
  const EpsGrid& g = a.grid();
  std::vector<bounded<R>> s(g.k_max);
  for (int k = 1; k <= g.k_max; ++k) s[k - 1] = slice::det(a.slice(k), a.dim());
  return basic_gen_number<R>::from_samples(g, std::move(s));
}

/// Non-degeneracy: det A is invertible.
template <class R>
inline Verdict is_nondegenerate(const basic_gen_matrix<R>& a) {
  return is_invertible(det(a));
}

/// Inverse matrix net. Requires a non-degenerate A; singular slices outside
/// the tail window are filled with 0.
template <class R>
inline basic_gen_matrix<R> inverse(const basic_gen_matrix<R>& a) {
  const Verdict v = is_nondegenerate(a);
  if (!v.is_holds()) throw Error(ErrorCode::Degenerate, "matrix is not invertible: " + v.note);
  const int n = a.dim();
  return basic_gen_matrix<R>::assemble(a.grid(), n, [&](int k) {
    slice::bmat<R> out;
    if (!slice::inverse(a.slice(k), n, out)) out.assign(n * n, bounded<R>(R(0), 0));
    return out;
  });
}

/// Solves A x = b (A non-degenerate).
template <class R>
inline basic_gen_vector<R> solve(const basic_gen_matrix<R>& a, const basic_gen_vector<R>& b) {
  const Verdict v = is_nondegenerate(a);
  if (!v.is_holds()) throw Error(ErrorCode::Degenerate, "matrix is not invertible: " + v.note);
  const int n = a.dim();
  return basic_gen_vector<R>::assemble(a.grid(), n, [&](int k) {
    std::vector<bounded<R>> x;
    if (!slice::solve(a.slice(k), n, b.slice(k), x)) x.assign(n, bounded<R>(R(0), 0));
    return x;
  });
}

// ---------------------------------------------------------------- eigenvalues

template <class R>
struct basic_eigen_result {
  std::vector<basic_gen_number<R>> eigenvalues;  // descending per eps
  basic_gen_matrix<R> U;                         // rows are eigenvectors, det U = 1
  basic_gen_number<R> residual;                  // ||U A U^t - diag||_F per eps
  int max_sweeps = 0;
};
using EigenResult = basic_eigen_result<long double>;

/// Generalized eigenvalues of a symmetric class. The representative is first
/// symmetrized; each slice is diagonalized by cyclic Jacobi.
template <class R>
inline basic_eigen_result<R> gen_eigen(const basic_gen_matrix<R>& a_in) {
  using std::sqrt;
  const basic_gen_matrix<R> a = symmetrize(a_in);
  const int n = a.dim();
  const EpsGrid& g = a.grid();
  const long double u = real_traits<R>::unit_roundoff();
  std::vector<std::vector<bounded<R>>> lam(n, std::vector<bounded<R>>(g.k_max));
  std::vector<std::vector<bounded<R>>> uu(n * n, std::vector<bounded<R>>(g.k_max));
  std::vector<bounded<R>> res(g.k_max);
  int max_sweeps = 0;
  for (int k = 1; k <= g.k_max; ++k) {
    const auto s = a.slice(k);
    std::vector<R> vals(n * n);
    long double ent_err = 0, fro = 0;
    for (int i = 0; i < n * n; ++i) {
      vals[i] = s[i].value;
      ent_err += s[i].err * s[i].err;
      fro += s[i].mag() * s[i].mag();
    }
    ent_err = std::sqrt(ent_err);
    fro = std::sqrt(fro);
    auto jr = slice::jacobi(vals, n);
    max_sweeps = std::max(max_sweeps, jr.sweeps);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return jr.values[x] > jr.values[y]; });

    std::vector<R> U(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) U[i * n + j] = jr.vectors[order[i] * n + j];
    {
      slice::bmat<R> ub(n * n);
      for (int i = 0; i < n * n; ++i) ub[i] = bounded<R>(U[i], 0);
      if (slice::det(ub, n).value < 0)
        for (int j = 0; j < n; ++j) U[j] = -U[j];
    }

    const long double tol = 10.0L * n * n * u * fro;
    const long double lam_err = ent_err + std::fabs(to_ld(jr.off)) + tol;
    for (int i = 0; i < n; ++i) lam[i][k - 1] = bounded<R>(jr.values[order[i]], lam_err);
    for (int i = 0; i < n * n; ++i) uu[i][k - 1] = bounded<R>(U[i], 10.0L * n * n * u);

    // Residual ||U A U^t - diag(lambda)||_F on the plain values.
    R r2(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        R m(0);
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) m += U[i * n + p] * vals[p * n + q] * U[j * n + q];
        if (i == j) m -= jr.values[order[i]];
        r2 += m * m;
      }
    res[k - 1] = bounded<R>(R(sqrt(r2)), tol);
  }
  basic_eigen_result<R> out;
  for (int i = 0; i < n; ++i) out.eigenvalues.push_back(basic_gen_number<R>::from_samples(g, std::move(lam[i])));
  std::vector<basic_gen_number<R>> ue;
  for (int i = 0; i < n * n; ++i) ue.push_back(basic_gen_number<R>::from_samples(g, std::move(uu[i])));
  out.U = basic_gen_matrix<R>(n, std::move(ue));
  out.residual = basic_gen_number<R>::from_samples(g, std::move(res));
  out.max_sweeps = max_sweeps;
  return out;
}

/// Index (numbers of strictly positive / strictly negative eigenvalues).
struct MatrixIndex {
  std::optional<int> nu_plus;
  std::optional<int> nu_minus;
  Verdict verdict;

  bool defined() const { return nu_plus.has_value() && nu_minus.has_value(); }
  bool lorentzian(int n) const { return defined() && *nu_minus == 1 && *nu_plus == n - 1; }
  bool positive_definite(int n) const { return defined() && *nu_minus == 0 && *nu_plus == n; }
};

template <class R>
inline MatrixIndex matrix_index(const basic_gen_matrix<R>& a) {
  const basic_gen_matrix<R> s = symmetrize(a);
  const auto eig = gen_eigen(s);
  // det A = prod lambda_i, so det A is invertible iff every eigenvalue is.
  // Testing the factors avoids the cancellation in an explicit determinant.
  {
    std::vector<Verdict> nz;
    for (const auto& l : eig.eigenvalues) nz.push_back(is_invertible(l));
    const Verdict nd = all_of(nz);
    if (!nd.is_holds()) throw Error(ErrorCode::Degenerate, "determinant is not invertible: " + nd.note);
  }
  MatrixIndex mi;
  int plus = 0, minus = 0, m = 0;
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const auto& l = eig.eigenvalues[i];
    const Verdict p = is_strictly_positive(l);
    if (p.is_holds()) {
      ++plus;
      m = std::max(m, *p.exponent);
      continue;
    }
    const Verdict q = is_strictly_negative(l);
    if (q.is_holds()) {
      ++minus;
      m = std::max(m, *q.exponent);
      continue;
    }
    std::vector<int> w = p.witnesses;
    w.insert(w.end(), q.witnesses.begin(), q.witnesses.end());
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    mi.verdict = Verdict::fails(w, "eigenvalue " + std::to_string(i + 1) + " has no definite sign");
    return mi;
  }
  mi.nu_plus = plus;
  mi.nu_minus = minus;
  mi.verdict = Verdict::holds(m);
  return mi;
}

/// Leading principal minors det A^(k) all strictly positive.
template <class R>
inline Verdict principal_minor_test(const basic_gen_matrix<R>& a) {
  const basic_gen_matrix<R> s = symmetrize(a);
  std::vector<Verdict> vs;
  for (int k = 1; k <= s.dim(); ++k) {
    Verdict v = is_strictly_positive(det(s.leading(k)));
    if (!v.is_holds()) v.note = "minor " + std::to_string(k) + ": " + v.note;
    vs.push_back(std::move(v));
  }
  return all_of(vs);
}

// ---------------------------------------------------------------- freeness

/// Euclidean norm (sum_i (v^i)^2)^(1/2).
template <class R>
inline basic_gen_number<R> norm(const basic_gen_vector<R>& v) {
  return sqrt(dot(v, v));
}

/// Freeness via the norm: ||v|| strictly positive.
template <class R>
inline Verdict is_free(const basic_gen_vector<R>& v) {
  return is_strictly_positive(norm(v));
}

/// max_i |v^i| per eps.
template <class R>
inline basic_gen_number<R> max_abs(const basic_gen_vector<R>& v) {
  const EpsGrid& g = v.grid();
  std::vector<bounded<R>> s(g.k_max);
  for (int k = 1; k <= g.k_max; ++k) {
    bounded<R> best = abs(v[0].sample(k));
    for (int i = 1; i < v.dim(); ++i) {
      const auto c = abs(v[i].sample(k));
      if (c.value > best.value) best = c;
    }
    for (int i = 0; i < v.dim(); ++i) best.err = std::max(best.err, v[i].sample(k).err);
    s[k - 1] = best;
  }
  return basic_gen_number<R>::from_samples(g, std::move(s));
}

/// Freeness via the largest component: max_i |v^i| strictly positive.
template <class R>
inline Verdict is_free_by_max(const basic_gen_vector<R>& v) {
  return is_strictly_positive(max_abs(v));
}

/// Per eps the (0-based) index of the largest |v^i|, smallest index on ties.
template <class R>
inline std::vector<int> dominant_index(const basic_gen_vector<R>& v) {
  const EpsGrid& g = v.grid();
  std::vector<int> idx(g.k_max);
  for (int k = 1; k <= g.k_max; ++k) {
    int b = 0;
    for (int i = 1; i < v.dim(); ++i)
      if (v[i].sample(k).mag() > v[b].sample(k).mag()) b = i;
    idx[k - 1] = b;
  }
  return idx;
}

/// Candidate basis {v, A^-1 e_2, ..., A^-1 e_n}, where A_eps swaps coordinate
/// 1 with the dominant coordinate of v_eps. No freeness check.
template <class R>
inline std::vector<basic_gen_vector<R>> basis_extension_candidate(const basic_gen_vector<R>& v) {
  const int n = v.dim();
  const EpsGrid& g = v.grid();
  const auto dom = dominant_index(v);
  std::vector<basic_gen_vector<R>> out{v};
  for (int j = 1; j < n; ++j) {
    out.push_back(basic_gen_vector<R>::assemble(g, n, [&](int k) {
      std::vector<bounded<R>> s(n, bounded<R>(R(0), 0));
      s[dom[k - 1] == j ? 0 : j] = bounded<R>(R(1), 0);
      return s;
    }));
  }
  return out;
}

/// Matrix whose columns are the given vectors.
template <class R>
inline basic_gen_matrix<R> coordinate_matrix(const std::vector<basic_gen_vector<R>>& family) {
  return basic_gen_matrix<R>::from_columns(family);
}

template <class R>
inline Verdict is_basis(const std::vector<basic_gen_vector<R>>& family) {
  if (family.empty() || static_cast<int>(family.size()) != family.front().dim())
    return Verdict::fails({}, "a basis of R~^n needs exactly n vectors");
  return is_nondegenerate(coordinate_matrix(family));
}

/// Extends a free vector to a basis of R~^n.
template <class R>
inline std::vector<basic_gen_vector<R>> extend_to_basis(const basic_gen_vector<R>& v) {
  const Verdict f = is_free(v);
  if (!f.is_holds()) throw Error(ErrorCode::NotFree, "vector is not free: " + f.note);
  return basis_extension_candidate(v);
}

/// Replaces basis[j] (0-based) by w; the coefficient of w along basis[j] must
/// be strictly nonzero.
template <class R>
inline std::vector<basic_gen_vector<R>> steinitz_exchange(const std::vector<basic_gen_vector<R>>& basis,
                                                         const basic_gen_vector<R>& w, int j) {
  const int n = w.dim();
  if (static_cast<int>(basis.size()) != n || j < 0 || j >= n)
    throw Error(ErrorCode::DimensionMismatch, "need a basis of n vectors and 0 <= j < n");
  const auto c = coordinate_matrix(basis);
  const Verdict b = is_nondegenerate(c);
  if (!b.is_holds()) throw Error(ErrorCode::Degenerate, "input family is not a basis: " + b.note);
  const auto lambda = solve(c, w);
  const Verdict nz = is_strictly_nonzero(lambda[j]);
  if (!nz.is_holds())
    throw Error(ErrorCode::CoefficientNotStrictlyNonzero,
                "coefficient " + std::to_string(j + 1) + " is not strictly nonzero (" + std::string(to_string(nz.status)) + ")");
  auto out = basis;
  out[j] = w;
  return out;
}

// ---------------------------------------------------------------- projection

/// Orthogonal projection onto span(m_basis) w.r.t. the positive definite h,
/// via modified Gram-Schmidt with one reorthogonalization pass.
template <class R>
inline basic_gen_vector<R> orthogonal_project(const std::vector<basic_gen_vector<R>>& m_basis, const basic_gen_matrix<R>& h,
                                              const basic_gen_vector<R>& v) {
  if (m_basis.empty()) throw Error(ErrorCode::DimensionMismatch, "empty subspace basis");
  const Verdict pd = principal_minor_test(h);
  if (!pd.is_holds()) throw Error(ErrorCode::NotPositiveDefinite, pd.note);
  const int m = static_cast<int>(m_basis.size());
  {
    std::vector<basic_gen_number<R>> gram;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gram.push_back(form(h, m_basis[i], m_basis[j]));
    const Verdict nd = is_nondegenerate(basic_gen_matrix<R>(m, std::move(gram)));
    if (!nd.is_holds()) throw Error(ErrorCode::DegenerateGram, nd.note);
  }
  std::vector<basic_gen_vector<R>> e;
  for (int i = 0; i < m; ++i) {
    basic_gen_vector<R> w = m_basis[i];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : e) w = w - form(h, q, w) * q;
    const auto nn = sqrt(form(h, w, w));
    if (!is_invertible(nn).is_holds()) throw Error(ErrorCode::DegenerateGram, "basis vector " + std::to_string(i + 1) + " is dependent");
    e.push_back(inverse(nn) * w);
  }
  basic_gen_vector<R> p = form(h, e[0], v) * e[0];
  for (int i = 1; i < m; ++i) p = p + form(h, e[i], v) * e[i];
  return p;
}

// ---------------------------------------------------------------- fixtures

/// Idempotent partition lambda_i = chi(i + nZ), i = 1..n.
template <class R>
inline std::vector<basic_gen_number<R>> idempotent_partition(int n, const EpsGrid& g) {
  std::vector<basic_gen_number<R>> l;
  for (int i = 1; i <= n; ++i) l.push_back(basic_gen_number<R>::chi(IndexSet::progression(i, n), g));
  return l;
}

/// v = sum_i (-1)^((i+1)(n+1)) lambda_i e_i for an idempotent partition.
template <class R>
inline basic_gen_vector<R> idempotent_free_vector(const std::vector<basic_gen_number<R>>& lambda) {
  const int n = static_cast<int>(lambda.size());
  std::vector<basic_gen_number<R>> e;
  for (int i = 1; i <= n; ++i) e.push_back(((i + 1) * (n + 1)) % 2 == 0 ? lambda[i - 1] : -lambda[i - 1]);
  return basic_gen_vector<R>(std::move(e));
}

/// Columns v_1 = v and v_j = sum_k lambda_{gamma^(j-1)(k)} e_k with the cyclic
/// permutation gamma(1) = n, gamma(k) = k - 1.
template <class R>
inline basic_gen_matrix<R> idempotent_basis_matrix(const std::vector<basic_gen_number<R>>& lambda) {
  const int n = static_cast<int>(lambda.size());
  std::vector<basic_gen_vector<R>> cols{idempotent_free_vector(lambda)};
  for (int j = 2; j <= n; ++j) {
    std::vector<basic_gen_number<R>> c;
    for (int k = 1; k <= n; ++k) {
      const int idx = ((k - 1 - (j - 1)) % n + n) % n;  // gamma^(j-1)(k) - 1
      c.push_back(lambda[idx]);
    }
    cols.emplace_back(std::move(c));
  }
  return basic_gen_matrix<R>::from_columns(cols);
}

}  // namespace gennum

#endif  // GENNUM_GEN_LINALG_HPP
