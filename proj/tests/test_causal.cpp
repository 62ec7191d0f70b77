#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gennum/causal.hpp"

using namespace gennum;
using G = gen_number;
using V = GenVector;
using M = GenMatrix;

namespace {

const EpsGrid grid{};

G c(long double x) { return G::constant(x, grid); }
G eps() { return G::eps(grid); }
G chi_even() { return G::chi(IndexSet::even(), grid); }
BilinearForm mink(int n) { return BilinearForm(minkowski<long double>(n, grid)); }

V vec(std::initializer_list<long double> xs) {
  std::vector<G> e;
  for (auto x : xs) e.push_back(c(x));
  return V(e);
}

bool same(const G& a, const G& b) {
  for (int k = 1; k <= grid.k_max; ++k)
    if (a.value(k) != b.value(k)) return false;
  return true;
}

G power(long double a, int p) { return G::make([a, p](long double e) { return a * std::pow(e, p); }, grid); }

}  // namespace

TEST_CASE("bilinear forms") {
  auto g = mink(4);
  CHECK(g.lorentzian());
  CHECK(*g.index().nu_minus == 1);
  auto h = BilinearForm(M::identity(3, grid));
  CHECK(h.positive_definite());
  CHECK_FALSE(h.lorentzian());
  try {
    classify(h, vec({1, 0, 0}));
    FAIL("expected NotLorentzian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotLorentzian);
  }
  CHECK_THROWS_AS(BilinearForm(M::diag({chi_even(), c(1)})), Error);
}

TEST_CASE("classification") {
  auto g = mink(4);
  CHECK(classify(g, vec({1, 0, 0, 0})).kind == CausalKind::TimeLike);
  CHECK(classify(g, vec({1, 1, 0, 0})).kind == CausalKind::Null);
  CHECK(classify(g, vec({0, 1, 0, 0})).kind == CausalKind::SpaceLike);
  CHECK(classify(g, vec({0, 0, 0, 0})).kind == CausalKind::Null);
  auto u = V{c(2) * chi_even(), c(0), c(0), c(0)};
  auto cu = classify(g, u);
  CHECK(cu.kind == CausalKind::Unclassifiable);
  CHECK(same(cu.norm, c(-4) * chi_even()));
  // Norm zero but not free and not negligible.
  auto z = classify(g, V{chi_even(), chi_even(), c(0), c(0)});
  CHECK(z.kind == CausalKind::Unclassifiable);
}

TEST_CASE("time orientation") {
  auto g = mink(4);
  CHECK(same_orientation(g, vec({1, 0, 0, 0}), vec({1, 0, 0, 0})).is_holds());
  CHECK(same_orientation(g, vec({1, 0, 0, 0}), vec({-1, 0, 0, 0})).is_fails());
  CHECK(same_orientation(g, vec({1, 0, 0, 0}), V{c(1), eps(), c(0), c(0)}).is_holds());
  try {
    same_orientation(g, vec({0, 1, 0, 0}), vec({1, 0, 0, 0}));
    FAIL("expected NotTimeLike");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTimeLike);
  }
}

TEST_CASE("orthogonal complement") {
  auto g2 = mink(2);
  auto c2 = orthogonal_complement_basis(g2, vec({1, 0}));
  REQUIRE(c2.vectors.size() == 1);
  CHECK(same(c2.vectors[0][0], c(0)));
  CHECK(same(c2.vectors[0][1], c(1)));
  CHECK(same(c2.gram(0, 0), c(1)));

  auto g4 = mink(4);
  auto c4 = orthogonal_complement_basis(g4, vec({1, 0, 0, 0}));
  REQUIRE(c4.vectors.size() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(same(c4.gram(a, b), c(a == b ? 1 : 0)));
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 4; ++i) CHECK(same(c4.vectors[a][i], c(i == a + 1 ? 1 : 0)));

  // g = diag(-1, 2): complement {e2 / 2}, Gram 1/2, (1/2)(-2) = -1 = g_11.
  auto gd = BilinearForm(M::diag({c(-1), c(2)}));
  auto cd = orthogonal_complement_basis(gd, vec({1, 0}));
  CHECK(same(cd.vectors[0][1], c(0.5L)));
  CHECK(same(cd.gram(0, 0), c(0.5L)));
  CHECK(is_negligible(cd.det_identity_residual).is_holds());
  CHECK(same(det(cd.gram) * det(gd.g()), gd.g()(0, 0)));
}

TEST_CASE("decomposition and representative repair") {
  auto g = mink(4);
  auto d = decompose(g, vec({1, 0, 0, 0}), vec({3, 4, 0, 0}));
  CHECK(same(d.a, c(3)));
  CHECK(same(d.w[0], c(0)));
  CHECK(same(d.w[1], c(4)));

  auto u = V{c(2), eps(), c(0), c(0)};
  auto du = decompose(g, u, u);
  CHECK(equal(du.a, c(1)).is_holds());
  CHECK(all_negligible(du.w).is_holds());

  auto lam = chi_even();
  auto v = V{c(1), lam * eps(), c(0), c(0)};
  auto dv = decompose(g, vec({1, 0, 0, 0}), v);
  CHECK(same(dv.a, c(1)));
  CHECK(same(dv.w[0], c(0)));
  CHECK(same(dv.w[1], lam * eps()));

  // Repair: v = (1, 1) + negligible noise is orthogonal to u = (1, -1) only up
  // to a negligible net.
  V ue{c(1), c(-1)};
  auto noise = G::make([](long double e) { return std::exp(-1 / e); }, EpsGrid(32, 8));
  EpsGrid g8(32, 8);
  V u8{G::constant(1, g8), G::constant(-1, g8)};
  V v8{G::constant(1, g8) + noise, G::constant(1, g8)};
  CHECK(is_negligible(dot(u8, v8)).is_holds());
  auto r = repair_orthogonal(u8, v8);
  for (int k = 8; k <= 32; ++k) CHECK(to_ld((u8[0].value(k) * r[0].value(k) + u8[1].value(k) * r[1].value(k))) == 0);
  CHECK(all_negligible(r - v8).is_holds());
  CHECK_THROWS_AS(repair_orthogonal(ue, V{c(1), c(0)}), Error);
}

TEST_CASE("inverse Cauchy-Schwarz") {
  auto g = mink(4);
  auto e = inverse_cauchy_schwarz(g, vec({1, 0, 0, 0}), vec({1, 0, 0, 0}));
  CHECK(is_negligible(e.gap).is_holds());
  CHECK(e.inequality.is_holds());
  CHECK(e.strict.is_fails());
  CHECK(e.label == "equality");

  auto s = inverse_cauchy_schwarz(g, vec({1, 0, 0, 0}), vec({2, 1, 0, 0}));
  CHECK(same(s.lhs, c(4)));
  CHECK(same(s.rhs, c(3)));
  CHECK(same(s.gap, c(1)));
  CHECK(s.strict.is_holds());

  auto lam = chi_even();
  auto alpha = eps();
  auto cs = inverse_cauchy_schwarz(g, vec({1, 0, 0, 0}), V{c(1), lam * alpha, c(0), c(0)});
  auto expected = lam * lam * alpha * alpha;
  CHECK(same(cs.gap, expected));
  CHECK(same(cs.lhs, c(1)));
  CHECK(same(cs.rhs, c(1) - expected));
  CHECK(cs.inequality.is_holds());
  CHECK(cs.strict.is_fails());
  CHECK(cs.label == "zero-divisor-like");
  CHECK(cs.residual_free.is_fails());
}

TEST_CASE("Lorentz boosts") {
  auto g = mink(4);
  auto l = lorentz_boost(g, vec({1, 0, 0, 0}), vec({1, 0, 0, 0}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(same(l(i, j), c(i == j ? 1 : 0)));

  const long double ch = std::cosh(1.0L), sh = std::sinh(1.0L);
  auto eta = vec({ch, sh, 0, 0});
  auto b = lorentz_boost(g, vec({1, 0, 0, 0}), eta);
  // Classical boost with rapidity 1.
  const long double classical[4][4] = {{ch, sh, 0, 0}, {sh, ch, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 1; k <= grid.k_max; ++k) CHECK(std::fabs(b(i, j).value(k) - classical[i][j]) < 1e-17L);
  CHECK(all_negligible(b * vec({1, 0, 0, 0}) - eta).is_holds());
  CHECK(all_negligible(b.transpose() * g.g() * b - g.g()).is_holds());

  auto ee = V{cosh(eps()), sinh(eps()), c(0), c(0)};
  auto be = lorentz_boost(g, vec({1, 0, 0, 0}), ee);
  CHECK(all_negligible(be * vec({1, 0, 0, 0}) - ee).is_holds());
  for (int k = 1; k <= grid.k_max; ++k) {
    const long double t = grid.eps_at(k);
    CHECK(std::fabs(be(0, 1).value(k) - std::sinh(t)) < 1e-17L);
    CHECK(std::fabs(be(1, 1).value(k) - std::cosh(t)) < 1e-17L);
  }

  try {
    lorentz_boost(g, vec({2, 0, 0, 0}), vec({1, 0, 0, 0}));
    FAIL("expected NotUnit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnit);
  }
  try {
    lorentz_boost(g, vec({1, 0, 0, 0}), vec({-1, 0, 0, 0}));
    FAIL("expected NotSameOrientation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSameOrientation);
  }
}

TEST_CASE("positive definite form from two time-like vectors") {
  auto g = mink(4);
  auto h = metrconstr(g, vec({1, 0, 0, 0}), vec({1, 0, 0, 0}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(same(h(i, j), c(i == j ? 0.5L : 0)));
  CHECK(principal_minor_test(h).is_holds());

  auto g2 = BilinearForm(M::diag({c(-1), c(1)}));
  auto h2 = metrconstr(g2, vec({1, 0}), vec({1, 0}));
  CHECK(same(h2(0, 0), c(0.5L)));
  CHECK(same(h2(1, 1), c(0.5L)));
  CHECK(same(h2(0, 1), c(0)));

  auto h3 = metrconstr(g, vec({1, 0, 0, 0}), vec({std::cosh(1.0L), std::sinh(1.0L), 0, 0}));
  CHECK(matrix_index(h3).positive_definite(4));
  CHECK(principal_minor_test(h3).is_holds());
  CHECK_THROWS_AS(metrconstr(g, vec({1, 0, 0, 0}), vec({-1, 0, 0, 0})), Error);
}

TEST_CASE("energy tensor") {
  auto g = mink(4);
  auto E = energy_tensor(g, vec({1, 0, 0, 0}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(same(E.E(i, j), c(i == j ? 0.5L : 0)));
  auto xi = vec({1, 0, 0, 0});
  auto eta = flux_vector(g, E, xi);
  CHECK(same(eta[0], c(-0.5L)));
  CHECK(same(g(eta, eta), c(-0.25L)));
  CHECK(same(dot(eta, g.lower(xi)), c(0.5L)));
  CHECK(dominant_energy_check(g, E, xi, xi).is_holds());
  CHECK(is_negligible(energy_identity_residual(g, E, xi)).is_holds());

  // Null theta: the flux is null, not time-like.
  auto En = energy_tensor(g, vec({1, 1, 0, 0}));
  auto fn = classify(g, flux_vector(g, En, xi));
  CHECK(fn.kind == CausalKind::Null);
  CHECK(is_negligible(energy_identity_residual(g, En, xi)).is_holds());

  // theta = (lambda, 0, 0, 0): <theta,theta> = -lambda is a zero divisor.
  auto El = energy_tensor(g, V{chi_even(), c(0), c(0), c(0)});
  auto fl = classify(g, flux_vector(g, El, xi));
  CHECK(fl.kind == CausalKind::Unclassifiable);
  CHECK(is_negligible(energy_identity_residual(g, El, xi)).is_holds());
}

// ---------------------------------------------------------------- properties

namespace {

struct LorentzCorpus {
  std::mt19937_64 rng;
  explicit LorentzCorpus(unsigned seed) : rng(seed) {}

  G small() {
    std::uniform_real_distribution<long double> a(-0.3L, 0.3L);
    std::uniform_int_distribution<int> p(0, 2);
    return power(a(rng), p(rng));
  }

  BilinearForm metric(int n) {
    std::vector<G> e(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        e[i * n + j] = small() * c(0.3L) + c(i == j ? (i == 0 ? -1 : 1) : 0);
        e[j * n + i] = e[i * n + j];
      }
    return BilinearForm(M(n, e));
  }

  V timelike(int n) {
    std::vector<G> e{c(1) + small() * c(0.5L)};
    for (int i = 1; i < n; ++i) e.push_back(small());
    return V(e);
  }
};

}  // namespace

TEST_CASE("Cauchy-Schwarz inequality on random time-like pairs") {
  LorentzCorpus corpus(21);
  for (int m = 0; m < 4; ++m) {
    auto g = corpus.metric(4);
    REQUIRE(g.lorentzian());
    for (int t = 0; t < 10; ++t) {
      auto u = corpus.timelike(4), v = corpus.timelike(4);
      if (t % 3 == 0) v = c(2) * u;
      auto r = inverse_cauchy_schwarz(g, u, v);
      CHECK(r.inequality.is_holds());
      if (r.residual_free.is_holds()) CHECK(r.strict.is_holds());
      CHECK(is_negligible(r.gap - r.gap_direct).is_holds());
    }
  }
}

TEST_CASE("complement positivity and metrconstr on random data") {
  LorentzCorpus corpus(22);
  for (int t = 0; t < 10; ++t) {
    auto g = corpus.metric(3 + t % 2);
    const int n = g.dim();
    auto u = corpus.timelike(n);
    auto cpl = orthogonal_complement_basis(g, u);
    CHECK(matrix_index(cpl.gram).positive_definite(n - 1));
    CHECK(is_negligible(cpl.det_identity_residual).is_holds());
    for (const auto& x : cpl.vectors) CHECK(is_negligible(g(u, x)).is_holds());
    // A combination with strictly nonzero coefficients stays space-like.
    V w = cpl.vectors[0];
    for (std::size_t a = 1; a < cpl.vectors.size(); ++a) w = w + (c(1) + eps()) * cpl.vectors[a];
    CHECK(is_strictly_positive(g(w, w)).is_holds());

    auto v = corpus.timelike(n);
    auto h = metrconstr(g, u, v);
    CHECK(matrix_index(h).positive_definite(n));
    V f = corpus.timelike(n);
    CHECK(is_strictly_positive(form(h, f, f)).is_holds());
  }
}

TEST_CASE("energy identity holds for arbitrary theta") {
  LorentzCorpus corpus(23);
  auto g = corpus.metric(4);
  for (int t = 0; t < 10; ++t) {
    std::vector<G> th;
    for (int i = 0; i < 4; ++i) th.push_back(t % 2 ? corpus.small() : chi_even() * corpus.small());
    V theta(th);
    auto E = energy_tensor(g, theta);
    auto xi = corpus.timelike(4);
    CHECK(is_negligible(energy_identity_residual(g, E, xi)).is_holds());
    CHECK(all_negligible(E.E - E.E.transpose()).is_holds());
  }
}
