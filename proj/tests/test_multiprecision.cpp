#include <catch_amalgamated.hpp>

#include "gennum/causal.hpp"
#include "gennum/multiprecision.hpp"

using namespace gennum;
using G = basic_gen_number<mp_real>;
using V = basic_gen_vector<mp_real>;
using M = basic_gen_matrix<mp_real>;

namespace {

const EpsGrid grid{};

G c(long double x) { return G::constant(mp_real(x), grid); }
G eps() { return G::eps(grid); }

}  // namespace

TEST_CASE("precision guard sets and restores the working precision") {
  const auto before = mpfr_get_default_prec();
  {
    precision_guard pg(grid);
    CHECK(mpfr_get_default_prec() == 2112);
    const long double u = real_traits<mp_real>::unit_roundoff();
    CHECK(u > 1.6e-636L);
    CHECK(u < 1.7e-636L);
  }
  CHECK(mpfr_get_default_prec() == before);
}

TEST_CASE("rounding residuals fall below eps^M_cap") {
  precision_guard pg(grid);
  const auto third = G::constant(mp_real(1) / 3, grid);
  const auto r = third * c(3) * eps() - eps();
  CHECK(is_negligible_strict(r, grid.m_cap).is_holds());
  CHECK(is_negligible(r).is_holds());
  CHECK(is_strictly_positive(eps() * eps()).is_holds());
  CHECK(is_negligible_strict(pow(eps(), 41), grid.m_cap).is_holds());
  CHECK(!is_negligible_strict(pow(eps(), 39), grid.m_cap).is_holds());
}

TEST_CASE("eigen decomposition residual is strictly negligible in high precision") {
  precision_guard pg(grid);
  M a{{c(2), eps(), c(0)}, {eps(), c(1), eps() * eps()}, {c(0), eps() * eps(), c(-1)}};
  auto r = gen_eigen(a);
  const auto back = r.U.transpose() * M::diag(r.eigenvalues) * r.U;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(is_negligible_strict(back(i, j) - a(i, j), grid.m_cap).is_holds());
  auto mi = matrix_index(a);
  REQUIRE(mi.defined());
  CHECK(*mi.nu_minus == 1);
}

TEST_CASE("boost residuals in high precision") {
  precision_guard pg(grid);
  basic_bilinear_form<mp_real> g(minkowski<mp_real>(4, grid));
  V xi = V::unit(4, 0, grid);
  V eta = unit_normalize(g, V{c(1), eps(), c(0.5L), c(0)});
  auto L = lorentz_boost(g, xi, eta);
  const auto d = L.transpose() * g.g() * L - g.g();
  CHECK(all_negligible(d).is_holds());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(is_negligible_strict(d(i, j), grid.m_cap).is_holds());
  const auto m = L * xi - eta;
  for (int i = 0; i < 4; ++i) CHECK(is_negligible_strict(m[i], grid.m_cap).is_holds());
}

TEST_CASE("energy identity in high precision") {
  precision_guard pg(grid);
  basic_bilinear_form<mp_real> g(minkowski<mp_real>(4, grid));
  V theta{c(0.5L), eps(), c(-1), c(0.25L)};
  auto E = energy_tensor(g, theta);
  V xi = unit_normalize(g, V{c(2), c(0.5L), eps(), c(0)});
  CHECK(is_negligible_strict(energy_identity_residual(g, E, xi), grid.m_cap).is_holds());
  V eta = V::unit(4, 0, grid);
  CHECK(dominant_energy_check(g, E, xi, eta).is_holds());
}
