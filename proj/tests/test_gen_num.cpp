#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gennum/gen_number.hpp"

using namespace gennum;
using G = gen_number;

namespace {

const EpsGrid grid{};

G power(long double c, int m) {
  return G::make([c, m](long double e) { return c * std::pow(e, m); }, grid);
}

}  // namespace

TEST_CASE("grid layout") {
  REQUIRE(grid.k_max == 32);
  REQUIRE(grid.tail_start == 16);
  for (int k = 1; k < grid.k_max; ++k) {
    CHECK(grid.eps_at(k) > grid.eps_at(k + 1));
    CHECK(grid.eps_at(k + 1) > 0);
  }
  CHECK(grid.eps_at(3) == 0.125L);
  CHECK_THROWS_AS(EpsGrid(10, 10), Error);
  CHECK_THROWS_AS(EpsGrid(1), Error);
}

TEST_CASE("make_gen accepts moderate nets and rejects the rest") {
  auto sq = power(1, 2);
  auto o = estimate_order(sq);
  CHECK_FALSE(o.negligible);
  CHECK(o.order == 2);
  CHECK_FALSE(o.low_confidence);

  CHECK(estimate_order(power(3, 3)).order == 3);

  auto n = G::make([](long double e) { return std::exp(-1 / e); }, grid);
  CHECK(estimate_order(n).negligible);

  try {
    G::make([](long double e) { return std::exp(1 / e); }, grid);
    FAIL("expected NotModerate");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotModerate);
  }
  try {
    G::make([](long double e) { return 1 / e * 0 * std::numeric_limits<long double>::infinity(); }, grid);
    FAIL("expected NotFinite");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotFinite);
  }
  // eps^-41 is beyond the default cap, eps^-39 is not.
  CHECK_THROWS_AS(power(1, -41), Error);
  CHECK_NOTHROW(power(1, -39));
}

TEST_CASE("order of a bounded oscillation") {
  auto x = G::make([](long double e) { return e * e * (2 + std::sin(1 / e)); }, grid);
  // Envelope eps^2 <= x <= 3 eps^2 on every sample.
  for (int k = 1; k <= grid.k_max; ++k) {
    const long double e = grid.eps_at(k);
    CHECK(x.value(k) >= e * e);
    CHECK(x.value(k) <= 3 * e * e);
  }
  CHECK(estimate_order(x).order == 2);
}

TEST_CASE("samples are reproducible from the evaluator") {
  auto x = power(3, 2) + G::eps(grid) * G::chi(IndexSet::odd(), grid) - G::constant(0.25L, grid);
  for (int k = 1; k <= grid.k_max; ++k) CHECK(x.evaluate(grid.eps_at(k)) == x.value(k));
  auto y = G::from_samples(grid, x.samples());
  for (int k = 1; k <= grid.k_max; ++k) CHECK(y.evaluate(grid.eps_at(k)) == x.value(k));
  CHECK_THROWS_AS(y.evaluate(0.3L), Error);
}

TEST_CASE("chi identities are sample-exact") {
  auto ev = G::chi(IndexSet::even(), grid);
  auto od = G::chi(IndexSet::odd(), grid);
  auto one = G::constant(1, grid);
  for (int k = 1; k <= grid.k_max; ++k) {
    CHECK((ev * ev).value(k) == ev.value(k));
    CHECK((ev * od).value(k) == 0);
    CHECK((ev + od).value(k) == 1);
    CHECK((ev * (one - ev)).value(k) == 0);
    CHECK(ev.value(k) == (k % 2 == 0 ? 1 : 0));
  }
  auto ap = G::chi(IndexSet::progression(2, 3), grid);
  CHECK(ap.value(2) == 1);
  CHECK(ap.value(5) == 1);
  CHECK(ap.value(4) == 0);
  CHECK(ap.value(1) == 0);
  auto p2 = G::chi(IndexSet::powers_of_two(), grid);
  CHECK(p2.value(16) == 1);
  CHECK(p2.value(24) == 0);
  auto ex = G::chi(IndexSet::explicit_set({3, 1, 3}), grid);
  CHECK(ex.value(1) == 1);
  CHECK(ex.value(2) == 0);
}

TEST_CASE("ring operations on samples") {
  auto e = G::eps(grid);
  auto p = e * e;
  for (int k = 1; k <= grid.k_max; ++k) CHECK(p.value(k) == std::ldexp(1.0L, -2 * k));
  auto other = G::make([](long double x) { return x; }, EpsGrid(24));
  CHECK_THROWS_AS(e + other, Error);
}

TEST_CASE("is_negligible") {
  CHECK(is_negligible(G::make([](long double e) { return std::exp(-1 / e); }, grid)).is_holds());
  auto one = is_negligible(G::constant(1, grid));
  CHECK(one.is_fails());
  CHECK_FALSE(one.witnesses.empty());
  // eps^20 stays above eps^40 on the tail.
  CHECK(is_negligible(power(1, 20)).is_fails());
  CHECK(is_negligible(power(1, 41)).is_holds());
  CHECK(is_negligible(G::constant(0, grid)).is_holds());
  CHECK(is_negligible(G::chi(IndexSet::even(), grid)).is_fails());
  // Nonzero only before the upper half of the tail window.
  auto early = G::chi(IndexSet::explicit_set({16, 18}), grid);
  CHECK(is_negligible(early).is_inconclusive());
}

TEST_CASE("is_strictly_nonzero and invertibility") {
  auto v5 = is_strictly_nonzero(power(1, 5));
  REQUIRE(v5.is_holds());
  CHECK(*v5.exponent == 6);
  CHECK(is_strictly_nonzero(G::chi(IndexSet::even(), grid)).is_fails());
  CHECK(is_strictly_nonzero(G::make([](long double e) { return std::exp(-1 / e); }, grid)).is_fails());
  auto c = is_strictly_nonzero(G::constant(-3, grid));
  REQUIRE(c.is_holds());
  CHECK(*c.exponent == 0);

  auto inv = inverse(power(1, 5));
  for (int k = 1; k <= grid.k_max; ++k) CHECK(inv.value(k) == std::ldexp(1.0L, 5 * k));
  try {
    (void)(G::constant(1, grid) / G::chi(IndexSet::even(), grid));
    FAIL("expected DivisionByNonInvertible");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DivisionByNonInvertible);
  }
  // Zero samples before the tail do not matter.
  auto late = G::chi(IndexSet::progression(5, 1), grid);
  auto li = inverse(late);
  CHECK(li.value(1) == 0);
  CHECK(li.value(20) == 1);
}

TEST_CASE("is_strictly_positive") {
  auto a = is_strictly_positive(G::constant(2, grid) + G::eps(grid));
  REQUIRE(a.is_holds());
  CHECK(*a.exponent == 0);
  CHECK(is_strictly_positive(-G::eps(grid)).is_fails());
  CHECK(is_strictly_positive(G::chi(IndexSet::even(), grid)).is_fails());
  auto e2 = is_strictly_positive(power(1, 2));
  REQUIRE(e2.is_holds());
  CHECK(*e2.exponent == 2);
  CHECK(is_strictly_negative(-G::eps(grid)).is_holds());
}

TEST_CASE("partial order") {
  auto zero = G::constant(0, grid);
  auto n = G::make([](long double e) { return std::exp(-1 / e); }, grid);
  CHECK(leq(zero, n).is_holds());
  CHECK(leq(n, zero).is_holds());
  CHECK(leq(G::eps(grid), G::constant(1, grid)).is_holds());
  CHECK(leq(G::constant(1, grid), G::eps(grid)).is_fails());

  auto c = G::chi(IndexSet::even(), grid);
  auto d = G::constant(1, grid) - c;
  CHECK_FALSE(leq(c, d).is_holds());
  CHECK_FALSE(leq(d, c).is_holds());
  CHECK(leq(c, d).is_inconclusive());
  CHECK(leq(d, c).is_inconclusive());
  CHECK(equal(n, zero).is_holds());
}

TEST_CASE("pow and elementary functions") {
  auto e = G::eps(grid);
  auto p = pow(e, 3);
  for (int k = 1; k <= grid.k_max; ++k) CHECK(p.value(k) == std::ldexp(1.0L, -3 * k));
  auto q = pow(e, -2);
  for (int k = 1; k <= grid.k_max; ++k) CHECK(q.value(k) == std::ldexp(1.0L, 2 * k));
  auto s = sqrt(p * e);
  for (int k = 1; k <= grid.k_max; ++k) CHECK(s.value(k) == std::ldexp(1.0L, -2 * k));
  auto x = exp(-inverse(e));
  CHECK(is_negligible(x).is_holds());
  CHECK(is_negligible(sin(e) - e).is_fails());
  CHECK(estimate_order(sin(e) - e).order == 3);
}

// ---------------------------------------------------------------- properties

namespace {

struct DyadicCorpus {
  std::mt19937_64 rng{20241017};

  G next() {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> coef(0, 5);
    const long double coefs[] = {1, 2, 4, -1, -2, -4};
    switch (kind(rng)) {
      case 0: return G::constant(coefs[coef(rng)], grid);
      case 1: return G::constant(coefs[coef(rng)], grid) * G::eps(grid);
      case 2: return G::chi(IndexSet::even(), grid) * G::constant(coefs[coef(rng)], grid);
      default: return G::chi(IndexSet::progression(1 + coef(rng) % 3, 3), grid) + G::constant(coefs[coef(rng)], grid);
    }
  }
};

bool same_samples(const G& a, const G& b) {
  for (int k = 1; k <= a.grid().k_max; ++k)
    if (a.value(k) != b.value(k)) return false;
  return true;
}

}  // namespace

TEST_CASE("ring axioms hold sample-exactly on dyadic nets") {
  DyadicCorpus c;
  for (int i = 0; i < 200; ++i) {
    auto x = c.next(), y = c.next(), z = c.next();
    CHECK(same_samples((x + y) * z, x * z + y * z));
    CHECK(same_samples((x * y) * z, x * (y * z)));
    CHECK(same_samples((x + y) + z, x + (y + z)));
    CHECK(same_samples(x * y, y * x));
    CHECK(same_samples(x + y, y + x));
  }
}

TEST_CASE("strict positivity implies invertibility") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> m(0, 8);
  std::uniform_real_distribution<long double> c(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const long double a = c(rng), b = c(rng);
    const int p = m(rng), q = m(rng);
    auto x = G::make([=](long double e) { return a * std::pow(e, p) + b * std::pow(e, q); }, grid);
    if (is_strictly_positive(x).is_holds()) CHECK(is_invertible(x).is_holds());
    if (is_strictly_positive(-x).is_holds()) CHECK(is_invertible(x).is_holds());
  }
}

TEST_CASE("chi of a set with infinite complement is a zero divisor") {
  const IndexSet sets[] = {IndexSet::even(), IndexSet::odd(), IndexSet::progression(1, 3), IndexSet::powers_of_two()};
  for (const auto& a : sets) {
    auto ca = G::chi(a, grid);
    auto cc = G::constant(1, grid) - ca;
    CHECK(same_samples(ca * cc, G::constant(0, grid)));
    if (a.kind() != IndexSet::Kind::PowersOfTwo) CHECK(is_negligible(ca).is_fails());
    CHECK(is_negligible(cc).is_fails());
  }
}

TEST_CASE("orders add under multiplication of power laws") {
  for (int p = 0; p <= 10; ++p)
    for (int q = -5; q <= 10; ++q) {
      auto x = power(3, p), y = power(0.5L, q);
      CHECK(estimate_order(x * y).order == estimate_order(x).order + estimate_order(y).order);
    }
}

TEST_CASE("verdicts are stable when k_max grows") {
  for (int kmax : {16, 24, 32, 48, 64}) {
    EpsGrid g(kmax);
    auto e = G::eps(g);
    CHECK(is_negligible(pow(e, 20)).is_fails());
    CHECK(is_negligible(pow(e, 41)).is_holds());
    CHECK(is_strictly_nonzero(pow(e, 5)).is_holds());
    CHECK(is_strictly_nonzero(G::chi(IndexSet::even(), g)).is_fails());
    CHECK(is_strictly_positive(G::constant(2, g) + e).is_holds());
    CHECK(is_strictly_positive(G::chi(IndexSet::odd(), g)).is_fails());
  }
}
