#include <catch_amalgamated.hpp>

#include <cstdlib>

#include "demos.hpp"

using namespace gennum;
using gennum::cli::json;
using G = gen_number;

namespace {

const EpsGrid grid{};

G net(const std::string& src, const expr::NetEnv& env = {}) { return expr::parse_net(src, grid, env); }

bool same_samples(const G& a, const G& b) {
  for (int k = 1; k <= grid.k_max; ++k)
    if (a.value(k) != b.value(k)) return false;
  return true;
}

json run(const std::string& text, cli::Options opt = {}) {
  cli::Session s(opt);
  return s.run(text, "test");
}

const json& task(const json& rep, std::size_t i) { return rep.at("tasks").at(i); }

}  // namespace

TEST_CASE("parser precedence and printing") {
  CHECK(expr::to_string(*expr::parse("1 + 2 * eps")) == "(1 + (2 * eps))");
  CHECK(expr::to_string(*expr::parse("(1 + 2) * eps")) == "((1 + 2) * eps)");
  CHECK(expr::to_string(*expr::parse("-eps * 3")) == "(-eps * 3)");
  CHECK(expr::to_string(*expr::parse("1 - 2 - 3")) == "((1 - 2) - 3)");
  CHECK(expr::to_string(*expr::parse("pow(eps, -2)")) == "pow(eps, -2)");
  CHECK(expr::to_string(*expr::parse("chi(ap(2, 3))")) == "chi(ap(2,3))");
  CHECK(expr::to_string(*expr::parse("chi({1, 3})")) == "chi({1,3})");
  CHECK(expr::to_string(*expr::parse("tanh(x1 / eps)", 1, 1, 2)) == "tanh((x1 / eps))");
  CHECK(expr::to_string(*expr::parse("1.5e-3")) == "1.5e-3");
}

TEST_CASE("parse errors carry line and column") {
  auto where = [](const std::string& src) -> std::pair<int, int> {
    try {
      expr::parse(src, 7, 1);
    } catch (const expr::ParseError& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return {e.line(), e.column()};
    }
    FAIL("no error for " << src);
    return {0, 0};
  };
  CHECK(where("1 + ") == std::pair{7, 5});
  CHECK(where("2 * * 3") == std::pair{7, 5});
  CHECK(where("(1 + eps") == std::pair{7, 9});
  CHECK(where("pow(eps, 1.5)") == std::pair{7, 10});
  CHECK(where("chi(primes)") == std::pair{7, 5});
  CHECK(where("1 $ 2") == std::pair{7, 3});
  CHECK(where("1 2") == std::pair{7, 3});
  CHECK_THROWS_AS(expr::parse("x3", 1, 1, 2), expr::ParseError);
}

TEST_CASE("net evaluation") {
  auto a = net("2 * eps + 1");
  for (int k = 1; k <= grid.k_max; ++k) CHECK(a.value(k) == 2 * grid.eps_at(k) + 1);
  CHECK(same_samples(net("pow(eps, 3)"), G::eps(grid) * G::eps(grid) * G::eps(grid)));
  CHECK(estimate_order(net("pow(eps, -2)")).order == -2);
  CHECK(same_samples(net("chi(even) + chi(odd)"), G::constant(1, grid)));
  CHECK(same_samples(net("chi(even) * chi(odd)"), G::constant(0, grid)));
  CHECK(same_samples(net("chi(pow2)"), G::chi(IndexSet::powers_of_two(), grid)));
  CHECK(is_negligible(net("exp(-1 / eps)")).is_holds());
  CHECK(same_samples(net("-(1 - eps)"), net("eps - 1")));
  CHECK(same_samples(net("1 / (2 * eps)"), net("pow(eps, -1) / 2")));
  CHECK(net("abs(-eps)").value(3) == grid.eps_at(3));
  CHECK(std::fabs(net("bump(0)").value(5) - 2.25228362104881693L * std::exp(-1.0L)) < 1e-18L);
}

TEST_CASE("division needs an invertible divisor") {
  auto code = [](const std::string& src) {
    try {
      net(src);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidGrid;
  };
  CHECK(code("1 / chi(even)") == ErrorCode::DivisionByNonInvertible);
  CHECK(code("1 / (eps - eps)") == ErrorCode::DivisionByNonInvertible);
  CHECK(code("pow(chi(odd), -1)") == ErrorCode::DivisionByNonInvertible);
  CHECK(code("1 / exp(-1 / eps)") == ErrorCode::DivisionByNonInvertible);
  CHECK(code("exp(1 / eps)") == ErrorCode::NotModerate);
  CHECK(code("y + 1") == ErrorCode::UnknownName);
  CHECK_NOTHROW(net("1 / (1 + chi(even))"));
  CHECK_NOTHROW(net("1 / pow(eps, 7)"));
}

TEST_CASE("names in net and field mode") {
  const G lam = G::chi(IndexSet::even(), grid);
  expr::NetEnv env = [&](const std::string& n) -> const G* { return n == "lambda" ? &lam : nullptr; };
  CHECK(same_samples(net("lambda * lambda", env), lam));
  auto f = expr::parse("x1 * lambda + x2 * eps", 1, 1, 2);
  for (int k : {3, 4, 9}) {
    const long double e = grid.eps_at(k);
    CHECK(expr::eval_point(*f, e, {2, 5}, env) == 2 * lam.value(k) + 5 * e);
  }
  auto c = expr::parse("chi(odd) * x1", 1, 1, 1);
  CHECK(expr::eval_point(*c, grid.eps_at(3), {4}, env) == 4);
  CHECK(expr::eval_point(*c, grid.eps_at(4), {4}, env) == 0);
}

TEST_CASE("manifest: Minkowski classification") {
  auto rep = run(R"(mat g = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
vec u = [1, 0, 0, 0]
task classify(g, u)
)");
  CHECK(rep["schema"] == 1);
  CHECK(rep["errors"] == 0);
  CHECK(task(rep, 0)["result"]["kind"] == "TimeLike");
  CHECK(task(rep, 0)["result"]["strictly_negative"]["status"] == "Holds");
  CHECK(task(rep, 0)["inputs"]["u"]["type"] == "vector");
}

TEST_CASE("manifest: csex end to end") {
  auto rep = run(R"(let lambda = chi(even)
let alpha = eps
mat eta = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]
vec u = [1, 0, 0]
vec v = [1, lambda * alpha, 0]
task cs(eta, u, v)
)");
  const auto& r = task(rep, 0)["result"];
  CHECK(r["inequality"]["status"] == "Holds");
  CHECK(r["strict"]["status"] == "Fails");
  CHECK(r["label"] == "zero-divisor-like");
  // gap = lambda^2 eps^2: sign 0 on odd k, log2 = -2k on even k.
  for (const auto& s : r["gap"]["samples"]) {
    const int k = s[0];
    if (k % 2) CHECK(s[2] == 0);
    else CHECK(s[1].get<double>() == -2.0 * k);
  }
}

TEST_CASE("manifest errors") {
  auto rep = run("let q = 1 / chi(even)\n");
  CHECK(rep["error"]["code"] == "DivisionByNonInvertible");
  CHECK(rep["error"]["line"] == 1);
  CHECK(rep["errors"] == 1);

  rep = run("let a = 1\nlet a = 2\n");
  CHECK(rep["error"]["code"] == "ParseError");
  CHECK(rep["error"]["line"] == 2);

  rep = run("let a = 1\nvec u = [1, 0]\nmat g = [[1, 0], [0, 1]]\ntask classify(a, u)\ntask classify(u, zz)\ntask classify(g, u)\ntask frobnicate(a)\ntask negligible(a)\n");
  CHECK(rep["errors"] == 4);
  CHECK(task(rep, 0)["error"]["code"] == "TypeMismatch");
  CHECK(task(rep, 1)["error"]["code"] == "UnknownName");
  CHECK(task(rep, 2)["error"]["code"] == "TypeMismatch");
  CHECK(task(rep, 3)["error"]["code"] == "UnknownName");
  CHECK(task(rep, 4)["status"] == "ok");

  CHECK(run("grid kmax=7\n")["error"]["code"] == "InvalidGrid");
  CHECK(run("grid kmax=65\n")["error"]["code"] == "InvalidGrid");
  CHECK(run("let a = 1\ngrid kmax=16\n")["error"]["code"] == "ParseError");
  CHECK(run("mat m = [[1, 2], [3]]\n")["error"]["code"] == "DimensionMismatch");
  CHECK(run("domain D = cube(2, 0, 1)\nmetric G on D = [[x3, 0], [0, 1]]\n")["error"]["code"] == "ParseError");
}

TEST_CASE("grid parameters: flags over manifest over environment") {
  ::setenv("GENNUM_KMAX", "20", 1);
  CHECK(run("let a = 1\n")["grid"]["k_max"] == 20);
  CHECK(run("let a = 1\n")["grid"]["tail_start"] == 10);
  CHECK(run("grid kmax=24 tail=20\nlet a = 1\n")["grid"]["k_max"] == 24);
  cli::Options o;
  o.kmax = 16;
  auto g = run("grid kmax=24 tail=20\nlet a = 1\n", o)["grid"];
  CHECK(g["k_max"] == 16);
  CHECK(g["tail_start"] == 8);
  ::setenv("GENNUM_KMAX", "abc", 1);
  CHECK(run("let a = 1\n")["error"]["code"] == "InvalidGrid");
  ::unsetenv("GENNUM_KMAX");
  CHECK(run("let a = 1\n")["grid"]["k_max"] == 32);
}

TEST_CASE("reports are deterministic and omit runtime by default") {
  const std::string m = R"(domain D = cube(2, -1, 1)
metric G on D = [[-1, 0], [0, 1 + x1 * x1]]
vfield T on D = [1, 0]
points P = family(D, 12)
let c = chi(ap(1, 3))
vec v = [c, 1 - c]
task field_classify(G, T, P)
task free(v)
task order(c)
)";
  const auto a = run(m).dump(), b = run(m).dump();
  CHECK(a == b);
  CHECK(a.find("runtime") == std::string::npos);
  cli::Options o;
  o.timing = true;
  CHECK(run(m, o).dump().find("runtime_ms") != std::string::npos);
}

TEST_CASE("serialized nets re-ingest with identical verdicts") {
  const std::vector<std::string> corpus{
      "0", "1", "-3", "eps", "pow(eps, 5)", "1 + eps", "exp(-1 / eps)", "eps * sin(1 / eps)", "chi(even)",
      "chi(odd) - chi(even)", "chi(pow2) * eps", "pow(eps, 40)", "pow(eps, 39) * 3", "0.1 * eps - 0.1 * eps",
      "(1 / 3) * 3 - 1", "pow(eps, -7)", "chi(even) * pow(eps, 3) + chi(odd)", "sqrt(eps)", "tanh(1 / eps) - 1"};
  auto verdicts = [](const G& x) {
    return std::vector<json>{cli::verdict_json(is_negligible(x)), cli::verdict_json(is_strictly_nonzero(x)),
                             cli::verdict_json(is_strictly_positive(x)), cli::verdict_json(is_strictly_negative(x)),
                             json(estimate_order(x).order), json(estimate_order(x).negligible)};
  };
  for (const auto& src : corpus) {
    INFO(src);
    const G x = net(src);
    const json j = json::parse(cli::net_json(x).dump());
    const G y = cli::net_from_json(j, grid);
    CHECK(same_samples(x, y));
    CHECK(verdicts(x) == verdicts(y));
    json t = j;
    t.erase("exact");
    const G z = cli::net_from_json(t, grid);
    CHECK(verdicts(x) == verdicts(z));
  }
}

TEST_CASE("report inputs re-ingest with identical task results") {
  auto rep = run(R"(let lambda = chi(even)
mat eta = [[-1, 0], [0, 1 + eps]]
vec u = [1, 0]
vec v = [1, lambda * eps]
task cs(eta, u, v)
task classify(eta, v)
task index(eta)
)");
  rep = json::parse(rep.dump());
  const EpsGrid g = cli::grid_from_json(rep["grid"]);
  const auto& in = task(rep, 0)["inputs"];
  const GenMatrix eta = cli::matrix_from_json(in["eta"]["value"], g);
  const GenVector u = cli::vector_from_json(in["u"]["value"], g);
  const GenVector v = cli::vector_from_json(in["v"]["value"], g);
  const BilinearForm f(eta);
  const auto c = inverse_cauchy_schwarz(f, u, v);
  CHECK(cli::verdict_json(c.inequality) == task(rep, 0)["result"]["inequality"]);
  CHECK(cli::verdict_json(c.strict) == task(rep, 0)["result"]["strict"]);
  CHECK(cli::net_json(c.gap)["exact"] == task(rep, 0)["result"]["gap"]["exact"]);
  CHECK(std::string(to_string(classify(f, v).kind)) == task(rep, 1)["result"]["kind"]);
  CHECK(cli::verdict_json(matrix_index(eta).verdict) == task(rep, 2)["result"]["verdict"]);
}

TEST_CASE("demos") {
  auto demo = [](const std::string& name) {
    cli::Session s;
    return cli::run_demo(name, s);
  };
  auto cs = demo("csex");
  CHECK(cs["conclusion"]["gap_equals_lambda2_alpha2"] == true);
  CHECK(cs["conclusion"]["inequality"] == "Holds");
  CHECK(cs["conclusion"]["strict"] == "Fails");
  CHECK(cs["conclusion"]["label"] == "zero-divisor-like");

  auto mix = demo("mixing");
  CHECK(mix["conclusion"]["ordered_eigenvalues_are_1_and_minus_1"] == true);
  CHECK(mix["conclusion"]["D_minus_lambda_singular"] == true);
  CHECK(mix["conclusion"]["lambda_is_not_an_eigenvalue"] == true);

  auto inc = demo("incomparable");
  CHECK(inc["conclusion"]["incomparable"] == true);
  CHECK(inc["conclusion"]["c_leq_d"] != "Holds");
  CHECK(inc["conclusion"]["d_leq_c"] != "Holds");

  auto pv = demo("pointvalue");
  CHECK(pv["conclusion"]["standard_values_negligible"] == true);
  CHECK(pv["conclusion"]["drifting_value_negligible"] == false);

  auto ss = demo("semisimple");
  CHECK(ss["conclusion"]["chi_D_times_complement_is_zero"] == true);
  CHECK(ss["conclusion"]["complement_part_negligible"] == "Fails");
  CHECK(ss["conclusion"]["strict_submodule"] == true);

  cli::Session s;
  try {
    cli::run_demo("nope", s);
    FAIL("expected UnknownDemo");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownDemo);
  }
}
