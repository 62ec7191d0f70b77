#ifndef GENNUM_TOOLS_DEMOS_HPP
#define GENNUM_TOOLS_DEMOS_HPP

#include <map>
#include <string>
#include <vector>

#include "manifest.hpp"

namespace gennum::cli {

struct Demo {
  std::string manifest;
  // Inspects the finished session and returns the conclusion block.
  std::function<json(Session&)> conclude;
};

namespace detail {

inline bool bit_equal(const gen_number& a, const gen_number& b) {
  for (int k = 1; k <= a.grid().k_max; ++k)
    if (a.value(k) != b.value(k)) return false;
  return true;
}

inline bool exact_zero(const gen_number& a) {
  for (int k = 1; k <= a.grid().k_max; ++k)
    if (a.value(k) != 0) return false;
  return true;
}

}  // namespace detail

inline const std::map<std::string, Demo>& demos() {
  static const std::map<std::string, Demo> registry{
      {"csex",
       {R"(# lambda idempotent zero divisor, alpha = [eps], Minkowski metric
let lambda = chi(even)
let alpha = eps
mat eta = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
vec u = [1, 0, 0, 0]
vec v = [1, lambda * alpha, 0, 0]
task classify(eta, u)
task classify(eta, v)
task cs(eta, u, v)
)",
        [](Session& s) {
          const BilinearForm g(s.get<GenMatrix>("eta"));
          const auto r = inverse_cauchy_schwarz(g, s.get<GenVector>("u"), s.get<GenVector>("v"));
          const auto& l = s.get<gen_number>("lambda");
          const auto& a = s.get<gen_number>("alpha");
          const bool exact = detail::bit_equal(r.gap, l * l * a * a);
          return json{{"gap_equals_lambda2_alpha2", exact},
                      {"inequality", std::string(to_string(r.inequality.status))},
                      {"strict", std::string(to_string(r.strict.status))},
                      {"label", r.label},
                      {"text", "<u,v>^2 - <u,u><v,v> = lambda^2 alpha^2 >= 0, but the strict inequality fails because lambda is a zero divisor"}};
        }}},
      {"mixing",
       {R"(# U_eps alternates between I and the rotation by pi/2
let lambda = chi(even) - chi(odd)
let mu = -lambda
let one = 1
let minus_one = -1
mat D = [[1, 0], [0, -1]]
mat UDUt = [[lambda, 0], [0, mu]]
mat D_minus_lambda = [[1 - lambda, 0], [0, -1 - lambda]]
task eigen(D)
task eigen(UDUt)
task det(D_minus_lambda)
task equal(lambda, one)
task equal(lambda, minus_one)
)",
        [](Session& s) {
          const auto e = gen_eigen(s.get<GenMatrix>("UDUt"));
          const auto& l = s.get<gen_number>("lambda");
          const auto one = gen_number::constant(1, l.grid());
          const bool ordered = equal(e.eigenvalues[0], one).is_holds() && equal(e.eigenvalues[1], -one).is_holds();
          const bool singular = detail::exact_zero(det(s.get<GenMatrix>("D_minus_lambda")));
          const bool not_eigen = !equal(l, one).is_holds() && !equal(l, -one).is_holds();
          return json{{"ordered_eigenvalues_are_1_and_minus_1", ordered},
                      {"D_minus_lambda_singular", singular},
                      {"lambda_is_not_an_eigenvalue", not_eigen},
                      {"text", "D - lambda I is not injective, yet lambda is neither 1 nor -1: only the ordered eigenvalues are well defined"}};
        }}},
      {"incomparable",
       {R"(# c = chi on even grid indices, d = 1 - c
let c = chi(even)
let d = 1 - c
let cd = c * d
task leq(c, d)
task leq(d, c)
task exact_zero(cd)
)",
        [](Session& s) {
          const auto& c = s.get<gen_number>("c");
          const auto& d = s.get<gen_number>("d");
          const Verdict a = leq(c, d), b = leq(d, c);
          return json{{"c_leq_d", std::string(to_string(a.status))},
                      {"d_leq_c", std::string(to_string(b.status))},
                      {"incomparable", !a.is_holds() && !b.is_holds()},
                      {"text", "neither c <= d nor d <= c: the order on generalized numbers is not total"}};
        }}},
      {"pointvalue",
       {R"(# u_eps(x) = phi_eps(x - eps), a mollifier whose support moves at speed eps
domain I = cube(1, -1, 1)
sfield u on I = bump((x1 - eps) / eps) / eps
point p1 = [-0.5]
point p2 = [0]
point p3 = [0.001]
point p4 = [0.3]
point p5 = [0.9]
points standard = [p1, p2, p3, p4, p5]
point drift = [eps]
task pointvalue(u, standard)
task pointvalue(u, drift)
)",
        [](Session& s) {
          const auto& u = s.get<ScalarField>("u");
          bool all_zero = true;
          for (const auto& p : s.get<PointFamily>("standard").points) all_zero = all_zero && is_negligible(eval_scalar(u, p)).is_holds();
          const auto v = eval_scalar(u, s.get<GenPoint>("drift"));
          const bool detected = is_negligible(v).is_fails();
          return json{{"standard_values_negligible", all_zero},
                      {"drifting_value_negligible", !detected},
                      {"u_nonzero", all_zero && detected},
                      {"text", "u(x) = 0 at every standard point x, but u(x~) = phi(0)/eps at the generalized point x~ = [eps], so u != 0"}};
        }}},
      {"semisimple",
       {R"(# D = even grid indices; the submodule chi_D * R~ is strict
let c = chi(even)
let u = 1 + eps
let z = c * (1 - c)
let r = (1 - c) * u
task exact_zero(z)
task negligible(r)
task nonzero(c)
)",
        [](Session& s) {
          const bool z = detail::exact_zero(s.get<gen_number>("z"));
          const Verdict r = is_negligible(s.get<gen_number>("r"));
          return json{{"chi_D_times_complement_is_zero", z},
                      {"complement_part_negligible", std::string(to_string(r.status))},
                      {"strict_submodule", z && r.is_fails()},
                      {"text", "chi_D (1 - chi_D) = 0 exactly while (1 - chi_D) u is not negligible: chi_D u generates a strict submodule"}};
        }}},
  };
  return registry;
}

/// Runs a named demo; the report carries the manifest results plus a
/// "conclusion" block.
inline json run_demo(const std::string& name, Session& s) {
  const auto& reg = demos();
  auto it = reg.find(name);
  if (it == reg.end()) {
    std::string known;
    for (const auto& [k, v] : reg) known += (known.empty() ? "" : ", ") + k;
    throw Error(ErrorCode::UnknownDemo, "'" + name + "' (known: " + known + ")");
  }
  json rep = s.run(it->second.manifest, "demo:" + name);
  if (s.errors() == 0) rep["conclusion"] = it->second.conclude(s);
  return rep;
}

}  // namespace gennum::cli

#endif  // GENNUM_TOOLS_DEMOS_HPP
