#ifndef GENNUM_TOOLS_MANIFEST_HPP
#define GENNUM_TOOLS_MANIFEST_HPP

// Manifest interpreter and JSON report for the gennum command-line tool.
//
//   grid kmax=32 tail=16 mcap=40
//   let a = expr
//   vec u = [expr, ...]
//   mat g = [[expr, ...], ...]
//   domain D = cube(n, lo, hi) | box([lo, ...], [hi, ...])
//   metric G on D = [[field-expr, ...], ...]
//   vfield X on D = [field-expr, ...]
//   sfield f on D = field-expr
//   point p = [expr, ...]
//   points P = family(D) | family(D, count) | [p, q, ...]
//   task op(arg, ...)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gennum/charts.hpp"
#include "gennum/expr.hpp"
#include "gennum/oracle.hpp"
#include "json.hpp"

namespace gennum::cli {

using json = nlohmann::ordered_json;

struct PointFamily {
  std::vector<GenPoint> points;
};

using Entity = std::variant<gen_number, GenVector, GenMatrix, ChartDomain, MetricField, VectorField, ScalarField, GenPoint, PointFamily>;

inline std::string type_name(const Entity& e) {
  static const char* names[] = {"number", "vector", "matrix", "domain", "metric field", "vector field", "scalar field", "point", "point family"};
  return names[e.index()];
}

struct Options {
  std::optional<int> kmax, tail, mcap;
  unsigned long seed = 1;
  bool timing = false;
};

// ---------------------------------------------------------------- encoding

inline std::string hex(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%La", v);
  return buf;
}

inline json grid_json(const EpsGrid& g) {
  return {{"k_max", g.k_max}, {"tail_start", g.tail_start}, {"m_cap", g.m_cap}, {"eps", "2^-k"}};
}

inline json verdict_json(const Verdict& v) {
  json j;
  j["status"] = std::string(to_string(v.status));
  j["exponent"] = v.exponent ? json(*v.exponent) : json(nullptr);
  j["witnesses"] = v.witnesses;
  j["note"] = v.note;
  return j;
}

/// Samples as {k, log2|x|, sign} triples, which survive underflow of
/// doubles; `exact` holds the long double value and error bound in hex.
inline json net_json(const gen_number& x) {
  json s = json::array(), e = json::array(), ex = json::array();
  for (int k = 1; k <= x.grid().k_max; ++k) {
    const long double v = x.value(k), r = x.err(k);
    const int sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
    s.push_back(json::array({k, sign == 0 ? json(nullptr) : json(static_cast<double>(std::log2(std::fabs(v)))), sign}));
    e.push_back(r == 0 ? json(nullptr) : std::isinf(r) ? json("inf") : json(static_cast<double>(std::log2(r))));
    ex.push_back(json::array({hex(v), hex(r)}));
  }
  json j;
  j["label"] = x.label();
  j["samples"] = std::move(s);
  j["err_log2"] = std::move(e);
  j["exact"] = std::move(ex);
  return j;
}

inline json vector_json(const GenVector& v) {
  json e = json::array();
  for (int i = 0; i < v.dim(); ++i) e.push_back(net_json(v[i]));
  return {{"dim", v.dim()}, {"entries", std::move(e)}};
}

inline json matrix_json(const GenMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.dim(); ++j) r.push_back(net_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return {{"dim", m.dim()}, {"entries", std::move(rows)}};
}

inline json domain_json(const ChartDomain& d) {
  std::vector<double> lo(d.lo.begin(), d.lo.end()), hi(d.hi.begin(), d.hi.end());
  return {{"dim", d.n}, {"lo", lo}, {"hi", hi}};
}

inline json entity_json(const Entity& e) {
  json j;
  j["type"] = type_name(e);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, gen_number>) j["value"] = net_json(x);
        else if constexpr (std::is_same_v<T, GenVector>) j["value"] = vector_json(x);
        else if constexpr (std::is_same_v<T, GenMatrix>) j["value"] = matrix_json(x);
        else if constexpr (std::is_same_v<T, ChartDomain>) j["value"] = domain_json(x);
        else if constexpr (std::is_same_v<T, MetricField> || std::is_same_v<T, VectorField> || std::is_same_v<T, ScalarField>) {
          j["label"] = x.label;
          j["domain"] = domain_json(x.domain);
        } else if constexpr (std::is_same_v<T, GenPoint>) {
          j["label"] = x.label();
        } else {
          json l = json::array();
          for (const auto& p : x.points) l.push_back(p.label());
          j["points"] = std::move(l);
        }
      },
      e);
  return j;
}

// ---------------------------------------------------------------- decoding

inline EpsGrid grid_from_json(const json& j) {
  return EpsGrid(j.at("k_max").get<int>(), j.at("tail_start").get<int>(), j.at("m_cap").get<int>());
}

/// Re-ingests a serialized net. Uses the exact hex samples when present and
/// falls back to the log2 triples otherwise.
inline gen_number net_from_json(const json& j, const EpsGrid& g) {
  std::vector<bounded<long double>> s(g.k_max);
  if (j.contains("exact")) {
    const auto& ex = j.at("exact");
    if (static_cast<int>(ex.size()) != g.k_max) throw Error(ErrorCode::GridMismatch, "serialized net has the wrong length");
    for (int k = 0; k < g.k_max; ++k)
      s[k] = {std::strtold(ex[k][0].get<std::string>().c_str(), nullptr), std::strtold(ex[k][1].get<std::string>().c_str(), nullptr)};
  } else {
    const auto& tr = j.at("samples");
    const auto& er = j.at("err_log2");
    if (static_cast<int>(tr.size()) != g.k_max) throw Error(ErrorCode::GridMismatch, "serialized net has the wrong length");
    for (int k = 0; k < g.k_max; ++k) {
      const int sign = tr[k][2].get<int>();
      const long double v = sign == 0 ? 0 : sign * std::exp2(static_cast<long double>(tr[k][1].get<double>()));
      long double r = 0;
      if (er[k].is_string()) r = INFINITY;
      else if (!er[k].is_null()) r = std::exp2(static_cast<long double>(er[k].get<double>()));
      s[k] = {v, r};
    }
  }
  return gen_number::from_samples(g, std::move(s), j.value("label", std::string{}));
}

inline GenVector vector_from_json(const json& j, const EpsGrid& g) {
  std::vector<gen_number> e;
  for (const auto& x : j.at("entries")) e.push_back(net_from_json(x, g));
  return GenVector(std::move(e));
}

inline GenMatrix matrix_from_json(const json& j, const EpsGrid& g) {
  const int n = j.at("dim").get<int>();
  std::vector<gen_number> e;
  for (const auto& r : j.at("entries"))
    for (const auto& x : r) e.push_back(net_from_json(x, g));
  return GenMatrix(n, std::move(e));
}

// ---------------------------------------------------------------- session

struct Arg {
  std::string name;
  std::optional<int> integer;
  int line = 0, column = 0;
};

/// Error codes as seen by manifest users: a form that is not Lorentzian is a
/// type error at this level.
inline ErrorCode reported_code(ErrorCode c) { return c == ErrorCode::NotLorentzian ? ErrorCode::TypeMismatch : c; }

inline json error_json(const Error& e) {
  const ErrorCode c = reported_code(e.code());
  std::string msg = e.what();
  if (c != e.code()) msg = std::string(to_string(c)) + ": not a Lorentzian form, " + msg.substr(msg.find(':') + 2);
  return {{"code", std::string(to_string(c))}, {"message", msg}};
}

class Session {
 public:
  explicit Session(Options opt = {}) : opt_(std::move(opt)) {}

  const EpsGrid& grid() {
    if (!grid_) resolve_grid({}, {}, {});
    return *grid_;
  }

  const Entity* find(const std::string& name) const {
    auto it = env_.find(name);
    return it == env_.end() ? nullptr : &it->second;
  }

  template <class T>
  const T& get(const std::string& name) const {
    const Entity* e = find(name);
    if (!e) throw Error(ErrorCode::UnknownName, "'" + name + "' is not defined");
    if (!std::holds_alternative<T>(*e)) throw Error(ErrorCode::TypeMismatch, "'" + name + "' is a " + type_name(*e));
    return std::get<T>(*e);
  }

  void define(const std::string& name, Entity e, int line = 0) {
    if (env_.count(name)) throw expr::ParseError(line, 1, "'" + name + "' is already defined");
    grid();
    order_.push_back(name);
    env_.emplace(name, std::move(e));
  }

  /// Runs a manifest and returns the report. `errors()` counts failed tasks
  /// and fatal definition errors.
  json run(const std::string& text, const std::string& source) {
    json report;
    report["schema"] = 1;
    report["source"] = source;
    report["grid"] = nullptr;
    report["seed"] = opt_.seed;
    json tasks = json::array();
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    try {
      while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = expr::tokenize(raw, line, 1);
        if (toks.front().kind == expr::Tok::End) continue;
        expr::Parser p(std::move(toks));
        const std::string kw = p.expect_ident();
        if (kw == "task") {
          tasks.push_back(run_task(p));
          continue;
        }
        statement(kw, p, line);
      }
    } catch (const Error& e) {
      ++errors_;
      report["error"] = error_json(e);
      report["error"]["line"] = line;
    }
    if (grid_) report["grid"] = grid_json(*grid_);
    report["tasks"] = std::move(tasks);
    report["errors"] = errors_;
    return report;
  }

  int errors() const { return errors_; }

  const std::vector<std::string>& names() const { return order_; }

 private:
  void resolve_grid(std::optional<int> kmax, std::optional<int> tail, std::optional<int> mcap) {
    int k = 32, m = 40;
    std::optional<int> t;
    if (const char* env = std::getenv("GENNUM_KMAX")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0') throw Error(ErrorCode::InvalidGrid, "GENNUM_KMAX is not an integer");
      k = static_cast<int>(v);
    }
    if (kmax) k = *kmax;
    if (tail) t = *tail;
    if (mcap) m = *mcap;
    if (opt_.kmax) k = *opt_.kmax;
    if (opt_.tail) t = *opt_.tail;
    if (opt_.mcap) m = *opt_.mcap;
    if (k < 8 || k > 64) throw Error(ErrorCode::InvalidGrid, "k_max must lie in [8, 64], got " + std::to_string(k));
    if (t && opt_.kmax && !opt_.tail && *t >= k) t.reset();
    grid_ = EpsGrid(k, t.value_or(k / 2), m);
  }

  expr::NetEnv net_env() const {
    return [this](const std::string& n) -> const gen_number* {
      const Entity* e = find(n);
      if (!e) return nullptr;
      if (!std::holds_alternative<gen_number>(*e)) throw Error(ErrorCode::TypeMismatch, "'" + n + "' is a " + type_name(*e) + ", not a number");
      return &std::get<gen_number>(*e);
    };
  }

  /// Source text between two token positions, used as a label.
  static std::string slice(const std::string& line, int c0, int c1) {
    if (c0 < 1 || c1 <= c0) return {};
    auto s = line.substr(c0 - 1, c1 - c0);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  gen_number net(expr::Parser& p) {
    const auto e = p.expression();
    return expr::eval_net(*e, grid(), net_env()).with_label(expr::to_string(*e));
  }

  std::vector<gen_number> net_list(expr::Parser& p) {
    std::vector<gen_number> out;
    p.expect("[");
    out.push_back(net(p));
    while (p.is_punct(",")) {
      p.take();
      out.push_back(net(p));
    }
    p.expect("]");
    return out;
  }

  std::vector<expr::NodePtr> node_list(expr::Parser& p) {
    std::vector<expr::NodePtr> out;
    p.expect("[");
    out.push_back(p.expression());
    while (p.is_punct(",")) {
      p.take();
      out.push_back(p.expression());
    }
    p.expect("]");
    return out;
  }

  long double signed_number(expr::Parser& p) {
    long double s = 1;
    if (p.is_punct("-")) {
      p.take();
      s = -1;
    }
    if (p.peek().kind != expr::Tok::Number) p.fail("expected a number");
    return s * p.take().number;
  }

  std::vector<long double> number_list(expr::Parser& p) {
    std::vector<long double> out;
    p.expect("[");
    out.push_back(signed_number(p));
    while (p.is_punct(",")) {
      p.take();
      out.push_back(signed_number(p));
    }
    p.expect("]");
    return out;
  }

  /// Snapshot of the nets a field expression refers to.
  std::shared_ptr<std::map<std::string, gen_number>> capture(const std::vector<expr::NodePtr>& nodes) const {
    auto m = std::make_shared<std::map<std::string, gen_number>>();
    const auto env = net_env();
    std::function<void(const expr::Node&)> walk = [&](const expr::Node& n) {
      if (n.kind == expr::Kind::Name) m->emplace(n.text, expr::lookup(env, n));
      for (const auto& a : n.args) walk(*a);
    };
    for (const auto& n : nodes) walk(*n);
    return m;
  }

  static expr::NetEnv map_env(const std::shared_ptr<std::map<std::string, gen_number>>& m) {
    return [m](const std::string& n) -> const gen_number* {
      auto it = m->find(n);
      return it == m->end() ? nullptr : &it->second;
    };
  }

  /// Fields are checked on the domain centre and the grid so that malformed
  /// expressions surface as definition errors.
  void probe_field(const std::function<void(long double, const std::vector<long double>&)>& f, const ChartDomain& d) {
    std::vector<long double> c(d.n);
    for (int i = 0; i < d.n; ++i) c[i] = (d.lo[i] + d.hi[i]) / 2;
    for (int k = 1; k <= grid().k_max; ++k) f(grid().eps_at(k), c);
  }

  void statement(const std::string& kw, expr::Parser& p, int line) {
    if (kw == "grid") {
      if (!order_.empty() || grid_) p.fail("grid must come before any definition");
      std::optional<int> k, t, m;
      while (!p.at_end()) {
        const std::string key = p.expect_ident();
        p.expect("=");
        const int v = p.integer();
        if (key == "kmax") k = v;
        else if (key == "tail") t = v;
        else if (key == "mcap") m = v;
        else throw expr::ParseError(line, 1, "unknown grid parameter '" + key + "'");
      }
      resolve_grid(k, t, m);
      return;
    }
    const int name_col = p.peek().column;
    const std::string raw_name = p.expect_ident();
    if (env_.count(raw_name)) throw expr::ParseError(line, name_col, "'" + raw_name + "' is already defined");
    if (kw == "let") {
      p.expect("=");
      gen_number x = net(p);
      p.expect_end();
      define(raw_name, x.with_label(raw_name), line);
    } else if (kw == "vec") {
      p.expect("=");
      auto e = net_list(p);
      p.expect_end();
      define(raw_name, GenVector(std::move(e)), line);
    } else if (kw == "mat") {
      p.expect("=");
      p.expect("[");
      std::vector<std::vector<gen_number>> rows{net_list(p)};
      while (p.is_punct(",")) {
        p.take();
        rows.push_back(net_list(p));
      }
      p.expect("]");
      p.expect_end();
      const int n = static_cast<int>(rows.size());
      std::vector<gen_number> e;
      for (auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw Error(ErrorCode::DimensionMismatch, "matrix '" + raw_name + "' is not square");
        e.insert(e.end(), r.begin(), r.end());
      }
      define(raw_name, GenMatrix(n, std::move(e)), line);
    } else if (kw == "domain") {
      p.expect("=");
      const std::string shape = p.expect_ident();
      p.expect("(");
      ChartDomain d;
      if (shape == "cube") {
        const int n = p.integer();
        p.expect(",");
        const long double a = signed_number(p);
        p.expect(",");
        const long double b = signed_number(p);
        if (n < 1) p.fail("dimension must be positive");
        d = ChartDomain::cube(n, a, b, raw_name);
      } else if (shape == "box") {
        auto lo = number_list(p);
        p.expect(",");
        auto hi = number_list(p);
        d = ChartDomain(lo, hi, raw_name);
      } else {
        throw expr::ParseError(line, 1, "unknown domain shape '" + shape + "'");
      }
      p.expect(")");
      p.expect_end();
      define(raw_name, d, line);
    } else if (kw == "metric" || kw == "vfield" || kw == "sfield") {
      if (p.expect_ident() != "on") p.fail("expected 'on'");
      const ChartDomain& d = get<ChartDomain>(p.expect_ident());
      p.expect("=");
      p.set_coords(d.n);
      std::vector<expr::NodePtr> nodes;
      if (kw == "metric") {
        p.expect("[");
        auto r = node_list(p);
        nodes.insert(nodes.end(), r.begin(), r.end());
        while (p.is_punct(",")) {
          p.take();
          r = node_list(p);
          nodes.insert(nodes.end(), r.begin(), r.end());
        }
        p.expect("]");
        if (static_cast<int>(nodes.size()) != d.n * d.n) throw Error(ErrorCode::DimensionMismatch, "metric needs " + std::to_string(d.n * d.n) + " entries");
      } else if (kw == "vfield") {
        nodes = node_list(p);
        if (static_cast<int>(nodes.size()) != d.n) throw Error(ErrorCode::DimensionMismatch, "vector field needs " + std::to_string(d.n) + " entries");
      } else {
        nodes = {p.expression()};
      }
      p.expect_end();
      const auto env = map_env(capture(nodes));
      auto many = [nodes, env](long double e, const std::vector<long double>& x) {
        std::vector<long double> out;
        out.reserve(nodes.size());
        for (const auto& n : nodes) out.push_back(expr::eval_point(*n, e, x, env));
        return out;
      };
      probe_field([&](long double e, const std::vector<long double>& x) { many(e, x); }, d);
      if (kw == "metric") define(raw_name, MetricField{d, many, raw_name}, line);
      else if (kw == "vfield") define(raw_name, VectorField{d, many, raw_name}, line);
      else define(raw_name, ScalarField{d, [many](long double e, const std::vector<long double>& x) { return many(e, x)[0]; }, raw_name}, line);
    } else if (kw == "point") {
      p.expect("=");
      auto coords = net_list(p);
      p.expect_end();
      define(raw_name,
             GenPoint(
                 [coords](long double e) {
                   std::vector<long double> x;
                   for (const auto& c : coords) x.push_back(c.evaluate(e));
                   return x;
                 },
                 grid(), raw_name),
             line);
    } else if (kw == "points") {
      p.expect("=");
      PointFamily fam;
      if (p.is_punct("[")) {
        p.take();
        fam.points.push_back(get<GenPoint>(p.expect_ident()));
        while (p.is_punct(",")) {
          p.take();
          fam.points.push_back(get<GenPoint>(p.expect_ident()));
        }
        p.expect("]");
      } else {
        if (p.expect_ident() != "family") p.fail("expected family(...) or a list of points");
        p.expect("(");
        const ChartDomain& d = get<ChartDomain>(p.expect_ident());
        int count = 32;
        if (p.is_punct(",")) {
          p.take();
          count = p.integer();
          if (count < 1) p.fail("count must be positive");
        }
        p.expect(")");
        fam.points = default_point_family(d, grid(), opt_.seed, count);
      }
      p.expect_end();
      define(raw_name, std::move(fam), line);
    } else {
      throw expr::ParseError(line, 1, "unknown statement '" + kw + "'");
    }
  }

  json run_task(expr::Parser& p) {
    const std::string op = p.expect_ident();
    std::vector<Arg> args;
    p.expect("(");
    if (!p.is_punct(")")) {
      do {
        if (!args.empty()) p.take();
        Arg a;
        a.line = p.peek().line;
        a.column = p.peek().column;
        if (p.peek().kind == expr::Tok::Number || p.is_punct("-")) a.integer = p.integer();
        else a.name = p.expect_ident();
        args.push_back(std::move(a));
      } while (p.is_punct(","));
    }
    p.expect(")");
    p.expect_end();

    json t;
    t["op"] = op;
    json jargs = json::array();
    for (const auto& a : args) jargs.push_back(a.integer ? json(*a.integer) : json(a.name));
    t["args"] = jargs;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      json inputs = json::object();
      for (const auto& a : args)
        if (!a.integer) {
          const Entity* e = find(a.name);
          if (!e) throw Error(ErrorCode::UnknownName, "'" + a.name + "' is not defined");
          if (!inputs.contains(a.name)) inputs[a.name] = entity_json(*e);
        }
      t["inputs"] = std::move(inputs);
      t["result"] = dispatch(op, args);
      t["status"] = "ok";
    } catch (const Error& e) {
      ++errors_;
      t.erase("inputs");
      t["status"] = "error";
      t["error"] = error_json(e);
    }
    if (opt_.timing)
      t["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return t;
  }

  void arity(const std::string& op, const std::vector<Arg>& a, std::size_t n, bool at_least = false) const {
    if (a.size() < n || (!at_least && a.size() != n))
      throw Error(ErrorCode::TypeMismatch, op + " expects " + (at_least ? "at least " : "") + std::to_string(n) + " argument(s)");
  }

  template <class T>
  const T& arg(const std::vector<Arg>& a, std::size_t i) const {
    if (a[i].integer) throw Error(ErrorCode::TypeMismatch, "argument " + std::to_string(i + 1) + " must be a name");
    return get<T>(a[i].name);
  }

  static BilinearForm lorentz(const GenMatrix& g) {
    BilinearForm f(g);
    f.require_lorentzian();
    return f;
  }

  static json causal_json(const CausalClass& c) {
    return {{"kind", std::string(to_string(c.kind))},
            {"norm", net_json(c.norm)},
            {"strictly_negative", verdict_json(c.negative)},
            {"strictly_positive", verdict_json(c.positive)},
            {"negligible_norm", verdict_json(c.negligible_norm)},
            {"free", verdict_json(c.free)}};
  }

  static json index_json(const MatrixIndex& m) {
    return {{"nu_plus", m.nu_plus ? json(*m.nu_plus) : json(nullptr)},
            {"nu_minus", m.nu_minus ? json(*m.nu_minus) : json(nullptr)},
            {"verdict", verdict_json(m.verdict)}};
  }

  static json max_negligible(const GenMatrix& m) {
    std::vector<Verdict> v;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) v.push_back(is_negligible(m(i, j)));
    return verdict_json(all_of(v));
  }

  std::vector<GenPoint> point_arg(const std::vector<Arg>& a, std::size_t i) const {
    const Entity* e = a[i].integer ? nullptr : find(a[i].name);
    if (e && std::holds_alternative<GenPoint>(*e)) return {std::get<GenPoint>(*e)};
    return arg<PointFamily>(a, i).points;
  }

  json dispatch(const std::string& op, const std::vector<Arg>& a) {
    json r;
    // numbers
    if (op == "show") {
      arity(op, a, 1);
      return entity_json(*find(a[0].name));
    }
    if (op == "order") {
      arity(op, a, 1);
      const auto o = estimate_order(arg<gen_number>(a, 0));
      return {{"negligible", o.negligible}, {"order", o.order}, {"slope", static_cast<double>(o.slope)}, {"low_confidence", o.low_confidence}};
    }
    using Pred = Verdict (*)(const gen_number&);
    static const std::map<std::string, Pred> unary{
        {"negligible", [](const gen_number& x) { return is_negligible(x); }},
        {"nonzero", [](const gen_number& x) { return is_strictly_nonzero(x); }},
        {"invertible", [](const gen_number& x) { return is_invertible(x); }},
        {"positive", [](const gen_number& x) { return is_strictly_positive(x); }},
        {"negative", [](const gen_number& x) { return is_strictly_negative(x); }},
    };
    if (auto it = unary.find(op); it != unary.end()) {
      arity(op, a, 1);
      return {{"verdict", verdict_json(it->second(arg<gen_number>(a, 0)))}};
    }
    if (op == "leq" || op == "equal") {
      arity(op, a, 2);
      const auto& x = arg<gen_number>(a, 0);
      const auto& y = arg<gen_number>(a, 1);
      return {{"verdict", verdict_json(op == "leq" ? leq(x, y) : equal(x, y))}};
    }
    if (op == "exact_zero") {
      arity(op, a, 1);
      const auto& x = arg<gen_number>(a, 0);
      bool z = true;
      for (int k = 1; k <= x.grid().k_max; ++k) z = z && x.value(k) == 0;
      return {{"exact_zero", z}, {"negligible", verdict_json(is_negligible(x))}};
    }
    // matrices
    if (op == "eigen") {
      arity(op, a, 1);
      const auto e = gen_eigen(arg<GenMatrix>(a, 0));
      json ev = json::array();
      for (const auto& l : e.eigenvalues) ev.push_back(net_json(l));
      return {{"eigenvalues", ev}, {"U", matrix_json(e.U)}, {"residual", net_json(e.residual)}, {"residual_negligible", verdict_json(is_negligible(e.residual))}};
    }
    if (op == "det") {
      arity(op, a, 1);
      const auto& m = arg<GenMatrix>(a, 0);
      const auto d = det(m);
      return {{"det", net_json(d)}, {"nondegenerate", verdict_json(is_nondegenerate(m))}, {"negligible", verdict_json(is_negligible(d))}};
    }
    if (op == "index") {
      arity(op, a, 1);
      return index_json(matrix_index(arg<GenMatrix>(a, 0)));
    }
    if (op == "posdef") {
      arity(op, a, 1);
      return {{"verdict", verdict_json(principal_minor_test(arg<GenMatrix>(a, 0)))}};
    }
    if (op == "symmetric") {
      arity(op, a, 1);
      return {{"verdict", verdict_json(is_symmetric_class(arg<GenMatrix>(a, 0)))}};
    }
    // vectors
    if (op == "free") {
      arity(op, a, 1);
      const auto& v = arg<GenVector>(a, 0);
      return {{"verdict", verdict_json(is_free(v))}, {"norm", net_json(norm(v))}, {"by_max", verdict_json(is_free_by_max(v))}};
    }
    if (op == "extend") {
      arity(op, a, 1);
      const auto b = extend_to_basis(arg<GenVector>(a, 0));
      json vs = json::array();
      for (const auto& v : b) vs.push_back(vector_json(v));
      return {{"basis", vs}, {"is_basis", verdict_json(is_basis(b))}};
    }
    if (op == "steinitz") {
      arity(op, a, 3);
      const auto& bm = arg<GenMatrix>(a, 0);
      const auto& w = arg<GenVector>(a, 1);
      if (!a[2].integer) throw Error(ErrorCode::TypeMismatch, "steinitz expects an integer position");
      std::vector<GenVector> basis;
      for (int j = 0; j < bm.dim(); ++j) basis.push_back(bm.col(j));
      const auto b = steinitz_exchange(basis, w, *a[2].integer - 1);
      json vs = json::array();
      for (const auto& v : b) vs.push_back(vector_json(v));
      return {{"basis", vs}, {"is_basis", verdict_json(is_basis(b))}};
    }
    if (op == "project") {
      arity(op, a, 3, true);
      const auto& h = arg<GenMatrix>(a, 0);
      const auto& v = arg<GenVector>(a, 1);
      std::vector<GenVector> m;
      for (std::size_t i = 2; i < a.size(); ++i) m.push_back(arg<GenVector>(a, i));
      return {{"projection", vector_json(orthogonal_project(m, h, v))}};
    }
    // causal
    if (op == "classify") {
      arity(op, a, 2);
      return causal_json(classify(lorentz(arg<GenMatrix>(a, 0)), arg<GenVector>(a, 1)));
    }
    if (op == "orientation") {
      arity(op, a, 3);
      return {{"same_orientation", verdict_json(same_orientation(lorentz(arg<GenMatrix>(a, 0)), arg<GenVector>(a, 1), arg<GenVector>(a, 2)))}};
    }
    if (op == "cs") {
      arity(op, a, 3);
      const auto c = inverse_cauchy_schwarz(lorentz(arg<GenMatrix>(a, 0)), arg<GenVector>(a, 1), arg<GenVector>(a, 2));
      return {{"lhs", net_json(c.lhs)},          {"rhs", net_json(c.rhs)},
              {"gap", net_json(c.gap)},          {"gap_direct", net_json(c.gap_direct)},
              {"inequality", verdict_json(c.inequality)}, {"strict", verdict_json(c.strict)},
              {"residual_free", verdict_json(c.residual_free)}, {"label", c.label}};
    }
    if (op == "complement") {
      arity(op, a, 2);
      const auto g = lorentz(arg<GenMatrix>(a, 0));
      const auto c = orthogonal_complement_basis(g, arg<GenVector>(a, 1));
      json vs = json::array();
      for (const auto& v : c.vectors) vs.push_back(vector_json(v));
      return {{"vectors", vs}, {"gram", matrix_json(c.gram)}, {"gram_index", index_json(matrix_index(c.gram))},
              {"det_identity_residual", verdict_json(is_negligible(c.det_identity_residual))}};
    }
    if (op == "boost") {
      arity(op, a, 3);
      const auto g = lorentz(arg<GenMatrix>(a, 0));
      const auto& xi = arg<GenVector>(a, 1);
      const auto& eta = arg<GenVector>(a, 2);
      const auto L = lorentz_boost(g, xi, eta);
      const auto lv = L * xi - eta;
      std::vector<Verdict> vv;
      for (int i = 0; i < lv.dim(); ++i) vv.push_back(is_negligible(lv[i]));
      return {{"L", matrix_json(L)}, {"preserves_metric", max_negligible(L.transpose() * g.g() * L - g.g())}, {"maps_xi_to_eta", verdict_json(all_of(vv))}};
    }
    if (op == "metrconstr") {
      arity(op, a, 3);
      const auto h = metrconstr(lorentz(arg<GenMatrix>(a, 0)), arg<GenVector>(a, 1), arg<GenVector>(a, 2));
      return {{"h", matrix_json(h)}, {"index", index_json(matrix_index(h))}};
    }
    if (op == "energy") {
      arity(op, a, 4);
      const auto g = lorentz(arg<GenMatrix>(a, 0));
      const auto& xi = arg<GenVector>(a, 2);
      const auto& eta = arg<GenVector>(a, 3);
      const auto E = energy_tensor(g, arg<GenVector>(a, 1));
      const auto flux = flux_vector(g, E, xi);
      return {{"E", matrix_json(E.E)},
              {"contraction", net_json(energy_contraction(g, E, xi, eta))},
              {"dominant_energy", verdict_json(dominant_energy_check(g, E, xi, eta))},
              {"identity_residual", verdict_json(is_negligible(energy_identity_residual(g, E, xi)))},
              {"flux", causal_json(classify(g, flux))}};
    }
    // charts
    if (op == "field_index") {
      arity(op, a, 2);
      const auto rep = metric_index_at_points(arg<MetricField>(a, 0), arg<PointFamily>(a, 1).points);
      return {{"verdict", verdict_json(rep.verdict)}, {"index", rep.index ? json(*rep.index) : json(nullptr)}, {"failing_points", rep.failing_points}};
    }
    if (op == "field_classify") {
      arity(op, a, 3);
      const auto c = classify_field(arg<MetricField>(a, 0), arg<VectorField>(a, 1), arg<PointFamily>(a, 2).points);
      json per = json::array();
      for (auto k : c.per_point) per.push_back(std::string(to_string(k)));
      return {{"per_point", per}, {"common", c.common ? json(std::string(to_string(*c.common))) : json(nullptr)}, {"timelike", verdict_json(c.timelike)}};
    }
    if (op == "riemannian") {
      arity(op, a, 4);
      const auto c = riemannian_from_timelike(arg<MetricField>(a, 0), arg<VectorField>(a, 1), arg<VectorField>(a, 2), arg<PointFamily>(a, 3).points);
      return {{"verdict", verdict_json(c.index.verdict)}, {"index", c.index.index ? json(*c.index.index) : json(nullptr)}};
    }
    if (op == "pointvalue") {
      arity(op, a, 2);
      const auto& f = arg<ScalarField>(a, 0);
      json per = json::array();
      for (const auto& pt : point_arg(a, 1)) {
        const auto v = eval_scalar(f, pt);
        const auto o = estimate_order(v);
        per.push_back({{"point", pt.label()}, {"negligible", verdict_json(is_negligible(v))}, {"order", o.negligible ? json("negligible") : json(o.order)}});
      }
      return {{"values", per}};
    }
    // oracles
    if (op == "oracle_eigen") {
      arity(op, a, 1);
      json s = json::array();
      for (const auto& x : oracle::slice_eigen_oracle(arg<GenMatrix>(a, 0)))
        s.push_back({{"k", x.k}, {"delta", static_cast<double>(x.delta)}, {"scale", static_cast<double>(x.scale)}});
      return {{"slices", s}};
    }
    if (op == "oracle_causal") {
      arity(op, a, 2);
      const auto rep = oracle::slice_causality_oracle(arg<GenMatrix>(a, 0), arg<GenVector>(a, 1));
      json s = json::array();
      for (const auto& x : rep.slices) s.push_back({{"k", x.k}, {"kind", x.kind}});
      return {{"slices", s}, {"expected", std::string(to_string(rep.expected))}, {"uniform", rep.uniform}};
    }
    if (op == "oracle_free") {
      arity(op, a, 1);
      const auto f = oracle::freeness_oracle(arg<GenVector>(a, 0));
      return {{"free", f.free}, {"zero_slices", f.zero_slices}, {"exponent", f.free ? json(f.exponent) : json(nullptr)}};
    }
    throw Error(ErrorCode::UnknownName, "unknown task '" + op + "'");
  }

  Options opt_;
  std::optional<EpsGrid> grid_;
  std::map<std::string, Entity> env_;
  std::vector<std::string> order_;
  int errors_ = 0;
};

}  // namespace gennum::cli

#endif  // GENNUM_TOOLS_MANIFEST_HPP
