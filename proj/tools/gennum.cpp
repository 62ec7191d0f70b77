#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "demos.hpp"

namespace {

using gennum::cli::json;

std::string status_of(const json& v) { return v.is_object() && v.contains("status") ? v["status"].get<std::string>() : "?"; }

/// One line per task for humans; the JSON report has everything.
std::string summarize(const json& t) {
  std::string head = t["op"].get<std::string>() + "(";
  for (std::size_t i = 0; i < t["args"].size(); ++i) head += (i ? ", " : "") + (t["args"][i].is_string() ? t["args"][i].get<std::string>() : t["args"][i].dump());
  head += "): ";
  if (t["status"] == "error") return head + "error " + t["error"]["message"].get<std::string>();
  const json& r = t["result"];
  std::ostringstream s;
  if (r.contains("kind")) s << r["kind"].get<std::string>();
  else if (r.contains("expected")) s << "slice-wise " << r["expected"].get<std::string>() << (r["uniform"].get<bool>() ? "" : " (not uniform)");
  else if (r.contains("label") && r.contains("strict"))
    s << "inequality " << status_of(r["inequality"]) << ", strict " << status_of(r["strict"]) << ", " << r["label"].get<std::string>();
  else if (r.contains("nu_minus"))
    s << "index " << (r["nu_minus"].is_null() ? "undefined" : r["nu_minus"].dump()) << " (" << status_of(r["verdict"]) << ")";
  else if (r.contains("failing_points") || (r.contains("index") && r.contains("verdict")))
    s << status_of(r["verdict"]) << (r["index"].is_null() ? std::string() : ", index " + r["index"].dump());
  else if (r.contains("per_point"))
    s << (r["common"].is_null() ? std::string("mixed") : r["common"].get<std::string>()) << " at every point, time-like " << status_of(r["timelike"]);
  else if (r.contains("is_basis")) s << "basis " << status_of(r["is_basis"]);
  else if (r.contains("zero_slices"))
    s << (r["free"].get<bool>() ? "free on every slice, exponent " + r["exponent"].dump() : "zero on " + std::to_string(r["zero_slices"].size()) + " slice(s)");
  else if (r.contains("slices")) {
    double d = 0;
    for (const auto& x : r["slices"]) d = std::max(d, x["delta"].get<double>());
    s << "max slice deviation " << d;
  } else if (r.contains("h")) s << "h has index " << (r["index"]["nu_minus"].is_null() ? "undefined" : r["index"]["nu_minus"].dump());
  else if (r.contains("gram_index"))
    s << "complement Gram index " << (r["gram_index"]["nu_minus"].is_null() ? "undefined" : r["gram_index"]["nu_minus"].dump());
  else if (r.contains("exact_zero")) s << (r["exact_zero"].get<bool>() ? "exactly zero" : "not exactly zero") << ", negligible " << status_of(r["negligible"]);
  else if (r.contains("verdict")) s << status_of(r["verdict"]);
  else if (r.contains("order")) s << (r["negligible"].get<bool>() ? std::string("negligible") : "order " + r["order"].dump());
  else if (r.contains("eigenvalues")) s << r["eigenvalues"].size() << " eigenvalue nets, residual negligible " << status_of(r["residual_negligible"]);
  else if (r.contains("det")) s << "nondegenerate " << status_of(r["nondegenerate"]);
  else if (r.contains("values")) {
    for (std::size_t i = 0; i < r["values"].size(); ++i)
      s << (i ? ", " : "") << r["values"][i]["point"].get<std::string>() << ": negligible " << status_of(r["values"][i]["negligible"]);
  } else if (r.contains("dominant_energy"))
    s << "dominant energy " << status_of(r["dominant_energy"]) << ", identity residual negligible " << status_of(r["identity_residual"]);
  else if (r.contains("preserves_metric"))
    s << "preserves metric " << status_of(r["preserves_metric"]) << ", maps xi to eta " << status_of(r["maps_xi_to_eta"]);
  else s << "ok";
  return head + s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized numbers, linear algebra and causality over sampled nets"};
  std::string manifest, json_path, demo;
  gennum::cli::Options opt;
  int kmax = 0, tail = 0, mcap = 0;
  auto* km = app.add_option("--kmax", kmax, "number of grid points eps = 2^-k (8..64)");
  auto* tl = app.add_option("--tail", tail, "first grid index of the asymptotic tail");
  auto* mc = app.add_option("--mcap", mcap, "negligibility exponent M_cap");
  app.add_option("--seed", opt.seed, "seed for generated point families");
  app.add_option("--json", json_path, "write the JSON report to this path ('-' for stdout)");
  app.add_option("--demo", demo, "run a built-in scenario: csex, mixing, incomparable, pointvalue, semisimple");
  app.add_flag("--timing", opt.timing, "include per-task runtime in the report");
  app.add_option("manifest", manifest, "manifest file");
  CLI11_PARSE(app, argc, argv);
  if (*km) opt.kmax = kmax;
  if (*tl) opt.tail = tail;
  if (*mc) opt.mcap = mcap;

  if (demo.empty() == manifest.empty()) {
    std::cerr << "give exactly one of a manifest file or --demo <name>\n";
    return 2;
  }

  json report;
  gennum::cli::Session session(opt);
  try {
    if (!demo.empty()) {
      report = gennum::cli::run_demo(demo, session);
    } else {
      std::ifstream in(manifest);
      if (!in) {
        std::cerr << "cannot read " << manifest << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      report = session.run(buf.str(), manifest);
    }
  } catch (const gennum::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::ostream& human = json_path == "-" ? std::cerr : std::cout;
  if (report.contains("error"))
    human << "error at line " << report["error"]["line"].get<int>() << ": " << report["error"]["message"].get<std::string>() << "\n";
  for (const auto& t : report["tasks"]) human << summarize(t) << "\n";
  if (report.contains("conclusion")) human << "conclusion: " << report["conclusion"]["text"].get<std::string>() << "\n";

  const std::string text = report.dump(2) + "\n";
  if (json_path == "-") {
    std::cout << text;
  } else if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 2;
    }
    out << text;
  }
  return report["errors"].get<int>() == 0 ? 0 : 1;
}
