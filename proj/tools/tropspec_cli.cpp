// tropspec: tropical roots, tropical eigenvalues and eigenvalue bounds.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "tropspec/assignment.hpp"
#include "tropspec/bounds.hpp"
#include "tropspec/combinatorics.hpp"
#include "tropspec/io.hpp"
#include "tropspec/trop_poly.hpp"
#include "tropspec/trop_spectra.hpp"
#include "tropspec/verify.hpp"

namespace {

using namespace tropspec;
using io::json;

enum Exit { kOk = 0, kParse = 2, kNumeric = 3, kViolation = 4 };

struct Globals {
  double tol = kBoundTol;
  std::uint64_t seed = 1;
  bool json = false;
  bool csv = false;
  bool quiet = false;
};

Globals g;

std::string pretty(double x) {
  if (x == kNegInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string pretty(const Complex& z) {
  if (z.imag() == 0.0) return pretty(z.real());
  return pretty(z.real()) + (z.imag() < 0 ? "-" : "+") + pretty(std::abs(z.imag())) + "i";
}

void out(const std::string& s) {
  if (!g.quiet) std::cout << s;
}

void emit_json(const json& j) { out(j.dump(2) + "\n"); }

struct PolyInput {
  std::vector<Complex> coeffs;  // complex coefficients (max-times view in max-plus mode)
  TropicalPolynomial trop{std::vector<double>{0.0}};
};

PolyInput read_polynomial(const std::string& path, bool max_plus) {
  const std::string text = io::read_file(path);
  PolyInput p;
  if (max_plus) {
    std::vector<double> logs = io::parse_log_polynomial(text);
    bool any_finite = false;
    for (double v : logs) any_finite = any_finite || v != kNegInf;
    if (!any_finite) throw ParseError("polynomial has no finite coefficient");
    p.trop = TropicalPolynomial(logs);
    for (double v : p.trop.coeffs()) p.coeffs.emplace_back(v == kNegInf ? 0.0 : std::exp(v));
  } else {
    p.coeffs = io::parse_polynomial(text);
    while (!p.coeffs.empty() && p.coeffs.back() == Complex(0.0)) p.coeffs.pop_back();
    if (p.coeffs.empty()) throw ParseError("zero polynomial");
    p.trop = max_times_relative(p.coeffs);
  }
  if (p.trop.degree() < 1) throw ParseError("degree ≥ 1 required");
  return p;
}

ComplexMatrix load_matrix(const std::string& path, const std::string& format) {
  return format.empty() ? io::read_matrix(path) : io::read_matrix(path, io::parse_format_name(format));
}

int cmd_troots(const std::string& path, bool max_plus, bool hop) {
  const PolyInput p = read_polynomial(path, max_plus);
  const NewtonPolygon poly = newton_polygon(p.trop);
  const RootMultiset roots = tropical_roots(p.trop);
  std::optional<HopReport> hop_rep;
  if (hop) hop_rep = hop_check(p.coeffs, g.tol);
  const int code = hop_rep && !hop_rep->all_hold() ? kViolation : kOk;

  if (g.json) {
    json j{{"degree", p.trop.degree()}, {"roots", io::to_json(roots)}, {"newton_polygon", io::to_json(poly)}};
    if (hop_rep) j["hop"] = io::to_json(*hop_rep);
    emit_json(j);
    return code;
  }
  if (g.csv) {
    std::string s = "log_value,value,multiplicity\n";
    for (const TropicalRoot& r : roots.entries())
      s += io::machine(r.value) + "," + io::machine(r.value == kNegInf ? 0.0 : std::exp(r.value)) + "," +
           std::to_string(r.multiplicity) + "\n";
    if (hop_rep) s += "\n" + io::to_csv(*hop_rep);
    out(s);
    return code;
  }
  std::string s = "tropical roots (degree " + std::to_string(p.trop.degree()) + ")\n";
  s += "  max-plus      max-times     multiplicity\n";
  for (const TropicalRoot& r : roots.entries()) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-12s  %-12s  %d\n", pretty(r.value).c_str(),
                  pretty(r.value == kNegInf ? 0.0 : std::exp(r.value)).c_str(), r.multiplicity);
    s += line;
  }
  s += "Newton polygon vertices:";
  for (const HullVertex& v : poly.vertices) s += " (" + std::to_string(v.index) + ", " + pretty(v.value) + ")";
  s += "\nsaturated indices:";
  for (int k : poly.saturated) s += " " + std::to_string(k);
  s += "\n";
  if (hop_rep) {
    s += "\n  k  |z1..zk|       a1..ak        ratio         lower         upper         verdict\n";
    for (const HopRow& h : hop_rep->rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%3d  %-12s  %-12s  %-12s  %-12s  %-12s  %s\n", h.k,
                    pretty(h.root_prefix).c_str(), pretty(h.trop_prefix).c_str(), pretty(h.ratio).c_str(),
                    pretty(h.lower_constant).c_str(), pretty(h.upper_constant).c_str(),
                    h.lower_holds && h.upper_holds ? "ok" : "VIOLATED");
      s += line;
    }
  }
  out(s);
  return code;
}

int cmd_teig(const std::string& path, const std::string& format, const std::string& method) {
  const NonnegMatrix m = abs(load_matrix(path, format));
  std::optional<TropicalSpectrum> coeff, eval;
  if (method == "coeff" || method == "both") coeff = tropical_eigenvalues(m, EigenRoute::Coefficients);
  if (method == "eval" || method == "both") eval = tropical_eigenvalues(m, EigenRoute::Evaluation);
  const TropicalSpectrum& spec = coeff ? *coeff : *eval;
  const double rho_max = max_cycle_mean(m);
  const double gamma1 = spec.values().front();
  const bool rho_ok = std::abs(gamma1 - rho_max) <= 1e-9 * std::max(1.0, rho_max);
  bool routes_agree = true;
  if (coeff && eval) {
    const auto a = coeff->gammas.entries(), b = eval->gammas.entries();
    routes_agree = a.size() == b.size();
    for (std::size_t i = 0; routes_agree && i < a.size(); ++i)
      routes_agree = a[i].multiplicity == b[i].multiplicity &&
                     (a[i].value == b[i].value || std::abs(a[i].value - b[i].value) <= 1e-9 * std::max(1.0, std::abs(a[i].value)));
  }
  const int code = rho_ok && routes_agree ? kOk : kNumeric;

  if (g.json) {
    json j = io::to_json(spec);
    j["method"] = method;
    j["rho_max"] = io::number(rho_max);
    j["rho_max_matches_gamma1"] = rho_ok;
    if (coeff && eval) j["routes_agree"] = routes_agree;
    emit_json(j);
    return code;
  }
  if (g.csv) {
    std::string s = "i,gamma\n";
    const auto v = spec.values();
    for (std::size_t i = 0; i < v.size(); ++i) s += std::to_string(i + 1) + "," + io::machine(v[i]) + "\n";
    out(s);
    return code;
  }
  std::string s = "tropical eigenvalues:";
  for (double v : spec.values()) s += " " + pretty(v);
  s += "\nmultiplicities:";
  for (const TropicalRoot& r : spec.gammas.entries())
    s += " " + pretty(r.value == kNegInf ? 0.0 : std::exp(r.value)) + " x" + std::to_string(r.multiplicity);
  s += "\nrho_max (Karp) = " + pretty(rho_max) + (rho_ok ? " = gamma_1\n" : " != gamma_1 (MISMATCH)\n");
  if (coeff && coeff->saturated) {
    s += "saturated trace indices k:";
    const int n = static_cast<int>(m.size());
    for (auto it = coeff->saturated->rbegin(); it != coeff->saturated->rend(); ++it) s += " " + std::to_string(n - *it);
    s += "\n";
  }
  if (coeff && eval) s += std::string("coefficient and evaluation routes ") + (routes_agree ? "agree\n" : "DISAGREE\n");
  out(s);
  return code;
}

std::pair<int, int> parse_k_range(const std::string& range, int n) {
  if (range.empty()) return {1, n};
  const auto sep = range.find_first_of(":-");
  try {
    if (sep == std::string::npos) {
      const int k = std::stoi(range);
      return {k, k};
    }
    return {std::stoi(range.substr(0, sep)), std::stoi(range.substr(sep + 1))};
  } catch (const std::exception&) {
    throw ParseError("--k-range expects K or K1:K2, got '" + range + "'");
  }
}

int cmd_bounds(const std::string& path, const std::string& format, const std::string& range, bool lower) {
  const ComplexMatrix a = load_matrix(path, format);
  ReportOptions opt;
  std::tie(opt.k_min, opt.k_max) = parse_k_range(range, static_cast<int>(a.size()));
  opt.lower = lower;
  opt.tol = g.tol;
  opt.seed = g.seed;
  const BoundReport rep = upper_bound_report(a, opt);
  const int code = rep.upper_all_hold() && !rep.lower_violated() ? kOk : kViolation;

  if (g.json) {
    emit_json(io::to_json(rep));
    return code;
  }
  if (g.csv) {
    out(io::to_csv(rep));
    return code;
  }
  std::string s = "n = " + std::to_string(rep.n) + ", input " + rep.provenance.input_hash + "\n";
  s += "  k  |l1..lk|      g1..gk        U_k           ratio         upper";
  if (lower) s += "  L_k           lower";
  s += "\n";
  for (const BoundRow& r : rep.rows) {
    char line[200];
    std::snprintf(line, sizeof line, "%3d  %-12s  %-12s  %-12s  %-12s  %-5s", r.k, pretty(r.eig_prefix).c_str(),
                  pretty(r.trop_prefix).c_str(), pretty(r.upper_constant).c_str(), pretty(r.ratio).c_str(),
                  r.upper_holds ? "ok" : "FAIL");
    s += line;
    if (lower) {
      std::snprintf(line, sizeof line, "  %-12s  %s", r.lower_constant ? pretty(*r.lower_constant).c_str() : "-",
                    r.lower_holds ? (*r.lower_holds ? "ok" : "FAIL") : "n/a");
      s += line;
    }
    s += "\n";
    for (const std::string& d : r.diagnostics) s += "       " + d + "\n";
  }
  for (const std::string& note : rep.notes) s += note + "\n";
  out(s);
  return code;
}

int cmd_verify(const std::string& suite, int instances, int nmax) {
  SuiteOptions opt;
  opt.instances = instances;
  opt.nmax = nmax;
  opt.seed = g.seed;
  opt.tol = g.tol;
  const SuiteResult r = run_suite(suite, opt);
  const int code = r.ok() ? kOk : kViolation;
  if (g.json) {
    json j{{"suite", r.suite},     {"instances", r.instances}, {"passed", r.passed},
           {"worst_ratio", io::number(r.worst_ratio)}, {"seed", g.seed},   {"failures", r.failures}};
    if (!r.extra_label.empty()) j[r.extra_label] = r.extra;
    emit_json(j);
    return code;
  }
  if (g.csv) {
    out("suite,instances,passed,worst_ratio,seed\n" + r.suite + "," + std::to_string(r.instances) + "," +
        std::to_string(r.passed) + "," + io::machine(r.worst_ratio) + "," + std::to_string(g.seed) + "\n");
    return code;
  }
  std::string s = r.suite + ": " + std::to_string(r.passed) + "/" + std::to_string(r.instances) +
                  " pass (seed " + std::to_string(g.seed) + ", worst ratio " + pretty(r.worst_ratio) + ")\n";
  if (!r.extra_label.empty()) s += r.extra_label + ": " + std::to_string(r.extra) + "\n";
  for (const std::string& f : r.failures) s += "  " + f + "\n";
  out(s);
  return code;
}

int cmd_companion(const std::string& path, bool max_plus) {
  const PolyInput p = read_polynomial(path, max_plus);
  const std::vector<CompanionRow> rows = companion_comparison(p.coeffs, g.tol);
  bool ok = true;
  for (const CompanionRow& r : rows) ok = ok && r.holds;
  const int code = ok ? kOk : kViolation;
  if (g.json) {
    emit_json(io::to_json(rows));
    return code;
  }
  if (g.csv) {
    out(io::to_csv(rows));
    return code;
  }
  std::string s = "  k  ratio         exact U_k     min(k+1,n-k+1)  Polya         verdict\n";
  for (const CompanionRow& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%3d  %-12s  %-12s  %-14s  %-12s  %s\n", r.k, pretty(r.ratio).c_str(),
                  pretty(r.exact_constant).c_str(), pretty(r.explicit_constant).c_str(),
                  pretty(r.polya_constant).c_str(), r.holds ? "ok" : "VIOLATED");
    s += line;
  }
  out(s);
  return code;
}

int cmd_decompose(const std::string& path, const std::string& format) {
  const CirculationMatrix b(io::to_integer_matrix(load_matrix(path, format)));
  const auto parts = decompose_circulation(b);
  if (g.json) {
    emit_json({{"weight", b.weight()}, {"parts", io::to_json(parts)}});
    return kOk;
  }
  if (g.csv) {
    std::string s = "part,row,col\n";
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (std::size_t i = 0; i < parts[p].support.size(); ++i)
        s += std::to_string(p + 1) + "," + std::to_string(parts[p].support[i] + 1) + "," +
             std::to_string(parts[p].map[i] + 1) + "\n";
    out(s);
    return kOk;
  }
  std::string s = "weight " + std::to_string(b.weight()) + ", " + std::to_string(parts.size()) + " parts\n";
  for (std::size_t p = 0; p < parts.size(); ++p) {
    s += "  " + std::to_string(p + 1) + ":";
    for (std::size_t i = 0; i < parts[p].support.size(); ++i)
      s += " " + std::to_string(parts[p].support[i] + 1) + "->" + std::to_string(parts[p].map[i] + 1);
    s += "\n";
  }
  out(s);
  return kOk;
}

void quiet_sink(const char*) {}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical roots, tropical eigenvalues and eigenvalue bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", g.tol, "Relative tolerance for inequality verdicts")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  auto* json_flag = app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output")->excludes(json_flag);
  app.add_flag("--quiet", g.quiet, "Suppress normal output");

  std::string file, format, method = "coeff", range, suite;
  bool max_plus = false, hop = false, lower = false;
  int instances = 100, nmax = 0;

  auto* troots = app.add_subcommand("troots", "Tropical roots of a polynomial");
  troots->add_option("polyfile", file, "JSON array of coefficients, index 0 first")->required();
  troots->add_flag("--max-plus", max_plus, "Coefficients are max-plus values (numbers or \"-inf\")");
  troots->add_flag("--hop", hop, "Append the Hadamard-Ostrowski-Polya check");

  auto* teig = app.add_subcommand("teig", "Tropical eigenvalues of a matrix");
  teig->add_option("matrixfile", file)->required();
  teig->add_option("--format", format, "json, csv or coo (default: from the extension)");
  teig->add_option("--method", method)->check(CLI::IsMember({"coeff", "eval", "both"}));

  auto* bounds = app.add_subcommand("bounds", "Eigenvalue bounds report");
  bounds->add_option("matrixfile", file)->required();
  bounds->add_option("--format", format, "json, csv or coo (default: from the extension)");
  bounds->add_option("--k-range", range, "K or K1:K2");
  bounds->add_flag("--lower", lower, "Check the lower bound hypotheses");

  auto* verify = app.add_subcommand("verify", "Randomized property sweeps");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--instances", instances)->check(CLI::NonNegativeNumber);
  verify->add_option("--nmax", nmax, "Largest dimension or degree")->check(CLI::PositiveNumber);

  auto* companion_cmd = app.add_subcommand("companion", "Companion-matrix constants against Polya's");
  companion_cmd->add_option("polyfile", file)->required();
  companion_cmd->add_flag("--max-plus", max_plus);

  auto* decompose = app.add_subcommand("decompose", "Decompose an integer circulation matrix");
  decompose->add_option("matrixfile", file)->required();
  decompose->add_option("--format", format, "json, csv or coo (default: from the extension)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  if (g.quiet) set_warning_sink(quiet_sink);

  try {
    if (*troots) return cmd_troots(file, max_plus, hop);
    if (*teig) return cmd_teig(file, format, method);
    if (*bounds) return cmd_bounds(file, format, range, lower);
    if (*verify) return cmd_verify(suite, instances, nmax);
    if (*companion_cmd) return cmd_companion(file, max_plus);
    if (*decompose) return cmd_decompose(file, format);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
