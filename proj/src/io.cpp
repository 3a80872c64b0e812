#include "tropspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace tropspec::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "' (" + context + ")");
  }
  if (used != s.size()) throw ParseError("trailing characters in '" + s + "' (" + context + ")");
  return v;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw ParseError("matrix is empty");
  std::vector<Complex> data;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ParseError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  for (const Complex& z : data)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError("matrix entries must be finite");
  return ComplexMatrix(n, std::move(data));
}

ComplexMatrix parse_json_dense(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ParseError("JSON matrix must be an array of rows");
  std::vector<std::vector<Complex>> rows;
  for (const json& r : j) {
    if (!r.is_array()) throw ParseError("JSON matrix rows must be arrays");
    std::vector<Complex> row;
    for (const json& e : r) row.push_back(to_complex_value(e));
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

ComplexMatrix parse_csv_dense(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Complex>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<Complex> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cell = trim(cell);
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = trim(cell.substr(1, cell.size() - 2));
      row.push_back(parse_complex(cell));
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

ComplexMatrix parse_coordinate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long n = -1;
  int line_no = 0;
  std::map<std::pair<long, long>, Complex> entries;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    const std::string where = "line " + std::to_string(line_no);
    if (n < 0) {
      if (tok.size() != 1) throw ParseError("coordinate file must start with the dimension n (" + where + ")");
      const double v = parse_real(tok[0], where);
      if (v < 1 || v != std::floor(v)) throw ParseError("dimension must be a positive integer (" + where + ")");
      n = static_cast<long>(v);
      continue;
    }
    if (tok.size() != 3 && tok.size() != 4) throw ParseError("expected 'row col re [im]' (" + where + ")");
    const double r = parse_real(tok[0], where), c = parse_real(tok[1], where);
    if (r != std::floor(r) || c != std::floor(c) || r < 1 || c < 1 || r > n || c > n)
      throw ParseError("index out of range 1.." + std::to_string(n) + " (" + where + ")");
    const Complex z(parse_real(tok[2], where), tok.size() == 4 ? parse_real(tok[3], where) : 0.0);
    const auto key = std::make_pair(static_cast<long>(r), static_cast<long>(c));
    if (!entries.emplace(key, z).second)
      throw ParseError("duplicate coordinate (" + tok[0] + ", " + tok[1] + ") (" + where + ")");
  }
  if (n < 0) throw ParseError("coordinate file is empty");
  ComplexMatrix a(static_cast<std::size_t>(n));
  for (const auto& [key, z] : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError("matrix entries must be finite");
    a(key.first - 1, key.second - 1) = z;
  }
  return a;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

}  // namespace

MatrixFormat format_from_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".json")) return MatrixFormat::JsonDense;
  if (ends_with(".csv")) return MatrixFormat::CsvDense;
  return MatrixFormat::Coordinate;
}

MatrixFormat parse_format_name(const std::string& name) {
  if (name == "json" || name == "json-dense") return MatrixFormat::JsonDense;
  if (name == "csv" || name == "csv-dense") return MatrixFormat::CsvDense;
  if (name == "coo" || name == "coordinate") return MatrixFormat::Coordinate;
  throw ParseError("unknown matrix format '" + name + "'");
}

ComplexMatrix parse_matrix(const std::string& text, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::JsonDense:
      return parse_json_dense(text);
    case MatrixFormat::CsvDense:
      return parse_csv_dense(text);
    case MatrixFormat::Coordinate:
      return parse_coordinate(text);
  }
  throw ParseError("unknown matrix format");
}

ComplexMatrix read_matrix(const std::string& path, MatrixFormat format) { return parse_matrix(read_file(path), format); }

ComplexMatrix read_matrix(const std::string& path) { return read_matrix(path, format_from_path(path)); }

SquareMatrix<std::int64_t> to_integer_matrix(const ComplexMatrix& a) {
  SquareMatrix<std::int64_t> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Complex z = a(i, j);
      if (z.imag() != 0.0 || z.real() != std::floor(z.real()) || std::abs(z.real()) > 1e15)
        throw ParseError("entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") is not an integer");
      b(i, j) = static_cast<std::int64_t>(z.real());
    }
  return b;
}

Complex parse_complex(const std::string& token) {
  std::string s = trim(token);
  if (s.empty()) throw ParseError("empty matrix entry");
  if (s.back() != 'i' && s.back() != 'j') return parse_real(s, "real entry");
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;)
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  auto imag_part = [](std::string t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, "imaginary part");
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split), "real part"), imag_part(s.substr(split))};
}

std::vector<Complex> parse_polynomial(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array of coefficients");
  std::vector<Complex> out;
  for (const json& e : j) out.push_back(to_complex_value(e));
  for (const Complex& z : out)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError("coefficients must be finite");
  return out;
}

std::vector<double> parse_log_polynomial(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array of coefficients");
  std::vector<double> out;
  for (const json& e : j) {
    const double v = to_number(e);
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw ParseError("max-plus coefficients must be finite or \"-inf\"");
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (x == kNegInf) return "-inf";
  if (x == std::numeric_limits<double>::infinity()) return "inf";
  return x;
}

double to_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "-inf") return kNegInf;
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number, got " + j.dump());
}

json complex_value(const Complex& z) { return json::array({number(z.real()), number(z.imag())}); }

Complex to_complex_value(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError("complex entries must be [re, im] pairs, got " + j.dump());
    return {to_number(j[0]), to_number(j[1])};
  }
  if (j.is_string()) return parse_complex(j.get<std::string>());
  return to_number(j);
}

json to_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (const Complex& z : a.row(i)) row.push_back(complex_value(z));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const NewtonPolygon& p) {
  json vertices = json::array();
  for (const HullVertex& v : p.vertices) vertices.push_back({{"index", v.index}, {"value", number(v.value)}});
  json concav = json::array();
  for (double v : p.concavified) concav.push_back(number(v));
  return {{"vertices", vertices}, {"concavified", concav}, {"saturated", p.saturated}};
}

json to_json(const RootMultiset& r) {
  json out = json::array();
  for (const TropicalRoot& t : r.entries())
    out.push_back({{"log_value", number(t.value)},
                   {"value", number(t.value == kNegInf ? 0.0 : std::exp(t.value))},
                   {"multiplicity", t.multiplicity}});
  return out;
}

json to_json(const TropicalSpectrum& s) {
  json gammas = json::array();
  for (double g : s.values()) gammas.push_back(number(g));
  json coeffs = json::array();
  for (double c : s.charpoly.coeffs()) coeffs.push_back(number(c));
  json out{{"roots", to_json(s.gammas)}, {"gammas", gammas}, {"charpoly_concavified_log", coeffs}};
  out["saturated"] = s.saturated ? json(*s.saturated) : json(nullptr);
  return out;
}

json to_json(const BoundReport& r) {
  json rows = json::array();
  for (const BoundRow& row : r.rows)
    rows.push_back({{"k", row.k},
                    {"eig_prefix", number(row.eig_prefix)},
                    {"trop_prefix", number(row.trop_prefix)},
                    {"upper_constant", number(row.upper_constant)},
                    {"ratio", number(row.ratio)},
                    {"upper_holds", row.upper_holds},
                    {"lower_constant", optional_number(row.lower_constant)},
                    {"lower_holds", row.lower_holds ? json(*row.lower_holds) : json(nullptr)},
                    {"diagnostics", row.diagnostics}});
  return {{"n", r.n},
          {"rows", rows},
          {"notes", r.notes},
          {"provenance",
           {{"input_hash", r.provenance.input_hash},
            {"tolerance", number(r.provenance.tolerance)},
            {"saturation_tolerance", number(r.provenance.saturation_tolerance)},
            {"seed", r.provenance.seed}}}};
}

BoundReport bound_report_from_json(const json& j) {
  try {
    BoundReport r;
    r.n = j.at("n").get<int>();
    for (const json& row : j.at("rows")) {
      BoundRow b;
      b.k = row.at("k").get<int>();
      b.eig_prefix = to_number(row.at("eig_prefix"));
      b.trop_prefix = to_number(row.at("trop_prefix"));
      b.upper_constant = to_number(row.at("upper_constant"));
      b.ratio = to_number(row.at("ratio"));
      b.upper_holds = row.at("upper_holds").get<bool>();
      if (!row.at("lower_constant").is_null()) b.lower_constant = to_number(row.at("lower_constant"));
      if (!row.at("lower_holds").is_null()) b.lower_holds = row.at("lower_holds").get<bool>();
      b.diagnostics = row.at("diagnostics").get<std::vector<std::string>>();
      r.rows.push_back(std::move(b));
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    const json& p = j.at("provenance");
    r.provenance.input_hash = p.at("input_hash").get<std::string>();
    r.provenance.tolerance = to_number(p.at("tolerance"));
    r.provenance.saturation_tolerance = to_number(p.at("saturation_tolerance"));
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed bound report: ") + e.what());
  }
}

json to_json(const HopReport& r) {
  json roots = json::array();
  for (const Complex& z : r.roots) roots.push_back(complex_value(z));
  json trop = json::array();
  for (double a : r.trop_roots) trop.push_back(number(a));
  json rows = json::array();
  for (const HopRow& h : r.rows)
    rows.push_back({{"k", h.k},
                    {"root_prefix", number(h.root_prefix)},
                    {"trop_prefix", number(h.trop_prefix)},
                    {"ratio", number(h.ratio)},
                    {"lower_constant", number(h.lower_constant)},
                    {"upper_constant", number(h.upper_constant)},
                    {"weak_constant", number(h.weak_constant)},
                    {"hadamard_constant", number(h.hadamard_constant)},
                    {"lower_holds", h.lower_holds},
                    {"upper_holds", h.upper_holds}});
  return {{"n", r.n}, {"roots", roots}, {"trop_roots", trop}, {"rows", rows}};
}

json to_json(const std::vector<CompanionRow>& rows) {
  json out = json::array();
  for (const CompanionRow& c : rows)
    out.push_back({{"k", c.k},
                   {"ratio", number(c.ratio)},
                   {"exact_constant", number(c.exact_constant)},
                   {"explicit_constant", number(c.explicit_constant)},
                   {"polya_constant", number(c.polya_constant)},
                   {"holds", c.holds}});
  return out;
}

json to_json(const std::vector<PartialPermutation>& parts) {
  json out = json::array();
  for (const PartialPermutation& p : parts) {
    json support = json::array(), image = json::array();
    for (int s : p.support) support.push_back(s + 1);
    for (int m : p.map) image.push_back(m + 1);
    out.push_back({{"support", support}, {"map", image}});
  }
  return out;
}

std::string machine(double x) {
  if (x == kNegInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const BoundReport& r) {
  std::string out = "k,eig_prefix,trop_prefix,upper_constant,ratio,upper_holds,lower_constant,lower_holds,diagnostics\n";
  for (const BoundRow& b : r.rows) {
    out += std::to_string(b.k) + "," + machine(b.eig_prefix) + "," + machine(b.trop_prefix) + "," +
           machine(b.upper_constant) + "," + machine(b.ratio) + "," + (b.upper_holds ? "true" : "false") + "," +
           (b.lower_constant ? machine(*b.lower_constant) : "") + "," +
           (b.lower_holds ? (*b.lower_holds ? "true" : "false") : "") + "," + csv_quote(join(b.diagnostics, "; ")) +
           "\n";
  }
  return out;
}

std::string to_csv(const HopReport& r) {
  std::string out =
      "k,root_prefix,trop_prefix,ratio,lower_constant,upper_constant,weak_constant,hadamard_constant,lower_holds,"
      "upper_holds\n";
  for (const HopRow& h : r.rows)
    out += std::to_string(h.k) + "," + machine(h.root_prefix) + "," + machine(h.trop_prefix) + "," +
           machine(h.ratio) + "," + machine(h.lower_constant) + "," + machine(h.upper_constant) + "," +
           machine(h.weak_constant) + "," + machine(h.hadamard_constant) + "," + (h.lower_holds ? "true" : "false") +
           "," + (h.upper_holds ? "true" : "false") + "\n";
  return out;
}

std::string to_csv(const std::vector<CompanionRow>& rows) {
  std::string out = "k,ratio,exact_constant,explicit_constant,polya_constant,holds\n";
  for (const CompanionRow& c : rows)
    out += std::to_string(c.k) + "," + machine(c.ratio) + "," + machine(c.exact_constant) + "," +
           machine(c.explicit_constant) + "," + machine(c.polya_constant) + "," + (c.holds ? "true" : "false") + "\n";
  return out;
}

}  // namespace tropspec::io
