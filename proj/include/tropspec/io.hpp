#pragma once

// Reading matrices and polynomials from files, and writing reports as JSON
// or CSV. In JSON, -inf is the string "-inf" and a complex entry is [re, im].

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tropspec/assignment.hpp"
#include "tropspec/bounds.hpp"
#include "tropspec/matrix.hpp"
#include "tropspec/trop_poly.hpp"
#include "tropspec/trop_spectra.hpp"

namespace tropspec::io {

using nlohmann::json;

enum class MatrixFormat { JsonDense, CsvDense, Coordinate };

/// From a file extension: .json, .csv, anything else is coordinate form.
MatrixFormat format_from_path(const std::string& path);
/// "json", "csv", "coo" (or "coordinate").
MatrixFormat parse_format_name(const std::string& name);

ComplexMatrix parse_matrix(const std::string& text, MatrixFormat format);
ComplexMatrix read_matrix(const std::string& path, MatrixFormat format);
ComplexMatrix read_matrix(const std::string& path);

/// Nonnegative integer matrix (for circulations); entries must be integral.
SquareMatrix<std::int64_t> to_integer_matrix(const ComplexMatrix& a);

/// "3", "-2.5", "1+2i", "1e-3-4i", "i", "-2i".
Complex parse_complex(const std::string& token);

/// JSON array of coefficients, index 0 first: numbers or [re, im] pairs.
std::vector<Complex> parse_polynomial(const std::string& text);
/// JSON array of max-plus coefficients: numbers or "-inf".
std::vector<double> parse_log_polynomial(const std::string& text);
std::string read_file(const std::string& path);

/// Numbers with -inf, inf and nan encoded as strings.
json number(double x);
double to_number(const json& j);
json complex_value(const Complex& z);
Complex to_complex_value(const json& j);

json to_json(const ComplexMatrix& a);
json to_json(const NewtonPolygon& p);
json to_json(const RootMultiset& r);
json to_json(const TropicalSpectrum& s);
json to_json(const BoundReport& r);
json to_json(const HopReport& r);
json to_json(const std::vector<CompanionRow>& rows);
json to_json(const std::vector<PartialPermutation>& parts);

BoundReport bound_report_from_json(const json& j);

/// One row per k with the stable field names; numbers in %.17g.
std::string to_csv(const BoundReport& r);
std::string to_csv(const HopReport& r);
std::string to_csv(const std::vector<CompanionRow>& rows);

/// %.17g
std::string machine(double x);

}  // namespace tropspec::io
