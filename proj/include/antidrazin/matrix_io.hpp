#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "antidrazin/matrix.hpp"

namespace antidrazin {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepted JSON forms:
///   {"rows": r, "cols": c, "data": [[entry, ...], ...]}   entry = number or [re, im]
///   [[number, ...], ...]                                  bare real matrix
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Real-valued CSV, one row per line, comma-separated.
ComplexMatrix matrix_from_csv(std::istream& in);

/// Dispatches on extension: ".csv" reads CSV, everything else JSON.
ComplexMatrix read_matrix_file(const std::string& path);

/// Canonical JSON form, entries as [re, im] pairs.
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

}  // namespace antidrazin
