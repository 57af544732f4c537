#include "antidrazin/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace antidrazin {

namespace {

Complex entry_from_json(const nlohmann::json& e) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return Complex(e[0].get<double>(), e[1].get<double>());
  }
  throw ParseError("matrix entry must be a number or an [re, im] pair");
}

ComplexMatrix rows_from_json(const nlohmann::json& data, std::size_t rows, std::size_t cols) {
  if (!data.is_array() || data.size() != rows) {
    throw ParseError("\"data\" must be an array of " + std::to_string(rows) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& row : data) {
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("each row must hold exactly " + std::to_string(cols) + " entries");
    }
    for (const auto& e : row) entries.push_back(entry_from_json(e));
  }
  try {
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const NumericError& err) {
    throw ParseError(err.what());
  }
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    // Bare array-of-arrays: a plain real matrix.
    const std::size_t rows = j.size();
    if (rows == 0 || !j[0].is_array() || j[0].empty()) {
      throw ParseError("bare matrix must be a nonempty array of nonempty rows");
    }
    const std::size_t cols = j[0].size();
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != cols) throw ParseError("ragged rows in bare matrix");
      for (const auto& e : row) {
        if (!e.is_number()) throw ParseError("bare matrix entries must be plain numbers");
      }
    }
    return rows_from_json(j, rows, cols);
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ParseError("expected {\"rows\", \"cols\", \"data\"} or a bare array of rows");
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw ParseError("\"rows\" and \"cols\" must be nonnegative integers");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  if (rows == 0 || cols == 0) throw ParseError("matrix must be nonempty");
  return rows_from_json(j["data"], rows, cols);
}

ComplexMatrix matrix_from_csv(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Complex> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
          throw ParseError("trailing characters in CSV cell: '" + cell + "'");
        }
        row.emplace_back(v, 0.0);
      } catch (const std::invalid_argument&) {
        throw ParseError("CSV cell is not a number: '" + cell + "'");
      } catch (const std::out_of_range&) {
        throw ParseError("CSV cell out of range: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("CSV rows have inconsistent lengths");
    }
    if (row.empty()) throw ParseError("empty CSV row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("CSV file holds no rows");
  std::vector<Complex> entries;
  entries.reserve(rows.size() * rows.front().size());
  for (auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
  return ComplexMatrix(rows.size(), rows.front().size(), std::move(entries));
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return matrix_from_csv(in);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << matrix_to_json(m).dump(1) << "\n";
}

}  // namespace antidrazin
