#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "acfam/family.hpp"

namespace acfam {

namespace io {

using json = nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw ParseError(where + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_string()) throw ParseError(where + ": scalars must be strings");
      m(r, c) = parse_scalar(row[c].get<std::string>());
    }
  }
  return m;
}

/// One matrix on one line: [["1","0"],["0","-1"]].
inline std::string compact_matrix(const Matrix& m) { return matrix_to_json(m).dump(); }

inline std::size_t require_count(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("missing or invalid \"") + key + "\"");
  return j[key].get<std::size_t>();
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io

/// Serialises a family in the acfam-v1 layout: fixed key order, two-space
/// indent, one matrix per line. Output is a pure function of the family, so
/// parse followed by serialise reproduces a canonical file byte for byte.
inline std::string serialize_family(const MatrixFamily& fam) {
  std::string out = "{\n";
  out += "  \"format\": \"acfam-v1\",\n";
  out += "  \"n\": " + std::to_string(fam.n()) + ",\n";
  out += "  \"label\": " + io::json(fam.label()).dump() + ",\n";
  if (fam.empty()) {
    out += "  \"matrices\": []\n";
  } else {
    out += "  \"matrices\": [\n";
    for (std::size_t i = 0; i < fam.size(); ++i) {
      out += "    " + io::compact_matrix(fam[i]);
      out += i + 1 < fam.size() ? ",\n" : "\n";
    }
    out += "  ]\n";
  }
  out += "}\n";
  return out;
}

inline MatrixFamily family_from_json(const io::json& j) {
  if (!j.is_object()) throw ParseError("family file must be a JSON object");
  if (!j.contains("format") || j["format"] != "acfam-v1") throw ParseError("format must be \"acfam-v1\"");
  const std::size_t n = io::require_count(j, "n");
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("label must be a string");
    label = j["label"].get<std::string>();
  }
  if (!j.contains("matrices") || !j["matrices"].is_array()) throw ParseError("missing \"matrices\" array");
  std::vector<Matrix> members;
  for (std::size_t i = 0; i < j["matrices"].size(); ++i)
    members.push_back(io::matrix_from_json(j["matrices"][i], n, n, "matrix " + std::to_string(i)));
  return {n, std::move(members), std::move(label)};
}

inline MatrixFamily parse_family(const std::string& text) { return family_from_json(io::parse_json_text(text)); }

inline MatrixFamily load_family(const std::string& path) { return parse_family(io::read_file(path)); }

}  // namespace acfam
