#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "indexlab/errors.hpp"

namespace indexlab {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Rows of a results table; cells are JSON scalars.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row) {
    if (row.size() != columns.size()) throw ShapeError("table row has the wrong number of cells");
    rows.push_back(std::move(row));
  }
  Json to_json() const {
    Json j;
    j["columns"] = columns;
    j["rows"] = Json::array();
    for (const auto& r : rows) j["rows"].push_back(Json(r));
    return j;
  }
};

struct ExperimentReport {
  std::string experiment;
  Json params = Json::object();
  Json results = Json::object();
  Table table;
  std::vector<Check> checks;
  double seconds = 0;
  std::uint64_t seed = 0;

  void check(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += !c.pass;
    return n;
  }

  Json to_json(bool with_timing = true) const {
    Json j;
    j["experiment"] = experiment;
    j["params"] = params;
    Json res = results;
    res["table"] = table.to_json();
    j["results"] = std::move(res);
    j["checks"] = Json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    if (with_timing) j["timing"] = {{"seconds", seconds}};
    j["seed"] = seed;
    return j;
  }
};

namespace detail {

inline std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

inline std::string to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) out << (i ? "," : "") << detail::csv_cell(r.table.columns[i]);
  out << "\n";
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

inline std::string render(const ExperimentReport& r, const std::string& format) {
  if (format == "json") return r.to_json().dump(2) + "\n";
  if (format == "csv") return to_csv(r);
  throw UsageError("unknown format '" + format + "' (expected json or csv)");
}

/// Writes the report to `path`, or to stdout when the path is empty or "-".
inline void emit(const ExperimentReport& r, const std::string& format, const std::string& path) {
  const std::string text = render(r, format);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f.flush()) throw IoError("failed writing '" + path + "'");
}

}  // namespace indexlab
