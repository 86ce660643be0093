#include "hmcglm/table.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hmcglm/errors.hpp"

namespace hmcglm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(field);
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size();
}

}  // namespace

DatasetConfig DatasetConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset config: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("dataset config " + path + ": " + e.what());
  }
  DatasetConfig cfg;
  for (const auto& col : doc.at("columns")) {
    ColumnSpec spec;
    spec.name = col.at("name").get<std::string>();
    const std::string type = col.at("type").get<std::string>();
    if (type == "numeric") {
      spec.type = ColumnType::Numeric;
    } else if (type == "factor") {
      spec.type = ColumnType::Factor;
      if (col.contains("levels"))
        spec.levels = col["levels"].get<std::vector<std::string>>();
    } else {
      throw DataError("dataset config " + path + ": unknown column type '" + type + "'");
    }
    cfg.columns.push_back(std::move(spec));
  }
  return cfg;
}

const DatasetConfig::ColumnSpec* DatasetConfig::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

DataTable DataTable::from_csv(const std::string& path, const DatasetConfig* config) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);

  std::vector<std::vector<std::string>> raw(header.size());
  Eigen::Index n = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) raw[c].push_back(fields[c]);
    ++n;
  }

  DataTable table;
  table.n_rows_ = n;
  for (std::size_t c = 0; c < header.size(); ++c) {
    Column col;
    col.name = header[c];
    const DatasetConfig::ColumnSpec* spec = config ? config->find(col.name) : nullptr;

    bool numeric;
    if (spec) {
      numeric = spec->type == ColumnType::Numeric;
    } else {
      double tmp;
      numeric = std::all_of(raw[c].begin(), raw[c].end(),
                            [&](const std::string& s) { return parse_double(s, tmp); });
    }

    if (numeric) {
      col.type = ColumnType::Numeric;
      col.numeric.resize(n);
      for (Eigen::Index r = 0; r < n; ++r) {
        double v;
        if (!parse_double(raw[c][r], v))
          throw DataError(path + ": column '" + col.name + "' row " + std::to_string(r + 1) +
                          ": cannot parse '" + raw[c][r] + "' as a number");
        col.numeric[r] = v;
      }
    } else {
      col.type = ColumnType::Factor;
      col.levels = spec ? spec->levels : std::vector<std::string>{};
      col.codes.reserve(n);
      for (Eigen::Index r = 0; r < n; ++r) {
        const std::string& v = raw[c][r];
        auto it = std::find(col.levels.begin(), col.levels.end(), v);
        if (it == col.levels.end()) {
          if (spec && !spec->levels.empty())
            throw DataError(path + ": column '" + col.name + "' row " + std::to_string(r + 1) +
                            ": value '" + v + "' not in declared levels");
          col.levels.push_back(v);  // level order = first appearance
          it = std::prev(col.levels.end());
        }
        col.codes.push_back(static_cast<int>(it - col.levels.begin()));
      }
    }
    table.columns_.push_back(std::move(col));
  }
  return table;
}

const Column& DataTable::column(const std::string& name) const {
  for (const auto& c : columns_)
    if (c.name == name) return c;
  throw DataError("unknown column: " + name);
}

bool DataTable::has_column(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const Column& c) { return c.name == name; });
}

Eigen::VectorXd DataTable::numeric_values(const std::string& name) const {
  const Column& c = column(name);
  if (c.type == ColumnType::Numeric) return c.numeric;
  Eigen::VectorXd v(static_cast<Eigen::Index>(c.codes.size()));
  for (std::size_t i = 0; i < c.codes.size(); ++i) v[static_cast<Eigen::Index>(i)] = c.codes[i];
  return v;
}

}  // namespace hmcglm
