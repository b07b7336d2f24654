// Copyright 2026 Spincool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spincool/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spincool {

namespace {

std::string trim(const std::string& s) {
  size_t lo = 0;
  size_t hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

std::string strip_comment(const std::string& line) {
  const size_t cut = line.find_first_of("#;");
  return cut == std::string::npos ? line : line.substr(0, cut);
}

double parse_number(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw std::invalid_argument("config key '" + key +
                                "': cannot parse number from '" + text + "'");
  }
  return v;
}

// Shared line loop; on_section is null for the flat format.
void scan_lines(const std::string& text,
                const std::function<void(const std::string&)>& on_section,
                const std::function<void(const std::string&,
                                         const std::string&)>& on_entry) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty section name");
      }
      if (!on_section) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": section header in a flat config");
      }
      on_section(name);
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    }
    on_entry(key, value);
  }
}

}  // namespace

bool ConfigMap::has(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return true;
  }
  return false;
}

const std::string& ConfigMap::get(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  throw std::invalid_argument("config key '" + key + "' is missing");
}

double ConfigMap::number(const std::string& key) const {
  return parse_number(key, get(key));
}

double ConfigMap::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double ConfigMap::rate(const std::string& key) const {
  return kTwoPi * number(key);
}

double ConfigMap::rate_or(const std::string& key, double fallback_rad) const {
  return has(key) ? rate(key) : fallback_rad;
}

bool ConfigMap::flag_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = get(key);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + key +
                              "': cannot parse flag from '" + get(key) + "'");
}

std::vector<std::string> ConfigMap::unknown_keys(
    const std::vector<std::string>& allowed) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      out.push_back(k);
    }
  }
  return out;
}

ConfigMap parse_config(const std::string& text) {
  ConfigMap map;
  scan_lines(text, nullptr, [&map](const std::string& k, const std::string& v) {
    if (map.has(k)) {
      throw std::invalid_argument("config key '" + k + "' repeated");
    }
    map.entries.emplace_back(k, v);
  });
  return map;
}

ConfigMap read_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

std::vector<ConfigSection> parse_sections(const std::string& text) {
  std::vector<ConfigSection> sections;
  scan_lines(
      text,
      [&sections](const std::string& name) {
        for (const auto& s : sections) {
          if (s.name == name) {
            throw std::invalid_argument("config section '" + name +
                                        "' repeated");
          }
        }
        sections.push_back({name, {}});
      },
      [&sections](const std::string& k, const std::string& v) {
        if (sections.empty()) {
          throw std::invalid_argument("config entry '" + k +
                                      "' before any section header");
        }
        ConfigMap& map = sections.back().map;
        if (map.has(k)) {
          throw std::invalid_argument("config key '" + k + "' repeated in [" +
                                      sections.back().name + "]");
        }
        map.entries.emplace_back(k, v);
      });
  return sections;
}

std::vector<ConfigSection> read_sections(const std::string& path) {
  return parse_sections(read_text_file(path));
}

PhysicalParams params_from_config(const ConfigMap& c) {
  PhysicalParams p;
  p.omega_c = c.rate_or("omega_c", 0.0);
  p.omega_1 = c.rate_or("omega_1", 0.0);
  p.omega_2 = c.rate_or("omega_2", 0.0);
  p.a = c.rate_or("a", 0.0);
  p.nu_1 = c.rate_or("nu_1", 0.0);
  p.nu_2 = c.rate_or("nu_2", 0.0);
  p.N = c.number_or("N", 0.0);
  p.Omega = c.rate_or("Omega", 0.0);
  p.delta = c.rate_or("delta", 0.0);
  p.gamma_c = c.rate_or("gamma_c", 0.0);
  p.gamma_b = c.rate_or("gamma_b", 0.0);
  if (c.has("gamma_op")) p.gamma_op = c.rate("gamma_op");
  if (c.has("tau0_override")) p.tau0_override = c.number("tau0_override");
  return p;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

CsvFile::CsvFile(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) {
    throw std::invalid_argument("CsvFile: no columns");
  }
}

void CsvFile::comment(const std::string& line) { comments_.push_back(line); }

void CsvFile::push(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument(
        "CsvFile: row has " + std::to_string(cells.size()) + " cells, header " +
        std::to_string(columns_.size()));
  }
  rows_.push_back(cells);
}

void CsvFile::push_numbers(const std::vector<double>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double v : cells) text.push_back(format_full(v));
  push(text);
}

std::string CsvFile::serialize() const {
  std::string out;
  for (const auto& c : comments_) out += "# " + c + "\n";
  for (size_t i = 0; i < columns_.size(); ++i) {
    out += columns_[i];
    out += (i + 1 < columns_.size()) ? ',' : '\n';
  }
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  return out;
}

void CsvFile::write(const std::string& path) const {
  write_text_file(path, serialize());
}

std::string serialize_matrix_csv(const std::string& row_label,
                                 const std::string& col_label,
                                 const VectorXd& row_axis,
                                 const VectorXd& col_axis,
                                 const Eigen::MatrixXd& values,
                                 const std::vector<std::string>& comments) {
  if (values.rows() != row_axis.size() || values.cols() != col_axis.size()) {
    throw std::invalid_argument("serialize_matrix_csv: axis/matrix mismatch");
  }
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "# rows: " + row_label + "; columns: " + col_label + "\n";
  out += row_label;
  for (Eigen::Index j = 0; j < col_axis.size(); ++j) {
    out += ',' + format_full(col_axis[j]);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < row_axis.size(); ++i) {
    out += format_full(row_axis[i]);
    for (Eigen::Index j = 0; j < col_axis.size(); ++j) {
      out += ',' + format_full(values(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("short write to " + path);
  }
}

std::string sequence_to_json(const GateSequence& seq, const LadderBasis& b) {
  nlohmann::ordered_json j;
  j["model"] = seq.model == GateModel::exact ? "exact" : "simplified";
  j["basis"] = {{"i1", b.I1}, {"i2", b.I2}};
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : seq.steps) {
    j["steps"].push_back({{"phi", s.phi}, {"tau", s.tau}});
  }
  return j.dump(2) + "\n";
}

ParsedSequence sequence_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    ParsedSequence out;
    const std::string model = j.at("model").get<std::string>();
    if (model == "exact") {
      out.seq.model = GateModel::exact;
    } else if (model == "simplified") {
      out.seq.model = GateModel::simplified;
    } else {
      throw std::invalid_argument("sequence model '" + model +
                                  "' is neither exact nor simplified");
    }
    out.i1 = j.at("basis").at("i1").get<double>();
    out.i2 = j.at("basis").at("i2").get<double>();
    for (const auto& s : j.at("steps")) {
      out.seq.steps.push_back(
          {s.at("phi").get<double>(), s.at("tau").get<double>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sequence JSON: ") + e.what());
  }
}

}  // namespace spincool
