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

#pragma once

// File-format helpers for the command-line front ends: key = value configs
// (flat or sectioned), full-precision CSV emission, and gate-sequence JSON.
// Config frequencies are written in Hz and multiplied by 2 pi on the typed
// reads, so everything behind this layer stays in rad/s.

#include <string>
#include <utility>
#include <vector>

#include "spincool/hamiltonian.hpp"
#include "spincool/singlet.hpp"

namespace spincool {

// Parsed key = value assignments in file order. '#' and ';' start comments,
// also inline; keys are case-sensitive and a repeated key is an error.
struct ConfigMap {
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const;
  // Raw text; throws std::invalid_argument naming the key when absent.
  const std::string& get(const std::string& key) const;

  // Plain numbers (counts, fields in tesla, times in seconds).
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  // Frequencies and rates: Hz in the file, rad/s out.
  double rate(const std::string& key) const;
  double rate_or(const std::string& key, double fallback_rad) const;
  bool flag_or(const std::string& key, bool fallback) const;

  // Keys not in the allowed list, in file order; the front ends treat a
  // nonempty result as a config error so typos cannot pass silently.
  std::vector<std::string> unknown_keys(
      const std::vector<std::string>& allowed) const;
};

ConfigMap parse_config(const std::string& text);
ConfigMap read_config(const std::string& path);  // throws on unreadable file

struct ConfigSection {
  std::string name;
  ConfigMap map;
};

// Sectioned variant: "[name]" headers, assignments below each. Assignments
// before the first header are an error, as are repeated section names.
std::vector<ConfigSection> parse_sections(const std::string& text);
std::vector<ConfigSection> read_sections(const std::string& path);

// PhysicalParams from the flat schema. Keys mirror the struct's field names
// (omega_c, omega_1, omega_2, a, nu_1, nu_2, N, Omega, delta, gamma_c,
// gamma_b, gamma_op, tau0_override); every frequency is in Hz, tau0_override
// in seconds. Missing keys keep the struct's zero defaults; gamma_op and
// tau0_override stay unset when absent. Unknown keys are the caller's
// concern (unknown_keys), since run configs carry sweep keys on top.
PhysicalParams params_from_config(const ConfigMap& c);

// 17 significant digits, scientific; round trips a double exactly, so two
// runs of the same pipeline diff clean.
std::string format_full(double v);

// CSV with '#' comment lines above a plain header row. Every push must
// match the column count.
class CsvFile {
 public:
  explicit CsvFile(std::vector<std::string> columns);
  void comment(const std::string& line);
  void push(const std::vector<std::string>& cells);
  void push_numbers(const std::vector<double>& cells);
  std::string serialize() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

// Matrix CSV: header row carries the column axis, then each row leads with
// its row-axis value. The first header cell names the row axis.
std::string serialize_matrix_csv(const std::string& row_label,
                                 const std::string& col_label,
                                 const VectorXd& row_axis,
                                 const VectorXd& col_axis,
                                 const Eigen::MatrixXd& values,
                                 const std::vector<std::string>& comments);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Gate sequences as JSON: model tag, basis descriptor, and the step list
// in application order.
std::string sequence_to_json(const GateSequence& seq, const LadderBasis& b);

struct ParsedSequence {
  GateSequence seq;
  double i1 = 0.0;
  double i2 = 0.0;
};
ParsedSequence sequence_from_json(const std::string& text);

}  // namespace spincool
