// Copyright 2026 The thermodec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Rectangular result tables written as comma-separated text: optional
// leading "# key: value" metadata lines, then a mandatory header row, then
// data rows. Floats use 17 significant digits, lines end in LF, fields with
// commas, quotes or line breaks are quoted with doubled quotes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace thermodec {

// Empty, integer, float or text.
using Cell = std::variant<std::monostate, long long, double, std::string>;

std::string format_cell(const Cell& cell);

class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> headers);

  // DomainError when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  void add_metadata(std::string key, std::string value);

  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  void write_csv(std::ostream& out) const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace thermodec
