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
#include "thermodec/result_table.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "thermodec/errors.hpp"

namespace thermodec {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (std::isnan(v)) return "nan";
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      return fmt::format("{:.17g}", v);
    }
    std::string operator()(const std::string& v) const { return quote(v); }
  };
  return std::visit(Visitor{}, cell);
}

ResultTable::ResultTable(std::vector<std::string> headers) : headers_(std::move(headers)) {
  if (headers_.empty()) throw DomainError("a result table needs at least one column");
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != headers_.size()) {
    throw DomainError(fmt::format("row has {} cells, table has {} columns", row.size(),
                                  headers_.size()));
  }
  rows_.push_back(std::move(row));
}

void ResultTable::add_metadata(std::string key, std::string value) {
  if (key.find_first_of(":\r\n") != std::string::npos ||
      value.find_first_of("\r\n") != std::string::npos) {
    throw DomainError("metadata keys and values must be single-line");
  }
  metadata_.emplace_back(std::move(key), std::move(value));
}

void ResultTable::write_csv(std::ostream& out) const {
  for (const auto& [key, value] : metadata_) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < headers_.size(); ++i) {
    out << (i ? "," : "") << quote(headers_[i]);
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write_csv(out);
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace thermodec
