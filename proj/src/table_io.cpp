// Copyright 2026 The yulelab Authors
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

#include "yulelab/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "yulelab/error.hpp"

namespace yulelab {
namespace {

std::string CsvField(const TableCell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (const char c : v) {
            if (c == '"') quoted += '"';
            quoted += c;
          }
          return quoted + "\"";
        } else if constexpr (std::is_same_v<V, double>) {
          return FormatDouble(v);
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::AddRow(std::vector<TableCell> row) {
  Require(row.size() == columns_.size(), "table row width mismatch",
          ErrorCode::kInternal);
  rows_.push_back(std::move(row));
}

std::string Table::ToCsv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += CsvField(columns_[c]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += CsvField(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::ToJson() const {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { object[columns_[c]] = v; }, row[c]);
    }
    array.push_back(std::move(object));
  }
  return array.dump(1) + "\n";
}

void WriteTextFile(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  Require(!ec, "cannot create directory for " + path + ": " + ec.message(),
          ErrorCode::kIo);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(out), "cannot open " + path + " for writing",
          ErrorCode::kIo);
  out << content;
  out.close();
  Require(static_cast<bool>(out), "failed writing " + path, ErrorCode::kIo);
}

}  // namespace yulelab
