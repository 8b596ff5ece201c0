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

// Column tables emitted as CSV or as a JSON array of row objects. Numbers
// are printed with round-trip precision so output bytes depend only on the
// values.

#ifndef YULELAB_TABLE_IO_HPP_
#define YULELAB_TABLE_IO_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace yulelab {

using TableCell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

std::string FormatDouble(double value);

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t num_rows() const { return rows_.size(); }

  // Throws kInternal when the row width does not match the header.
  void AddRow(std::vector<TableCell> row);

  std::string ToCsv() const;
  std::string ToJson() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<TableCell>> rows_;
};

// Creates parent directories as needed. Throws kIo on failure.
void WriteTextFile(const std::string& path, const std::string& content);

}  // namespace yulelab

#endif  // YULELAB_TABLE_IO_HPP_
