// Copyright 2026 The fqp Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fqp {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);
/// ".csv" or ".json"
std::string_view file_extension(OutputFormat format);

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-ordered result table; the common currency of every writer.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table&) const = default;
};

/// 17 significant digits ("%.17g"); round-trips every double.
std::string format_double(double value);

/// Header line plus one line per row, comma separated, LF endings. Strings
/// are written verbatim and must not contain commas, quotes or newlines.
std::string to_csv(const Table& table);

/// Array of objects, keys in column order, two-space indent, trailing LF.
std::string to_json_text(const Table& table);
/// Inverse of to_json_text. Integers stay integers, other numbers become
/// doubles, strings stay strings.
Table table_from_json_text(std::string_view text);

/// Writes the table to `path`, creating parent directories. Throws
/// std::runtime_error naming the path on I/O failure.
void emit_table(const Table& table, const std::filesystem::path& path,
                OutputFormat format);

}  // namespace fqp
