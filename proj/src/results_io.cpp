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

#include "fqp/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace fqp {

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") {
    return OutputFormat::Csv;
  }
  if (name == "json") {
    return OutputFormat::Json;
  }
  throw std::invalid_argument("unknown output format '" + std::string(name) +
                              "' (expected csv or json)");
}

std::string_view file_extension(OutputFormat format) {
  return format == OutputFormat::Csv ? ".csv" : ".json";
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string render(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    return std::to_string(*i);
  }
  if (const auto* d = std::get_if<double>(&cell)) {
    return format_double(*d);
  }
  return std::get<std::string>(cell);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += (c ? "," : "") + table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("to_csv: row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) {
        out += ',';
      }
      out += render(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json_text(const Table& table) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("to_json: row width does not match header");
    }
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

Table table_from_json_text(std::string_view text) {
  const auto doc = nlohmann::ordered_json::parse(text);
  if (!doc.is_array()) {
    throw std::invalid_argument("results JSON must be an array of objects");
  }
  Table table;
  for (const auto& obj : doc) {
    if (!obj.is_object()) {
      throw std::invalid_argument("results JSON must be an array of objects");
    }
    if (table.columns.empty()) {
      for (const auto& item : obj.items()) {
        table.columns.push_back(item.key());
      }
    }
    std::vector<Cell> row;
    for (const auto& name : table.columns) {
      const auto& v = obj.at(name);
      if (v.is_number_integer()) {
        row.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else if (v.is_string()) {
        row.emplace_back(v.get<std::string>());
      } else {
        throw std::invalid_argument("unsupported JSON value in column " +
                                    name);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void emit_table(const Table& table, const std::filesystem::path& path,
                OutputFormat format) {
  const std::string text =
      format == OutputFormat::Csv ? to_csv(table) : to_json_text(table);
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory " +
                               path.parent_path().string() + ": " +
                               ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace fqp
