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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fqp {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table sample_table() {
  Table t;
  t.columns = {"name", "count", "value"};
  t.rows.push_back({std::string("fourier"), std::int64_t{3}, 0.1});
  t.rows.push_back({std::string("stepwise"), std::int64_t{-7}, 1.0 / 3.0});
  return t;
}

TEST(FormatDouble, SeventeenSignificantDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    const std::string s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Csv, HeaderOnlyWhenEmpty) {
  Table t;
  t.columns = {"ansatz", "n_q", "theta_max", "n_samples", "grad_mean",
               "grad_var", "var_stderr"};
  EXPECT_EQ(to_csv(t),
            "ansatz,n_q,theta_max,n_samples,grad_mean,grad_var,var_stderr\n");
}

TEST(Csv, RowsUseLfAndFixedOrder) {
  EXPECT_EQ(to_csv(sample_table()),
            "name,count,value\n"
            "fourier,3,0.10000000000000001\n"
            "stepwise,-7,0.33333333333333331\n");
}

TEST(Csv, RaggedRowThrows) {
  Table t = sample_table();
  t.rows[0].pop_back();
  EXPECT_THROW(to_csv(t), std::invalid_argument);
}

TEST(Json, RoundTripIsExact) {
  const Table t = sample_table();
  EXPECT_EQ(table_from_json_text(to_json_text(t)), t);
}

TEST(Json, RejectsNonArray) {
  EXPECT_THROW(table_from_json_text("{\"a\": 1}"), std::invalid_argument);
}

TEST(Formats, NamesAndExtensions) {
  EXPECT_EQ(parse_output_format("csv"), OutputFormat::Csv);
  EXPECT_EQ(parse_output_format("json"), OutputFormat::Json);
  EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
  EXPECT_EQ(file_extension(OutputFormat::Json), ".json");
  EXPECT_EQ(to_string(OutputFormat::Csv), "csv");
}

TEST(Emit, WritesBytesAndCreatesDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "fqp_results_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "t.csv";
  emit_table(sample_table(), path, OutputFormat::Csv);
  EXPECT_EQ(slurp(path), to_csv(sample_table()));
  emit_table(sample_table(), dir / "t.json", OutputFormat::Json);
  EXPECT_EQ(table_from_json_text(slurp(dir / "t.json")), sample_table());
  std::filesystem::remove_all(dir);
}

TEST(Emit, UnwritablePathReportsPath) {
  const auto dir = std::filesystem::temp_directory_path() / "fqp_results_io_ro";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  // A directory cannot be opened as an output file.
  try {
    emit_table(sample_table(), dir, OutputFormat::Csv);
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(dir.string()), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace fqp
