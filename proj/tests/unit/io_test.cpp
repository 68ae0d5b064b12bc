// Copyright 2026 The MOVCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "io.hpp"

namespace movco::tools {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("movco_io_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(InstanceJson, RoundTrip) {
  cmp::Instance inst = testing::worked_instance();
  inst.seed = 1234567890123ULL;
  EXPECT_EQ(instance_from_json(instance_to_json(inst)), inst);
  inst.satisfiability_cap = 4;
  const Json doc = instance_to_json(inst);
  EXPECT_EQ(doc["schema_version"], kInstanceSchemaVersion);
  EXPECT_EQ(instance_from_json(doc), inst);
}

TEST(InstanceJson, RejectsBadDocuments) {
  Json doc = instance_to_json(testing::worked_instance());
  doc["schema_version"] = 99;
  EXPECT_THROW(instance_from_json(doc), InvalidArgument);
  doc = instance_to_json(testing::worked_instance());
  doc.erase("schema_version");
  EXPECT_THROW(instance_from_json(doc), InvalidArgument);
  doc = instance_to_json(testing::worked_instance());
  doc["k"] = Json::array({5, 5});  // not below k0
  EXPECT_THROW(instance_from_json(doc), InvalidArgument);
  EXPECT_THROW(instance_from_json(Json::array()), InvalidArgument);
}

TEST(Files, WriteReadAndList) {
  const fs::path dir = scratch("files");
  write_instance(dir / "b.json", testing::worked_instance());
  write_instance(dir / "a.json", testing::tiny_instance(1));
  write_text(dir / "notes.txt", "x");
  const auto files = list_instances(dir);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "a.json");
  EXPECT_EQ(read_instance(files[1]), testing::worked_instance());
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_NE(e.path().extension(), ".tmp");
  EXPECT_THROW(read_json(dir / "missing.json"), IoError);
  EXPECT_THROW(list_instances(dir / "missing"), IoError);
  std::ofstream(dir / "broken.json") << "{not json";
  EXPECT_THROW(read_json(dir / "broken.json"), InvalidArgument);
  fs::remove_all(dir);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-16.0), "-16");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_optional(std::nullopt), "");
  EXPECT_EQ(format_optional(2.5), "2.5");
}

TEST(Csv, SplitKeepsEmptyCells) {
  EXPECT_EQ(split_csv("a,,b,"), (std::vector<std::string>{"a", "", "b", ""}));
  EXPECT_EQ(split_csv("x"), (std::vector<std::string>{"x"}));
}

TEST(History, VersionedTable) {
  const fs::path dir = scratch("history");
  write_text(dir / "ok.csv", "# movco-history v1\ngeneration,best_P\n0,0.5\n1,1\n");
  const Table t = read_history(dir / "ok.csv");
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][t.column("best_P")], "1");
  EXPECT_THROW(t.column("nope"), InvalidArgument);
  write_text(dir / "old.csv", "# movco-history v0\ngeneration\n");
  EXPECT_THROW(read_history(dir / "old.csv"), InvalidArgument);
  write_text(dir / "bare.csv", "generation\n0\n");
  EXPECT_THROW(read_history(dir / "bare.csv"), InvalidArgument);
  write_text(dir / "ragged.csv", "# movco-history v1\na,b\n1\n");
  EXPECT_THROW(read_history(dir / "ragged.csv"), InvalidArgument);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace movco::tools
