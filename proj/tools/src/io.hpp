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

// File formats of the command-line tool.
//
// Instances and run summaries are JSON documents carrying a top-level
// "schema_version"; per-generation tables are CSV files whose first line is
// "# movco-history v<N>". Readers reject versions they do not know.

#ifndef MOVCO_TOOLS_IO_HPP
#define MOVCO_TOOLS_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "movco/cmp.hpp"

namespace movco::tools {

using Json = nlohmann::ordered_json;

inline constexpr int kInstanceSchemaVersion = 1;
inline constexpr int kSummarySchemaVersion = 1;
inline constexpr int kHistorySchemaVersion = 1;
inline constexpr int kCompareSchemaVersion = 1;

/// File-system failure; carries the offending path in its message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json instance_to_json(const cmp::Instance& instance);
/// Throws InvalidArgument naming every missing or malformed field.
cmp::Instance instance_from_json(const Json& doc);

Json read_json(const std::filesystem::path& path);
/// Pretty-printed, newline-terminated, written atomically.
void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, std::string_view text);

cmp::Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const cmp::Instance& instance);

/// Instance files (*.json) of a directory, sorted by name.
std::vector<std::filesystem::path> list_instances(const std::filesystem::path& dir);

/// Shortest round-trip decimal form; NaN becomes the empty string.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);

/// Splits one CSV line on commas (no quoting is ever produced).
std::vector<std::string> split_csv(std::string_view line);

/// Reads a versioned table: returns the header and the data rows.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

Table read_history(const std::filesystem::path& path);

}  // namespace movco::tools

#endif  // MOVCO_TOOLS_IO_HPP
