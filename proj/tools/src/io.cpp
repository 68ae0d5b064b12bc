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

#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "movco/error.hpp"

namespace movco::tools {

namespace fs = std::filesystem;

Json instance_to_json(const cmp::Instance& instance) {
  Json doc;
  doc["schema_version"] = kInstanceSchemaVersion;
  doc["C"] = instance.cash_points;
  doc["D"] = instance.days;
  doc["h"] = instance.levels;
  doc["k0"] = instance.first_day_price;
  doc["k"] = instance.price;
  Json p = Json::array();
  for (int c = 0; c < instance.cash_points; ++c) {
    Json row = Json::array();
    for (int t = 0; t < instance.days; ++t) {
      row.push_back(instance.predicted(c, t));
    }
    p.push_back(std::move(row));
  }
  doc["p"] = std::move(p);
  doc["v_f"] = instance.final_cash_limit;
  doc["l"] = instance.daily_transaction_limit;
  doc["seed"] = instance.seed;
  if (instance.satisfiability_cap) {
    doc["satisfiability_cap"] = *instance.satisfiability_cap;
  }
  return doc;
}

namespace {

template <class T>
void read_field(const Json& doc, const char* name, T& out, std::string& problems) {
  auto note = [&](const std::string& what) {
    problems += problems.empty() ? what : "; " + what;
  };
  if (!doc.contains(name)) {
    note(std::string("missing field '") + name + "'");
    return;
  }
  try {
    out = doc.at(name).get<T>();
  } catch (const Json::exception&) {
    note(std::string("malformed field '") + name + "'");
  }
}

}  // namespace

cmp::Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw InvalidArgument("instance document must be a JSON object");
  }
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw InvalidArgument("instance document has no schema_version");
  }
  const int version = doc["schema_version"].get<int>();
  if (version != kInstanceSchemaVersion) {
    throw InvalidArgument("unsupported instance schema_version " + std::to_string(version));
  }
  std::string problems;
  cmp::Instance inst;
  std::vector<std::vector<int>> p;
  read_field(doc, "C", inst.cash_points, problems);
  read_field(doc, "D", inst.days, problems);
  read_field(doc, "h", inst.levels, problems);
  read_field(doc, "k0", inst.first_day_price, problems);
  read_field(doc, "k", inst.price, problems);
  read_field(doc, "p", p, problems);
  read_field(doc, "v_f", inst.final_cash_limit, problems);
  read_field(doc, "l", inst.daily_transaction_limit, problems);
  read_field(doc, "seed", inst.seed, problems);
  if (doc.contains("satisfiability_cap") && !doc["satisfiability_cap"].is_null()) {
    int cap = 0;
    read_field(doc, "satisfiability_cap", cap, problems);
    inst.satisfiability_cap = cap;
  }
  if (problems.empty()) {
    if (static_cast<int>(p.size()) != inst.cash_points) {
      problems = "'p' must have C rows";
    } else {
      for (const auto& row : p) {
        if (static_cast<int>(row.size()) != inst.days) {
          problems = "every row of 'p' must have D entries";
          break;
        }
        inst.prediction.insert(inst.prediction.end(), row.begin(), row.end());
      }
    }
  }
  if (!problems.empty()) {
    throw InvalidArgument("invalid instance document: " + problems);
  }
  cmp::validate(inst);
  return inst;
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                    ec.message());
    }
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + tmp.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void write_json(const fs::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

cmp::Instance read_instance(const fs::path& path) {
  try {
    return instance_from_json(read_json(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_instance(const fs::path& path, const cmp::Instance& instance) {
  write_json(path, instance_to_json(instance));
}

std::vector<fs::path> list_instances(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) {
    return {};
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw InvalidArgument("table has no column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

Table read_history(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::string line;
  const std::string prefix = "# movco-history v";
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
    throw InvalidArgument(path.string() + ": missing history version line");
  }
  if (line.substr(prefix.size()) != std::to_string(kHistorySchemaVersion)) {
    throw InvalidArgument(path.string() + ": unsupported history version '" +
                          line.substr(prefix.size()) + "'");
  }
  Table table;
  if (!std::getline(in, line)) {
    throw InvalidArgument(path.string() + ": missing header row");
  }
  table.header = split_csv(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_csv(line);
    if (row.size() != table.header.size()) {
      throw InvalidArgument(path.string() + ": row width differs from header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace movco::tools
