// Copyright 2026 The hrb Authors
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

#include "report.hpp"

#include <charconv>

#include <json.hpp>

namespace hrb::cli {

namespace {

std::string csv_text(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json json_value(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

}  // namespace

Cell cell(long v) { return static_cast<long long>(v); }
Cell cell(long long v) { return v; }
Cell cell(bool v) { return v; }
Cell cell(const char* v) { return std::string(v); }
Cell cell(std::string v) { return v; }
Cell cell(const Rational& v) { return v.to_string(); }
Cell cell(const Real& v) { return v.to_string(); }

Cell cell(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Report::real_column(std::string name) {
  columns_.push_back(name);
  if (hex_) columns_.push_back(name + "_hex");
}

void Report::put_real(const Real& v) {
  put(v.to_string());
  if (hex_) put(v.to_hex());
}

void Report::write(std::ostream& os, Format f) const {
  if (f == Format::json) {
    nlohmann::ordered_json root;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_) cfg[k] = json_value(v);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.size() && i < columns_.size(); ++i) obj[columns_[i]] = json_value(r[i]);
      rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json sum = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary_) sum[k] = json_value(v);
    root["config"] = std::move(cfg);
    root["rows"] = std::move(rows);
    root["summary"] = std::move(sum);
    os << root.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : config_) os << "# " << k << '=' << csv_text(v) << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_text(r[i]);
    os << '\n';
  }
  for (const auto& [k, v] : summary_) os << "# summary: " << k << '=' << csv_text(v) << '\n';
}

}  // namespace hrb::cli
