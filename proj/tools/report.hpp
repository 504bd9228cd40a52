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

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hrb/rational.hpp"
#include "hrb/real.hpp"

namespace hrb::cli {

enum class Format { csv, json };

// Integers and booleans are native JSON values; decimal text (reals,
// rationals) is emitted as a JSON string so no digits are lost.
using Cell = std::variant<long long, bool, std::string>;

Cell cell(long v);
Cell cell(long long v);
Cell cell(bool v);
Cell cell(const char* v);
Cell cell(std::string v);
Cell cell(const Rational& v);
Cell cell(const Real& v);
Cell cell(double v);  // shortest round-trip double

class Report {
 public:
  explicit Report(bool hex) : hex_(hex) {}

  void config(std::string key, Cell v) { config_.emplace_back(std::move(key), std::move(v)); }
  void summary(std::string key, Cell v) { summary_.emplace_back(std::move(key), std::move(v)); }

  void column(std::string name) { columns_.push_back(std::move(name)); }
  // A real column plus "<name>_hex" when hex output is on.
  void real_column(std::string name);

  void begin_row() { rows_.emplace_back(); }
  void put(Cell v) { rows_.back().push_back(std::move(v)); }
  void put_real(const Real& v);

  bool hex() const { return hex_; }
  void write(std::ostream& os, Format f) const;

 private:
  bool hex_;
  std::vector<std::pair<std::string, Cell>> config_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, Cell>> summary_;
};

}  // namespace hrb::cli
