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

#include <stdexcept>
#include <string>

namespace hrb {

enum class Assumption { a1, a2, a2prime, a3strict };

inline const char* assumption_tag(Assumption a) {
  switch (a) {
    case Assumption::a1:
      return "A1";
    case Assumption::a2:
      return "A2";
    case Assumption::a2prime:
      return "A2'";
    case Assumption::a3strict:
      return "A3''";
  }
  return "?";
}

// A quantity that must be positive (or nonnegative) was not, at (k, n).
class AssumptionViolation : public std::domain_error {
 public:
  AssumptionViolation(Assumption tag, long k, long n, const std::string& detail)
      : std::domain_error(std::string(assumption_tag(tag)) + " violated at k=" + std::to_string(k) +
                          ", n=" + std::to_string(n) + ": " + detail),
        tag_(tag),
        k_(k),
        n_(n) {}

  Assumption tag() const { return tag_; }
  long k() const { return k_; }
  long n() const { return n_; }

 private:
  Assumption tag_;
  long k_;
  long n_;
};

}  // namespace hrb
