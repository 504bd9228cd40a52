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

#include <doctest.h>

#include "hrb/real.hpp"

namespace hrb::testing {

inline Rational Q(long p, long q = 1) { return Rational(p, q); }

// |a - b| <= rel * max(|a|, |b|, floor)
inline bool close(const Real& a, const Real& b, const Real& rel, long floor = 0) {
  Precision p{std::min(a.precision().bits, b.precision().bits)};
  Real scale = max(max(abs(a), abs(b)), Real(floor, p));
  return !(abs(a - b) > rel * scale);
}

inline Real pow2(long e, Precision p) { return ldexp(Real(1, p), e); }

}  // namespace hrb::testing
