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

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "hrb/rational.hpp"

namespace hrb {

// Working precision in bits.
struct Precision {
  long bits = 128;
  friend bool operator==(const Precision&, const Precision&) = default;
};

inline constexpr Precision kDefaultPrecision{128};
inline constexpr long kMinUserPrecision = 64;
inline constexpr long kMaxUserPrecision = 1024;

// Throws std::invalid_argument outside [64, 1024].
Precision checked_precision(long bits);

// Precision widened by `extra` bits, for internal guard digits.
inline Precision widened(Precision p, long extra) { return Precision{p.bits + extra}; }

// MPFR value with its own precision. Arithmetic results carry the smaller
// operand precision and are correctly rounded to nearest.
class Real {
 public:
  explicit Real(Precision p = kDefaultPrecision);
  Real(long v, Precision p);
  Real(const Rational& q, Precision p);
  static Real from_double(double v, Precision p);
  static Real parse(std::string_view text, Precision p);
  static Real pi(Precision p);
  static Real infinity(Precision p);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  Precision precision() const;
  Real rounded_to(Precision p) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent2() const;  // e with |x| in [2^(e-1), 2^e); LONG_MIN for zero

  // Shortest decimal that reads back to the same value at this precision.
  std::string to_string() const;
  // Exact hexadecimal float, e.g. "0x1.8p+1".
  std::string to_hex() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long k);
  Real& operator/=(long k);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long k);
  friend Real operator*(long k, const Real& a) { return a * k; }
  friend Real operator/(const Real& a, long k);
  friend Real operator+(const Real& a, long k);
  friend Real operator-(const Real& a, long k);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

  friend std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long k);
// x^q for rational q, computed with guard bits then rounded.
Real pow(const Real& x, const Rational& q);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real ldexp(const Real& x, long e);  // x * 2^e, exact

}  // namespace hrb
