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

#include "hrb/real.hpp"

#include <algorithm>
#include <climits>
#include <cstring>
#include <stdexcept>
#include <string>

namespace hrb {

Precision checked_precision(long bits) {
  if (bits < kMinUserPrecision || bits > kMaxUserPrecision) {
    throw std::invalid_argument("precision " + std::to_string(bits) + " outside [" +
                                std::to_string(kMinUserPrecision) + ", " +
                                std::to_string(kMaxUserPrecision) + "]");
  }
  return Precision{bits};
}

namespace {

mpfr_prec_t to_mpfr(Precision p) {
  if (p.bits < MPFR_PREC_MIN || p.bits > 1L << 20) {
    throw std::invalid_argument("unsupported precision " + std::to_string(p.bits));
  }
  return static_cast<mpfr_prec_t>(p.bits);
}

Precision min_prec(const Real& a, const Real& b) {
  return Precision{std::min(a.precision().bits, b.precision().bits)};
}

}  // namespace

Real::Real(Precision p) {
  mpfr_init2(v_, to_mpfr(p));
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, Precision p) {
  mpfr_init2(v_, to_mpfr(p));
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, Precision p) {
  mpfr_init2(v_, to_mpfr(p));
  mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
}

Real Real::from_double(double v, Precision p) {
  Real r(p);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::parse(std::string_view text, Precision p) {
  Real r(p);
  std::string s(text);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return r;
}

Real Real::pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::infinity(Precision p) {
  Real r(p);
  mpfr_set_inf(r.v_, 1);
  return r;
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

// A moved-from Real has a null limb pointer; only destruction and
// assignment are valid on it.
Real::Real(Real&& o) noexcept {
  std::memcpy(v_, o.v_, sizeof(mpfr_t));
  o.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& o) {
  if (this == &o) return *this;
  if (v_->_mpfr_d == nullptr) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
  } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
  }
  mpfr_set(v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this == &o) return *this;
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
  std::memcpy(v_, o.v_, sizeof(mpfr_t));
  o.v_->_mpfr_d = nullptr;
  return *this;
}

Real::~Real() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

Precision Real::precision() const { return Precision{static_cast<long>(mpfr_get_prec(v_))}; }

Real Real::rounded_to(Precision p) const {
  Real r(p);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long Real::exponent2() const {
  if (mpfr_zero_p(v_)) return LONG_MIN;
  return static_cast<long>(mpfr_get_exp(v_));
}

namespace {

std::string format_digits(bool neg, std::string digits, long exp10) {
  // digits d1 d2 ... represent 0.d1d2... * 10^exp10
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  long e = exp10 - 1;  // scientific exponent of d1
  std::string out = neg ? "-" : "";
  if (e >= -5 && e < 17) {
    if (e >= 0) {
      auto ip = static_cast<std::size_t>(e + 1);
      if (digits.size() <= ip) {
        out += digits + std::string(ip - digits.size(), '0');
      } else {
        out += digits.substr(0, ip) + "." + digits.substr(ip);
      }
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    }
    return out;
  }
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(e);
  return out;
}

bool round_trips(mpfr_srcptr v, std::size_t ndig, std::string* digits, long* exp10) {
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, ndig, v, MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  bool neg = !s.empty() && s.front() == '-';
  if (neg) s.erase(0, 1);
  mpfr_t back;
  mpfr_init2(back, mpfr_get_prec(v));
  std::string lit = std::string(neg ? "-0." : "0.") + s + "e" + std::to_string(static_cast<long>(e));
  mpfr_set_str(back, lit.c_str(), 10, MPFR_RNDN);
  bool ok = mpfr_equal_p(back, v) != 0;
  mpfr_clear(back);
  *digits = s;
  *exp10 = static_cast<long>(e);
  return ok;
}

}  // namespace

std::string Real::to_string() const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
  std::size_t hi = mpfr_get_str_ndigits(10, mpfr_get_prec(v_));
  std::size_t lo = 1;
  std::string digits;
  long exp10 = 0;
  // Round-tripping is monotone in the digit count, so bisect.
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (round_trips(v_, mid, &digits, &exp10)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  round_trips(v_, lo, &digits, &exp10);
  return format_digits(mpfr_signbit(v_) != 0, digits, exp10);
}

std::string Real::to_hex() const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%Ra", v_);
  std::string s(raw);
  mpfr_free_str(raw);
  return s;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real& Real::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long k) {
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long k) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long k) {
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long k) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long k) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real log2(const Real& x) {
  Real r(x.precision());
  mpfr_log2(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(min_prec(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long k) {
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Rational& q) {
  Precision p = x.precision();
  if (q.is_integer() && q.numerator().fits_slong_p()) return pow(x, q.numerator().get_si());
  mpz_class den = q.denominator();
  mpz_class num = q.numerator();
  if (den == 2 && num == 1) return sqrt(x);
  if (!den.fits_ulong_p()) {
    return pow(x, Real(q, widened(p, 64))).rounded_to(p);
  }
  Precision work = widened(p, 32 + static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)));
  Real root(work);
  mpfr_rootn_ui(root.raw(), x.rounded_to(work).raw(), den.get_ui(), MPFR_RNDN);
  Real r(work);
  mpfr_pow_z(r.raw(), root.raw(), num.get_mpz_t(), MPFR_RNDN);
  return r.rounded_to(p);
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

}  // namespace hrb
