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

#include "hrb/verify.hpp"

#include <algorithm>
#include <sstream>

#include "hrb/exactmath.hpp"

namespace hrb {

namespace {

long binom_long(long m, long j) {
  if (j < 0 || j > m) return 0;
  long r = 1;
  for (long i = 1; i <= j; ++i) r = r * (m - j + i) / i;
  return r;
}

// Dense window of a sequence's values starting at index lo.
class Window {
 public:
  Window(const LatticeSeq& g, long lo, long hi) : lo_(lo), vals_(g.tabulate(lo, hi)) {}
  Window(long lo, std::vector<Real> vals) : lo_(lo), vals_(std::move(vals)) {}
  const Real& operator[](long n) const {
    if (n < lo_ || n >= lo_ + static_cast<long>(vals_.size())) {
      throw std::out_of_range("window index " + std::to_string(n));
    }
    return vals_[static_cast<std::size_t>(n - lo_)];
  }
  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(vals_.size()); }

 private:
  long lo_;
  std::vector<Real> vals_;
};

// sum_j C(m,j) (-1)^(m-j) f(n+j)
template <class F>
Real forward_diff(F&& f, long n, long m, Precision p) {
  Real acc(p);
  for (long j = 0; j <= m; ++j) {
    Real t = f(n + j) * binom_long(m, j);
    if ((m - j) % 2 == 1) {
      acc -= t;
    } else {
      acc += t;
    }
  }
  return acc;
}

// (-Δ)^r ∂^m f at n, as (-1)^r ∂^(2r+m) f at n-r
template <class F>
Real neg_lap_div(F&& f, long r, long m, long n, Precision p) {
  Real v = forward_diff(f, n - r, 2 * r + m, p);
  return r % 2 == 1 ? -v : v;
}

Precision common(const LatticeSeq& g, const FinSuppSeq& u) {
  return Precision{std::min(g.precision().bits, u.precision().bits)};
}

void require_h0(const FinSuppSeq& u, long floor_, const char* who) {
  if (u.first_nonzero() < u.end() && u.first_nonzero() < floor_) {
    throw std::invalid_argument(std::string(who) + " needs u to vanish below " + std::to_string(floor_));
  }
}

}  // namespace

Real default_tolerance(Precision p) { return ldexp(Real(1, p), -(p.bits - 20)); }

RemainderCoefficients remainder_coefficients(const LatticeSeq& g, long ell, long k, long n_lo,
                                             long n_hi) {
  if (ell < 1 || k < 0 || k > ell - 1) throw std::invalid_argument("remainder index k outside [0, ell-1]");
  Precision p = g.precision();
  const long r = ell - 1 - k;
  Window gw(g, n_lo - r - 1, n_hi + ell + 3);
  auto gf = [&gw](long m) -> const Real& { return gw[m]; };
  RemainderCoefficients out;
  out.n_lo = n_lo;
  for (long n = n_lo; n <= n_hi + 1; ++n) {
    Real a = forward_diff(gf, n, k, p);
    if (!(a > 0L)) throw AssumptionViolation(Assumption::a1, k, n, "divided difference not positive");
    out.a.push_back(std::move(a));
  }
  for (long n = n_lo; n <= n_hi; ++n) {
    if (k == ell - 1) {
      out.w.emplace_back(1, p);
      continue;
    }
    Real d = forward_diff(gf, n, k + 1, p);
    if (!(d > 0L)) throw AssumptionViolation(Assumption::a1, k + 1, n, "divided difference not positive");
    Real num = neg_lap_div(gf, r, k + 1, n, p);
    Real w = num / d;
    if (w < 0L) throw AssumptionViolation(Assumption::a2, k + 1, n, "remainder weight negative");
    out.w.push_back(std::move(w));
  }
  return out;
}

std::vector<Real> remainder_summands(const LatticeSeq& g, const FinSuppSeq& u, long ell, long k) {
  if (ell < 1 || k < 0 || k > ell - 1) throw std::invalid_argument("remainder index k outside [0, ell-1]");
  require_h0(u, ell, "remainder");
  Precision p = common(g, u);
  long b = u.last_nonzero();
  std::vector<Real> out;
  if (b < u.offset()) return out;
  const long n_lo = ell - k;
  if (b < n_lo) return out;
  RemainderCoefficients c = remainder_coefficients(g, ell, k, n_lo, b);
  auto uf = [&u](long m) { return u(m); };
  for (long n = n_lo; n <= b; ++n) {
    auto i = static_cast<std::size_t>(n - n_lo);
    Real d0 = forward_diff(uf, n, k, p);
    Real d1 = forward_diff(uf, n + 1, k, p);
    if (d0.is_zero() && d1.is_zero()) {
      out.emplace_back(p);
      continue;
    }
    const Real& a0 = c.a[i];
    const Real& a1 = c.a[i + 1];
    Real bracket = sqrt(a0 / a1) * d1 - sqrt(a1 / a0) * d0;
    out.push_back((c.w[i] * bracket * bracket).rounded_to(p));
  }
  return out;
}

Real remainder(const LatticeSeq& g, const FinSuppSeq& u, long ell, long k) {
  Real sum(common(g, u));
  for (const auto& s : remainder_summands(g, u, ell, k)) sum += s;
  return sum;
}

IdentityReport identity_check(const LatticeSeq& g, const FinSuppSeq& u, long ell) {
  Precision p = common(g, u);
  require_h0(u, ell, "identity_check");
  IdentityReport rep{quad_form(u, ell), Real(p), {}, Real(p), Real(p)};
  long b = u.last_nonzero();
  if (b >= ell) {
    Window gw(g, 0, b + ell + 1);
    auto gf = [&gw](long m) -> const Real& { return gw[m]; };
    for (long n = ell; n <= b; ++n) {
      Real un = u(n);
      if (un.is_zero()) continue;
      const Real& gn = gw[n];
      if (!(gn > 0L)) throw AssumptionViolation(Assumption::a1, 0, n, "parameter sequence not positive");
      Real rho = neg_lap_div(gf, ell, 0, n, p) / gn;
      rep.weight_term += rho * un * un;
    }
  }
  Real total = rep.weight_term;
  for (long k = 0; k < ell; ++k) {
    rep.remainders.push_back(remainder(g, u, ell, k));
    total += rep.remainders.back();
  }
  rep.residual = rep.lhs - total;
  rep.relative_residual = abs(rep.residual) / max(Real(1, p), rep.lhs);
  return rep;
}

IdentityReport weighted_hardy_check(const LatticeSeq& V, const LatticeSeq& g, const FinSuppSeq& u) {
  Precision p{std::min({V.precision().bits, g.precision().bits, u.precision().bits})};
  require_h0(u, 1, "weighted_hardy_check");
  IdentityReport rep{Real(p), Real(p), {Real(p)}, Real(p), Real(p)};
  long b = u.last_nonzero();
  if (b < 1) return rep;
  for (long n = 1; n <= b + 1; ++n) {
    if (!(g(n) > 0L)) throw AssumptionViolation(Assumption::a1, 0, n, "parameter sequence not positive");
  }
  for (long n = 1; n <= b + 1; ++n) {
    Real d = u(n) - u(n - 1);
    rep.lhs += V(n) * d * d;
  }
  for (long n = 1; n <= b; ++n) {
    Real un = u(n);
    Real div = V(n + 1) * (g(n + 1) - g(n)) - V(n) * (g(n) - g(n - 1));
    rep.weight_term -= div / g(n) * un * un;
    Real gn = g(n);
    Real gn1 = g(n + 1);
    Real br = sqrt(gn / gn1) * u(n + 1) - sqrt(gn1 / gn) * un;
    rep.remainders[0] += V(n + 1) * br * br;
  }
  rep.residual = rep.lhs - rep.weight_term - rep.remainders[0];
  rep.relative_residual = abs(rep.residual) / max(Real(1, p), rep.lhs);
  return rep;
}

std::string AssumptionReport::label() const {
  std::ostringstream os;
  if (!first_violation) {
    os << "verified up to N=" << horizon;
  } else {
    os << assumption_tag(first_violation->tag) << " violated at k=" << first_violation->k
       << ", n=" << first_violation->n << " (checked up to N=" << horizon << ")";
  }
  return os.str();
}

SequenceFactory family_sequence(const WeightSpec& spec) {
  spec.validate();
  return [spec](Precision p) { return g_param(spec, p); };
}

namespace {

template <class F>
Real quantity(F&& f, long ell, Assumption tag, long k, long n, Precision p) {
  switch (tag) {
    case Assumption::a1:
      return forward_diff(f, n, k, p);
    case Assumption::a2:
      return neg_lap_div(f, ell - k, k, n, p);
    case Assumption::a2prime:
      return neg_lap_div(f, ell, 0, n, p);
    case Assumption::a3strict:
      return k == 0 ? neg_lap_div(f, ell, 0, n, p) : neg_lap_div(f, ell - 1, 1, n, p);
  }
  throw std::logic_error("unknown assumption");
}

}  // namespace

Real assumption_quantity(const LatticeSeq& g, long ell, Assumption tag, long k, long n) {
  return quantity([&g](long m) { return g(m); }, ell, tag, k, n, g.precision());
}

Precision assumption_precision(long ell, long N, Precision p) {
  return widened(p, difference_guard_bits(ell, N + 2 * ell));
}

AssumptionReport assumptions_check(const LatticeSeq& g, long ell, long N) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (N < ell) throw std::invalid_argument("horizon must be >= ell");
  Precision p = g.precision();
  Window gw(g, -2 * ell - 2, N + 2 * ell + 3);
  auto gf = [&gw](long m) -> const Real& { return gw[m]; };
  AssumptionReport rep;
  rep.ell = ell;
  rep.horizon = N;
  rep.eval_precision = p;
  auto fail = [&rep](Assumption tag, long k, long n, const Real& v) {
    if (!rep.first_violation) rep.first_violation = Violation{tag, k, n, v};
  };
  for (long k = 0; k < ell && rep.a1_ok; ++k) {
    for (long n = ell - k; n <= N; ++n) {
      Real v = quantity(gf, ell, Assumption::a1, k, n, p);
      if (!(v > 0L)) {
        rep.a1_ok = false;
        fail(Assumption::a1, k, n, v);
        break;
      }
    }
  }
  for (long k = 1; k < ell && rep.a2_ok; ++k) {
    for (long n = ell + 1 - k; n <= N; ++n) {
      Real v = quantity(gf, ell, Assumption::a2, k, n, p);
      if (v < 0L) {
        rep.a2_ok = false;
        fail(Assumption::a2, k, n, v);
        break;
      }
    }
  }
  for (long n = ell; n <= N; ++n) {
    Real v = quantity(gf, ell, Assumption::a2prime, 0, n, p);
    if (v < 0L) {
      rep.a2prime_ok = false;
      fail(Assumption::a2prime, 0, n, v);
      break;
    }
  }
  for (long k = 0; k <= (ell >= 2 ? 1 : 0) && rep.a3strict_ok; ++k) {
    for (long n = ell; n <= N; ++n) {
      Real v = quantity(gf, ell, Assumption::a3strict, k, n, p);
      if (!(v > 0L)) {
        rep.a3strict_ok = false;
        fail(Assumption::a3strict, k, n, v);
        break;
      }
    }
  }
  return rep;
}

AssumptionReport assumptions_check(const SequenceFactory& g, long ell, long N, Precision p) {
  return assumptions_check(g(assumption_precision(ell, N, p)), ell, N);
}

InequalityReport inequality_check(const WeightSpec& spec, const FinSuppSeq& u) {
  spec.validate();
  Precision p = u.precision();
  const long ell = spec.ell;
  InequalityReport rep{quad_form(u, ell), Real(p), Real(p)};
  for (long n = std::max(ell, u.first_nonzero()); n <= u.last_nonzero(); ++n) {
    Real un = u(n);
    if (un.is_zero()) continue;
    rep.rhs += rho_eval(spec, n, p) * un * un;
  }
  rep.margin = rep.lhs - rep.rhs;
  return rep;
}

std::uint64_t TestVectorSource::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  return rng_() % bound;
}

double TestVectorSource::next_unit() {
  double x = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return 2 * x - 1;
}

FinSuppSeq TestVectorSource::next(long ell, Precision p, long max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  long len = 1 + static_cast<long>(next_below(static_cast<std::uint64_t>(max_len)));
  long start = ell + static_cast<long>(next_below(static_cast<std::uint64_t>(max_len - len + 1)));
  std::vector<Real> vals;
  vals.reserve(static_cast<std::size_t>(len));
  for (long i = 0; i < len; ++i) vals.push_back(Real::from_double(next_unit(), p));
  return FinSuppSeq(start, std::move(vals), p);
}

AttainabilityReport attainability_probe(long ell, const Rational& q, long horizon, Precision p) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (!(q > Rational(0) && q < Rational(1, 2))) {
    throw std::invalid_argument("attainability needs q in (0, 1/2); the weighted sum diverges for q=" +
                                q.to_string());
  }
  if (horizon < ell) throw std::invalid_argument("horizon must be >= ell");
  Precision work = widened(p, difference_guard_bits(ell, horizon + ell));
  LatticeSeq g = q_family_sequence(ell, q, work);
  Window gw(g, 0, horizon + ell + 1);
  auto gf = [&gw](long m) -> const Real& { return gw[m]; };
  std::vector<Real> uv;
  for (long n = ell; n <= horizon; ++n) uv.push_back(gw[n]);
  FinSuppSeq u(ell, std::move(uv), work);
  Real rhs(work);
  for (long n = ell; n <= horizon; ++n) {
    const Real& gn = gw[n];
    rhs += neg_lap_div(gf, ell, 0, n, work) * gn;
  }
  Real lhs = quad_form(u, ell);
  return AttainabilityReport{ell, q, horizon, lhs.rounded_to(p), rhs.rounded_to(p), (lhs - rhs).rounded_to(p)};
}

std::optional<long> alpha_violation(const Rational& alpha, long n_check, Precision p) {
  if (!(alpha < Rational(2))) throw std::invalid_argument("alpha must be < 2");
  if (n_check < 2) throw std::invalid_argument("n_check must be >= 2");
  Precision work = widened(p, difference_guard_bits(2, n_check + 2));
  const Real a(alpha, work);
  auto g = [&](long n) {
    if (n <= 1) return Real(work);
    return sqrt(Real(n, work) * Real(n - 1, work) * (Real(n, work) - a));
  };
  // rolling window g(n-2..n+2)
  std::vector<Real> w;
  for (long j = 0; j <= 4; ++j) w.push_back(g(j));
  for (long n = 2; n <= n_check; ++n) {
    Real d = w[0] - w[1] * 4 + w[2] * 6 - w[3] * 4 + w[4];
    if (d < 0L) return n;
    std::rotate(w.begin(), w.begin() + 1, w.end());
    w[4] = g(n + 3);
  }
  return std::nullopt;
}

AlphaRange alpha_admissible_range(long n_check, const Rational& tol, Precision p) {
  if (n_check < 1000) throw std::invalid_argument("alpha_admissible_range needs n_check >= 1000");
  if (!(tol > Rational(0))) throw std::invalid_argument("tol must be positive");
  auto feasible = [&](const Rational& a) { return !alpha_violation(a, n_check, p).has_value(); };
  Rational lo_bad(1, 2);
  Rational mid_ok(1);
  Rational hi_bad(19, 10);
  if (feasible(lo_bad) || !feasible(mid_ok) || feasible(hi_bad)) {
    throw std::runtime_error("alpha feasibility brackets [1/2, 1, 19/10] do not separate");
  }
  AlphaRange out;
  Rational a = lo_bad;
  Rational b = mid_ok;
  while (b - a > tol) {
    Rational m = (a + b) / Rational(2);
    if (feasible(m)) {
      b = m;
    } else {
      a = m;
    }
    ++out.lo_bisections;
  }
  out.lo = b;
  a = mid_ok;
  b = hi_bad;
  while (b - a > tol) {
    Rational m = (a + b) / Rational(2);
    if (feasible(m)) {
      a = m;
    } else {
      b = m;
    }
    ++out.hi_bisections;
  }
  out.hi = a;
  return out;
}

}  // namespace hrb
