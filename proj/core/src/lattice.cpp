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

#include "hrb/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hrb/exactmath.hpp"

namespace hrb {

LatticeSeq::LatticeSeq(EvalRule rule, long support_floor, Precision p)
    : rule_(std::make_shared<const EvalRule>(std::move(rule))), floor_(support_floor), prec_(p) {}

Real LatticeSeq::operator()(long n) const {
  if (n < floor_) return Real(prec_);
  return (*rule_)(n);
}

std::vector<Real> LatticeSeq::tabulate(long lo, long hi) const {
  std::vector<Real> out;
  if (hi > lo) out.reserve(static_cast<std::size_t>(hi - lo));
  for (long n = lo; n < hi; ++n) out.push_back((*this)(n));
  return out;
}

FinSuppSeq::FinSuppSeq(long offset, std::vector<Real> values, Precision p)
    : offset_(offset), values_(std::move(values)), prec_(p) {}

FinSuppSeq FinSuppSeq::delta(long n, Precision p) {
  std::vector<Real> v;
  v.emplace_back(1, p);
  return FinSuppSeq(n, std::move(v), p);
}

Real FinSuppSeq::operator()(long n) const {
  if (n < offset_ || n >= end()) return Real(prec_);
  return values_[static_cast<std::size_t>(n - offset_)];
}

long FinSuppSeq::first_nonzero() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!values_[i].is_zero()) return offset_ + static_cast<long>(i);
  }
  return end();
}

long FinSuppSeq::last_nonzero() const {
  for (std::size_t i = values_.size(); i > 0; --i) {
    if (!values_[i - 1].is_zero()) return offset_ + static_cast<long>(i) - 1;
  }
  return offset_ - 1;
}

LatticeSeq FinSuppSeq::as_lattice() const {
  auto self = std::make_shared<const FinSuppSeq>(*this);
  return LatticeSeq([self](long n) { return (*self)(n); }, offset_, prec_);
}

Stencil atom_stencil(DiffExpr::Atom a) {
  using A = DiffExpr::Atom;
  switch (a) {
    case A::shift:
      return {{1, Rational(1)}};
    case A::grad:
      return {{-1, Rational(-1)}, {0, Rational(1)}};
    case A::divg:
      return {{0, Rational(-1)}, {1, Rational(1)}};
    case A::lap:
      return {{-1, Rational(1)}, {0, Rational(-2)}, {1, Rational(1)}};
    case A::midop:
      return {{0, Rational(1, 2)}, {1, Rational(1, 2)}};
    case A::negate:
      return {{0, Rational(-1)}};
  }
  throw std::logic_error("unknown atom");
}

Stencil compose(const Stencil& outer, const Stencil& inner) {
  // (outer ∘ inner) u(n) = sum_i a_i sum_j b_j u(n + i + j)
  Stencil out;
  for (const auto& [i, a] : outer) {
    for (const auto& [j, b] : inner) out[i + j] += a * b;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.sign() == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

DiffExpr DiffExpr::neg_lap_pow(long ell) {
  if (ell < 0) throw std::invalid_argument("power must be nonnegative");
  std::vector<Atom> atoms;
  for (long i = 0; i < ell; ++i) {
    atoms.push_back(Atom::negate);
    atoms.push_back(Atom::lap);
  }
  return DiffExpr(std::move(atoms));
}

DiffExpr DiffExpr::divg_pow(long m) {
  if (m < 0) throw std::invalid_argument("power must be nonnegative");
  return DiffExpr(std::vector<Atom>(static_cast<std::size_t>(m), Atom::divg));
}

DiffExpr DiffExpr::half_power(long ell) {
  if (ell < 0) throw std::invalid_argument("power must be nonnegative");
  DiffExpr base = neg_lap_pow(ell / 2);
  if (ell % 2 == 0) return base;
  return DiffExpr({Atom::grad}).then_after(base);
}

DiffExpr DiffExpr::then_after(const DiffExpr& other) const {
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  return DiffExpr(std::move(atoms));
}

Stencil DiffExpr::stencil() const {
  Stencil s{{0, Rational(1)}};
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) s = compose(atom_stencil(*it), s);
  return s;
}

long DiffExpr::min_offset() const {
  auto s = stencil();
  return s.empty() ? 0 : s.begin()->first;
}

long DiffExpr::max_offset() const {
  auto s = stencil();
  return s.empty() ? 0 : s.rbegin()->first;
}

FinSuppSeq DiffExpr::apply(const FinSuppSeq& u) const {
  FinSuppSeq v = u;
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) v = apply_stencil(atom_stencil(*it), v);
  return v;
}

LatticeSeq DiffExpr::apply(const LatticeSeq& u) const {
  LatticeSeq v = u;
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) v = apply_stencil(atom_stencil(*it), v);
  return v;
}

namespace {

struct Tap {
  long offset;
  Real coef;
};

std::vector<Tap> prepare(const Stencil& s, Precision p) {
  std::vector<Tap> taps;
  taps.reserve(s.size());
  for (const auto& [j, c] : s) taps.push_back({j, Real(c, widened(p, 64))});
  return taps;
}

Real sum_taps(const std::vector<Tap>& taps, const std::function<Real(long)>& at, long n, Precision p) {
  Real acc(p);
  for (const auto& t : taps) {
    Real v = at(n + t.offset);
    if (v.is_zero()) continue;
    acc += v * t.coef;
  }
  return acc;
}

}  // namespace

FinSuppSeq apply_stencil(const Stencil& s, const FinSuppSeq& u) {
  Precision p = u.precision();
  if (s.empty() || u.empty()) return FinSuppSeq(p);
  long lo = s.begin()->first;
  long hi = s.rbegin()->first;
  long out_off = u.offset() - hi;
  long out_end = u.end() - lo;
  auto taps = prepare(s, p);
  std::vector<Real> values;
  values.reserve(static_cast<std::size_t>(out_end - out_off));
  auto at = [&u](long m) { return u(m); };
  for (long n = out_off; n < out_end; ++n) values.push_back(sum_taps(taps, at, n, p));
  return FinSuppSeq(out_off, std::move(values), p);
}

LatticeSeq apply_stencil(const Stencil& s, const LatticeSeq& u) {
  Precision p = u.precision();
  if (s.empty()) return LatticeSeq([p](long) { return Real(p); }, 0, p);
  long hi = s.rbegin()->first;
  auto taps = std::make_shared<const std::vector<Tap>>(prepare(s, p));
  return LatticeSeq(
      [u, taps, p](long n) { return sum_taps(*taps, [&u](long m) { return u(m); }, n, p); },
      u.support_floor() - hi, p);
}

Real apply_stencil_at(const Stencil& s, const std::vector<Real>& values, long base) {
  if (values.empty()) throw std::invalid_argument("empty window");
  Precision p = values.front().precision();
  Real acc(p);
  for (const auto& [j, c] : s) {
    long idx = base + j;
    if (idx < 0 || idx >= static_cast<long>(values.size())) {
      throw std::out_of_range("stencil window out of range");
    }
    if (c.is_integer() && c.numerator().fits_slong_p()) {
      acc += values[static_cast<std::size_t>(idx)] * c.numerator().get_si();
    } else {
      acc += values[static_cast<std::size_t>(idx)] * Real(c, widened(p, 64));
    }
  }
  return acc;
}

FinSuppSeq shift(const FinSuppSeq& u, long k) { return FinSuppSeq(u.offset() - k, u.values(), u.precision()); }
LatticeSeq shift(const LatticeSeq& u, long k) {
  return LatticeSeq([u, k](long n) { return u(n + k); }, u.support_floor() - k, u.precision());
}

FinSuppSeq grad(const FinSuppSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::grad), u); }
LatticeSeq grad(const LatticeSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::grad), u); }
FinSuppSeq divg(const FinSuppSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::divg), u); }
LatticeSeq divg(const LatticeSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::divg), u); }
FinSuppSeq lap(const FinSuppSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::lap), u); }
LatticeSeq lap(const LatticeSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::lap), u); }
FinSuppSeq midop(const FinSuppSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::midop), u); }
LatticeSeq midop(const LatticeSeq& u) { return apply_stencil(atom_stencil(DiffExpr::Atom::midop), u); }

FinSuppSeq divg_pow(const FinSuppSeq& u, long m) { return apply_stencil(DiffExpr::divg_pow(m).stencil(), u); }
LatticeSeq divg_pow(const LatticeSeq& u, long m) { return apply_stencil(DiffExpr::divg_pow(m).stencil(), u); }
FinSuppSeq neg_lap_pow(const FinSuppSeq& u, long ell) {
  return apply_stencil(DiffExpr::neg_lap_pow(ell).stencil(), u);
}
LatticeSeq neg_lap_pow(const LatticeSeq& u, long ell) {
  return apply_stencil(DiffExpr::neg_lap_pow(ell).stencil(), u);
}
FinSuppSeq half_power(const FinSuppSeq& u, long ell) {
  return apply_stencil(DiffExpr::half_power(ell).stencil(), u);
}
LatticeSeq half_power(const LatticeSeq& u, long ell) {
  return apply_stencil(DiffExpr::half_power(ell).stencil(), u);
}

LatticeSeq product(const LatticeSeq& u, const LatticeSeq& v) {
  Precision p{std::min(u.precision().bits, v.precision().bits)};
  return LatticeSeq([u, v](long n) { return u(n) * v(n); }, std::max(u.support_floor(), v.support_floor()), p);
}

Real quad_form(const FinSuppSeq& u, long ell) {
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  Precision p = u.precision();
  if (u.first_nonzero() < u.end() && u.first_nonzero() < ell) {
    throw std::invalid_argument("quad_form needs u to vanish below " + std::to_string(ell) +
                                " (nonzero at " + std::to_string(u.first_nonzero()) + ")");
  }
  FinSuppSeq v = half_power(u, ell);
  long vanish_below = (ell + 1) / 2;
  Real sum(p);
  for (long n = v.offset(); n < v.end(); ++n) {
    Real x = v(n);
    if (n < vanish_below && !x.is_zero()) {
      throw std::logic_error("half power nonzero at " + std::to_string(n));
    }
    sum += x * x;
  }
  return sum;
}

LatticeSeq leibniz_div_pow(const LatticeSeq& u, const LatticeSeq& v, long m) {
  if (m < 0) throw std::invalid_argument("power must be nonnegative");
  Precision p{std::min(u.precision().bits, v.precision().bits)};
  struct Term {
    Real binom;
    LatticeSeq a;
    LatticeSeq b;
  };
  auto terms = std::make_shared<std::vector<Term>>();
  for (long j = 0; j <= m; ++j) {
    DiffExpr ea = DiffExpr::divg_pow(j).then_after(
        DiffExpr(std::vector<DiffExpr::Atom>(static_cast<std::size_t>(m - j), DiffExpr::Atom::midop)));
    DiffExpr eb = DiffExpr::divg_pow(m - j).then_after(
        DiffExpr(std::vector<DiffExpr::Atom>(static_cast<std::size_t>(j), DiffExpr::Atom::midop)));
    terms->push_back({Real(binom_rational(Rational(m), j), p), apply_stencil(ea.stencil(), u),
                      apply_stencil(eb.stencil(), v)});
  }
  long floor_ = std::max(u.support_floor(), v.support_floor()) - m;
  return LatticeSeq(
      [terms, p](long n) {
        Real acc(p);
        for (const auto& t : *terms) acc += t.binom * t.a(n) * t.b(n);
        return acc;
      },
      floor_, p);
}

MvtBounds discrete_mvt_bounds(const RealFunction& g, const RealFunction& g_nth_derivative, long n,
                              long N, Precision p) {
  if (N < 0) throw std::invalid_argument("order must be nonnegative");
  Real value(p);
  for (long j = 0; j <= N; ++j) {
    Real term = g(Real(n + j, p)) * Real(binom_rational(Rational(N), j), p);
    if ((N - j) % 2 == 1) {
      value -= term;
    } else {
      value += term;
    }
  }
  Real a = g_nth_derivative(Real(n, p));
  Real b = g_nth_derivative(Real(n + N, p));
  MvtBounds out{value, min(a, b), max(a, b), false};
  Real slack = ldexp(max(abs(out.lower), abs(out.upper)), -(p.bits - 16));
  out.within = out.value >= out.lower - slack && out.value <= out.upper + slack;
  return out;
}

}  // namespace hrb
