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

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "hrb/rational.hpp"
#include "hrb/real.hpp"

namespace hrb {

using EvalRule = std::function<Real(long)>;

// Sequence on the integers given by an evaluation rule. Values below the
// support floor are zero and the rule is not consulted there.
class LatticeSeq {
 public:
  LatticeSeq(EvalRule rule, long support_floor, Precision p);

  Real operator()(long n) const;
  long support_floor() const { return floor_; }
  Precision precision() const { return prec_; }
  // Values at lo, lo+1, ..., hi-1.
  std::vector<Real> tabulate(long lo, long hi) const;

 private:
  std::shared_ptr<const EvalRule> rule_;
  long floor_;
  Precision prec_;
};

// Finitely supported sequence: values[i] sits at index offset + i.
class FinSuppSeq {
 public:
  explicit FinSuppSeq(Precision p) : prec_(p) {}
  FinSuppSeq(long offset, std::vector<Real> values, Precision p);
  static FinSuppSeq delta(long n, Precision p);

  Real operator()(long n) const;
  long offset() const { return offset_; }
  long end() const { return offset_ + static_cast<long>(values_.size()); }
  bool empty() const { return values_.empty(); }
  Precision precision() const { return prec_; }
  const std::vector<Real>& values() const { return values_; }
  // Lowest index with a nonzero value; end() when identically zero.
  long first_nonzero() const;
  long last_nonzero() const;  // offset() - 1 when identically zero
  LatticeSeq as_lattice() const;

 private:
  long offset_ = 0;
  std::vector<Real> values_;
  Precision prec_;
};

// (E u)(n) = sum_j c_j u(n + j), coefficients keyed by offset j.
using Stencil = std::map<long, Rational>;

// Composition of elementary difference operators in composition order:
// atoms {a, b, c} denote a ∘ b ∘ c, so c acts first.
class DiffExpr {
 public:
  enum class Atom { shift, grad, divg, lap, midop, negate };

  DiffExpr() = default;
  explicit DiffExpr(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  static DiffExpr neg_lap_pow(long ell);
  static DiffExpr divg_pow(long m);
  static DiffExpr half_power(long ell);

  // this ∘ other
  DiffExpr then_after(const DiffExpr& other) const;
  const std::vector<Atom>& atoms() const { return atoms_; }
  Stencil stencil() const;
  long min_offset() const;
  long max_offset() const;

  FinSuppSeq apply(const FinSuppSeq& u) const;
  LatticeSeq apply(const LatticeSeq& u) const;

 private:
  std::vector<Atom> atoms_;
};

Stencil atom_stencil(DiffExpr::Atom a);
Stencil compose(const Stencil& outer, const Stencil& inner);
FinSuppSeq apply_stencil(const Stencil& s, const FinSuppSeq& u);
LatticeSeq apply_stencil(const Stencil& s, const LatticeSeq& u);
// sum_j c_j values[base + j] for a dense window.
Real apply_stencil_at(const Stencil& s, const std::vector<Real>& values, long base);

// S u(n) = u(n+k)
FinSuppSeq shift(const FinSuppSeq& u, long k = 1);
LatticeSeq shift(const LatticeSeq& u, long k = 1);
// u(n) - u(n-1)
FinSuppSeq grad(const FinSuppSeq& u);
LatticeSeq grad(const LatticeSeq& u);
// u(n+1) - u(n)
FinSuppSeq divg(const FinSuppSeq& u);
LatticeSeq divg(const LatticeSeq& u);
// u(n-1) - 2u(n) + u(n+1)
FinSuppSeq lap(const FinSuppSeq& u);
LatticeSeq lap(const LatticeSeq& u);
// (u(n) + u(n+1)) / 2
FinSuppSeq midop(const FinSuppSeq& u);
LatticeSeq midop(const LatticeSeq& u);
FinSuppSeq divg_pow(const FinSuppSeq& u, long m);
LatticeSeq divg_pow(const LatticeSeq& u, long m);
FinSuppSeq neg_lap_pow(const FinSuppSeq& u, long ell);
LatticeSeq neg_lap_pow(const LatticeSeq& u, long ell);
// (-Δ)^m for ell = 2m, ∇(-Δ)^m for ell = 2m+1.
FinSuppSeq half_power(const FinSuppSeq& u, long ell);
LatticeSeq half_power(const LatticeSeq& u, long ell);

LatticeSeq product(const LatticeSeq& u, const LatticeSeq& v);

// sum_n |half_power(u, ell)(n)|^2 over the whole support. Throws
// std::invalid_argument if u has a nonzero value below ell.
Real quad_form(const FinSuppSeq& u, long ell);

// ∂^m(uv) = sum_j C(m,j) (∂^j M^(m-j) u)(∂^(m-j) M^j v)
LatticeSeq leibniz_div_pow(const LatticeSeq& u, const LatticeSeq& v, long m);

using RealFunction = std::function<Real(const Real&)>;

struct MvtBounds {
  Real value;  // ∂^N g at n
  Real lower;  // min of g^(N) at n and n+N
  Real upper;
  bool within = false;
};

// The N-th forward difference of g at n equals g^(N)(ξ) for some
// ξ in (n, n+N); for monotone g^(N) it lies between the endpoint values.
MvtBounds discrete_mvt_bounds(const RealFunction& g, const RealFunction& g_nth_derivative, long n,
                              long N, Precision p);

}  // namespace hrb
