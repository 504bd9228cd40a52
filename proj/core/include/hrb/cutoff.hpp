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

#include "hrb/rational.hpp"
#include "hrb/real.hpp"

namespace hrb {

enum class CutoffShape {
  criticality,  // 1 up to N, log-scale decay on (N, N^2], 0 beyond
  plateau,      // 0 up to N, rise on (N, N^2], 1 on (N^2, 2N^2], fall on (2N^2, 2N^3]
};

struct CutoffSpec {
  long N = 10;
  CutoffShape shape = CutoffShape::criticality;
  Rational eps{1, 4};

  void validate() const;
  // Largest x with a nonzero value.
  long support_end() const;
};

// B(τ) = e^(-1/τ) / (e^(-1/τ) + e^(-1/(1-τ))) on (0,1); 0 below, 1 above.
Real smooth_step(const Real& tau);
double smooth_step(double tau);

// η(t) = B((t - ε)/(1 - 2ε))
Real eta(const Real& t, const Rational& eps);

// ξ^N at an integer argument.
Real cutoff_value(const CutoffSpec& c, long x, Precision p);

// On a transition piece, τ = A + B log x with ξ = smooth_step(τ).
// Constant pieces report their value.
struct CutoffPiece {
  int id = 0;            // 0,1,... left to right
  bool smooth = false;
  double value = 0;      // for constant pieces
  double A = 0;
  double B = 0;
};

CutoffPiece cutoff_piece(const CutoffSpec& c, long x);

}  // namespace hrb
