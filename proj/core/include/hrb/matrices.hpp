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
#include <stdexcept>
#include <string>
#include <vector>

#include "hrb/lattice.hpp"
#include "hrb/real.hpp"
#include "hrb/verify.hpp"

namespace hrb {

// Square matrix with entries only on diagonals j - i in [-lower, upper].
template <class T>
class BandMatrix {
 public:
  BandMatrix(long size, long lower, long upper, T zero)
      : size_(size), lower_(lower), upper_(upper), zero_(zero),
        data_(static_cast<std::size_t>(size * (lower + upper + 1)), zero) {
    if (size < 1 || lower < 0 || upper < 0) throw std::invalid_argument("bad band matrix shape");
  }

  long size() const { return size_; }
  long lower_bw() const { return lower_; }
  long upper_bw() const { return upper_; }
  bool in_band(long i, long j) const {
    return i >= 0 && j >= 0 && i < size_ && j < size_ && j - i >= -lower_ && j - i <= upper_;
  }

  const T& operator()(long i, long j) const { return in_band(i, j) ? data_[index(i, j)] : zero_; }
  T& at(long i, long j) {
    if (!in_band(i, j)) throw std::out_of_range("entry outside band");
    return data_[index(i, j)];
  }

  std::vector<std::vector<T>> dense() const {
    std::vector<std::vector<T>> out(static_cast<std::size_t>(size_),
                                    std::vector<T>(static_cast<std::size_t>(size_), zero_));
    for (long i = 0; i < size_; ++i) {
      for (long j = std::max(0L, i - lower_); j <= std::min(size_ - 1, i + upper_); ++j) {
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
      }
    }
    return out;
  }

 private:
  std::size_t index(long i, long j) const {
    return static_cast<std::size_t>(i * (lower_ + upper_ + 1) + (j - i + lower_));
  }

  long size_;
  long lower_;
  long upper_;
  T zero_;
  std::vector<T> data_;
};

using IntBandMatrix = BandMatrix<long long>;
using RealBandMatrix = BandMatrix<Real>;

// Banded product, bandwidths add.
IntBandMatrix multiply(const IntBandMatrix& a, const IntBandMatrix& b);

// (-Δ)^ell truncated to size x size: entry (m, n) = (-1)^(n-m) C(2ell, ell+n-m).
IntBandMatrix toeplitz_power(long ell, long size);

// T^ell for the Dirichlet matrix T = tridiag(-1, 2, -1), by repeated products.
// Row and column i stand for lattice index i + 1.
IntBandMatrix dirichlet_power(long ell, long size);

// Top-left (ell-1) x (ell-1) block of dirichlet_power - toeplitz_power.
std::vector<std::vector<long long>> corner_defect(long ell);

// Matrix of S^-k R_k on coordinates ell .. ell+size-1 (row/column i is
// coordinate ell + i). Columns below ell are dropped since u vanishes there.
// One superdiagonal and k subdiagonals.
RealBandMatrix remainder_factor(const LatticeSeq& g, long ell, long k, long size);

struct FactorizationOptions {
  long top_margin = -1;     // default ell
  long bottom_margin = -1;  // default 2 ell
  long omit_k = -1;         // leave this remainder out of the sum
};

struct FactorizationReport {
  long ell = 0;
  long size = 0;
  long first = 0;  // interior index range [first, last]
  long last = 0;
  Real max_residual;
  long worst_row = 0;
  long worst_col = 0;
};

// max |(-Δ)^ell - diag(ρ(g)) - Σ_k R̃_kᵀ R̃_k| over the interior block, with g at
// its own precision.
FactorizationReport factorization_check(const LatticeSeq& g, long ell, long size,
                                        const FactorizationOptions& opt = {});
// Same with g built at p plus difference guard bits; the residual is rounded to p.
FactorizationReport factorization_check(const SequenceFactory& g, long ell, long size, Precision p,
                                        const FactorizationOptions& opt = {});

// Dense row-major CSV, one matrix row per line.
void write_csv(std::ostream& os, const IntBandMatrix& m);
void write_csv(std::ostream& os, const RealBandMatrix& m);

}  // namespace hrb
