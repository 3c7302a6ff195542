// Copyright 2026 The rpkit developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Deterministic dense complex linear algebra: tensor products, partial traces,
// Hermitian eigendecompositions, and functions of PSD matrices on their supports.

#include <functional>
#include <set>

#include "rpkit/types.hpp"

namespace rpkit {

struct HermEig {
  RVec eigenvalues;  // ascending
  Mat eigenvectors;  // unitary, columns; phases fixed deterministically
};

Mat kron(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b, const Mat& c);

// Partial trace over the factors not listed in `keep`. Kept factors stay in
// their original order.
Mat partial_trace(const Mat& m, const FactorShape& shape,
                  const std::set<int>& keep);

// Requires ||m - m^dag||_F <= herm_tol * ||m||_F. Ties in the spectrum are
// resolved by ascending order and by making the largest-magnitude entry of each
// eigenvector real positive (first such entry on exact magnitude ties).
HermEig herm_eig(const Mat& m, double herm_tol = 1e-9);

// f applied to eigenvalues strictly above rank_tol * lambda_max; the rest map
// to 0. f may be complex-valued (imaginary powers of a positive matrix).
Mat psd_function(const Mat& m, const std::function<cplx(double)>& f,
                 double rank_tol = 1e-10);

// e^{factor * h} for Hermitian h, by eigendecomposition.
Mat hermitian_exp(const Mat& h, double factor);

// Range projection of a PSD matrix at the shared rank threshold.
Mat range_projection(const Mat& psd, double rank_tol = 1e-10);

// Support pseudo-inverse of a PSD matrix.
Mat psd_pseudo_inverse(const Mat& psd, double rank_tol = 1e-10);

Mat matrix_unit(Index d, Index i, Index j);

// Lift an operator acting on the factors listed in `positions` (in that order)
// to the full product space described by `shape`.
Mat embed_operator(const Mat& op, const std::vector<int>& positions,
                   const FactorShape& shape);

// Flatten/reshape between vectors on a product space and matrices indexed by
// (first factor, second factor), first factor major.
Vec flatten_row_major(const Mat& m);
Mat reshape_row_major(const Vec& v, Index rows, Index cols);

// Singular value decomposition hardened against spectra with many exact ties,
// which the fast bidiagonal divide-and-conquer kernel can silently mangle.
// The fast result is accepted only if its singular values are finite,
// nonnegative, and carry the full Frobenius mass of the input, and (when both
// factor matrices are requested) reproduce the action of the input on a probe
// vector; otherwise the one-sided Jacobi algorithm is used.
struct SvdData {
  RVec singular_values;  // descending
  Mat u;                 // empty unless requested via svd options
  Mat v;                 // empty unless requested via svd options
};
SvdData robust_svd(const Mat& m, unsigned options = 0);

double rel_residual(const Mat& a, const Mat& b);
void require_finite(const Mat& m, const std::string& context);

}  // namespace rpkit
