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

#ifndef RPKIT_STARALG_HPP_
#define RPKIT_STARALG_HPP_

#include <vector>

#include "rpkit/bipartition.hpp"
#include "rpkit/tensorlab.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

// A *-closed unital subalgebra of p·M_d·p, stored as a Hilbert–Schmidt
// orthonormal basis of its linear span.
struct MatrixStarAlgebra {
  Index ambient_dim = 0;
  Mat unit;                // projection acting as the two-sided identity
  std::vector<Mat> basis;  // HS-orthonormal spanning matrices

  Index dim() const { return static_cast<Index>(basis.size()); }
};

struct CenterBlocks {
  MatrixStarAlgebra center;
  std::vector<Mat> minimal_central_projections;
  std::vector<Index> block_signature;  // sorted ascending block sizes
};

cplx hs_inner(const Mat& a, const Mat& b);

// Orthonormalize the span of `mats` (Hilbert–Schmidt inner product) via SVD;
// drops directions with singular value <= rank_tol * max singular value.
std::vector<Mat> orthonormalize_span(const std::vector<Mat>& mats, double rank_tol = 1e-10);

// Distance from x to the span of an HS-orthonormal set, relative to |x|.
double span_residual(const Mat& x, const std::vector<Mat>& basis);

// Right-nullspace basis (orthonormal columns) of m with threshold
// rank_tol * max singular value.
Mat nullspace(const Mat& m, double rank_tol = 1e-10);

// Smallest *-closed algebra containing the generators and the unit projection.
MatrixStarAlgebra generated_algebra(const std::vector<Mat>& generators, const Mat& unit,
                                    double rank_tol = 1e-10);

// {X = unit·X·unit : [X, b] = 0 for every basis element b}.
MatrixStarAlgebra commutant(const MatrixStarAlgebra& a, double rank_tol = 1e-10);

// Commutant of an arbitrary set of matrices inside unit·M·unit.  The result is
// always a *-algebra when the set is dagger-closed.
MatrixStarAlgebra commutant_of_set(const std::vector<Mat>& mats, const Mat& unit,
                                   double rank_tol = 1e-10);

// Center, its minimal projections, and the Wedderburn block sizes.
CenterBlocks center_and_blocks(const MatrixStarAlgebra& a, std::uint64_t seed = 20260823);

std::vector<Index> block_signature(const MatrixStarAlgebra& a);

// Algebra generated by the minus-side block compressions of o, cross-checked
// against the bicommutant route through the local commutant.
MatrixStarAlgebra interaction_algebra(const Mat& o, const Bipartition& b, double tol = 1e-8);

bool algebra_equal(const MatrixStarAlgebra& a, const MatrixStarAlgebra& b, double tol = 1e-9);

bool iso_signature_equal(const MatrixStarAlgebra& a, const MatrixStarAlgebra& b);

}  // namespace rpkit

#endif  // RPKIT_STARALG_HPP_
