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

#ifndef RPKIT_PFENGINE_HPP_
#define RPKIT_PFENGINE_HPP_

#include <vector>

#include "rpkit/staralg.hpp"
#include "rpkit/tensorlab.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

// Completely positive map X -> sum_i K_i X K_i^dag whose Kraus list is closed
// under the adjoint as a set, making the map symmetric for the trace pairing.
struct SymmetricCPMap {
  std::vector<Mat> kraus;
  Index dim = 0;
};

struct PFResult {
  double rho = 0.0;      // spectral radius
  Mat xi;                // canonical positive eigenvector at rho
  Mat p_max;             // projection onto the range of xi
  Index cesaro_iterations = 0;
  double residual = 0.0;  // last distance between successive running means
};

struct EigenspaceStructure {
  bool yes = false;
  bool dims_match = false;
  double max_residual = 0.0;
  Index eigenspace_dim = 0;
  Index sandwich_dim = 0;  // dim of the compressed bimodule algebra
};

struct FixedPointDomainReport {
  bool yes = false;
  double max_residual = 0.0;
  Index fixed_dim = 0;
};

// Validates dagger-closure (as a set) and linear independence of the Kraus list.
SymmetricCPMap make_symmetric_cp_map(const std::vector<Mat>& kraus, double tol = 1e-9);

Mat apply_map(const SymmetricCPMap& psi, const Mat& x);

// d^2 x d^2 matrix of the map on row-major vectorizations; Hermitian for
// dagger-closed Kraus sets.
Mat transfer_matrix(const SymmetricCPMap& psi);

double spectral_radius(const SymmetricCPMap& psi);

// Cesaro average of psi^n(I)/rho^n (with a geometric burn-in) until successive
// running means differ by less than tol.
PFResult canonical_pf(const SymmetricCPMap& psi, Index max_iters = 200000,
                      double tol = 1e-10);

// Kraus set {K_i p}; preserves the top eigenspace when p is the maximal
// support projection.
SymmetricCPMap truncate(const SymmetricCPMap& psi, const Mat& p, double tol = 1e-8);

// Largest subalgebra over which psi acts as a bimodule map: the commutant of
// the (dagger-closed) Kraus set.
MatrixStarAlgebra bim(const SymmetricCPMap& psi);

// Orthonormal matrix basis of the transfer-matrix eigenspace at the spectral
// radius (cluster width cluster_tol * rho).
std::vector<Mat> pf_eigenspace(const SymmetricCPMap& psi, double cluster_tol = 1e-8);

// Checks that xi^(1/2) X xi^(1/2) for X in bim(psi).p_max spans the top
// eigenspace, and that the dimensions agree.
EigenspaceStructure verify_eigenspace_structure(const SymmetricCPMap& psi,
                                                double tol = 1e-8);

// For a unital map with a faithful invariant state: every fixed point must lie
// in the multiplicative domain (Schwarz equality in both orders).
FixedPointDomainReport verify_fixed_point_domain(const SymmetricCPMap& psi,
                                                 const Mat& state, double tol = 1e-8);

}  // namespace rpkit

#endif  // RPKIT_PFENGINE_HPP_
