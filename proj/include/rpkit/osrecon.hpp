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

#ifndef RPKIT_OSRECON_HPP_
#define RPKIT_OSRECON_HPP_

#include <vector>

#include "rpkit/bipartition.hpp"
#include "rpkit/staralg.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

// Everything produced by reconstructing the physical Hilbert space from a
// reflection positive projection.
struct OSRResult {
  Bipartition b;
  Mat pi;
  double trace_pi = 0.0;
  Mat pi_hat;           // entanglement support on the plus factor
  Mat xi;               // positive ground-state matrix; invertible on pi_hat
  Mat f_central;        // (1/TrPi) sum_i W_i W_i^dag, central in the cut
                        //   commutant
  Mat vacuum_density;   // (1/TrPi) partial trace of pi over the minus factor
  Mat gram;             // the averaged bilinear form on the generating set
  RVec phys_eigenvalues;
  std::vector<Mat> phys_basis;     // X_k with <X_j, X_k> = lambda_k delta_jk
  std::vector<Mat> emap_phys_adj;  // cached E(X_k^dag)
  MatrixStarAlgebra interaction_alg;  // generated by the minus-blocks of pi
  MatrixStarAlgebra field_algebra;    // the above cut down by pi_hat
  Vec vacuum_vector;    // coordinates of the class of I in the orthonormal
                        //   physical basis
  double verification_residual = 0.0;

  Index phys_dim() const { return static_cast<Index>(phys_basis.size()); }
};

// (1/TrPi) Tr_minus(pi (Theta(x^dag) (x) I)): the conditional-expectation-like
// idempotent onto the compressed interaction algebra.
Mat e_map(const Mat& x, const Mat& pi, const Bipartition& b, bool verify = true,
          double tol = 1e-8);

// Gram matrix <g_a, g_b> = Tr(E(g_a^dag) g_b) over a generating set of the
// plus observable algebra (matrix units when generating is empty).
Mat os_form(const Mat& pi, const Bipartition& b,
            const std::vector<Mat>& generating = {}, bool verify = true,
            double tol = 1e-8);

// Full reconstruction; verifies the compressed-conjugation map is a unital
// *-isomorphism onto the physical operators and that both vacuum
// presentations agree.
OSRResult field_algebra(const Mat& pi, const Bipartition& b, bool verify_rp = true,
                        double tol = 1e-8, double rank_tol = 1e-10);

// Matrix of the action of t on the physical space, in the orthonormal basis;
// throws NotAFieldOperator unless the compression of t lies in the field
// algebra and t maps the support complement to the support complement.
Mat field_operator(const Mat& t, const OSRResult& osr, double tol = 1e-8);

// Unitary implementing the vacuum modular flow at time t on the plus factor
// (identity outside the entanglement support).
Mat modular_flow(const OSRResult& osr, double t);

// True when the flow fixes every operator: all nonzero eigenvalues of the
// ground-state matrix coincide (xi proportional to its support projection).
bool modular_trivial(const OSRResult& osr, double rel_tol = 1e-8);

}  // namespace rpkit

#endif  // RPKIT_OSRECON_HPP_
