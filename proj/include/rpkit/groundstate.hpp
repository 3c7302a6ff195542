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

#ifndef RPKIT_GROUNDSTATE_HPP_
#define RPKIT_GROUNDSTATE_HPP_

#include <vector>

#include "rpkit/bipartition.hpp"
#include "rpkit/rpcore.hpp"
#include "rpkit/staralg.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

struct GroundData {
  Mat h;               // the Hamiltonian the data was computed from
  double energy_e0 = 0.0;
  Mat projection_pi;   // orthogonal projection onto the ground space
  Index degeneracy = 0;
  double gap = 0.0;    // distance to the next eigenvalue (inf if none)
  Vec phi_pf;          // canonical positive ground state (unnormalized)
  Mat pi_hat;          // entanglement support on the plus factor
};

// Doubled system on (minus x flag) x (plus x flag); the four flag sectors
// carry the full Hamiltonian, the two one-sided sums, and the cross part.
struct DilatedSystem {
  Bipartition lifted;
  Mat big_h;
  Mat block_full;        // minus flag 0, plus flag 0
  Mat block_cross_plus;  // minus flag 1, plus flag 0: cross + plus part
  Mat block_minus_cross; // minus flag 0, plus flag 1: minus part + cross
  Mat block_cross;       // minus flag 1, plus flag 1
  RVec block_energies;   // ground energies in the order above
  double shift_minus = 0.0;  // subtracted ground energies of the one-sided parts
  double shift_plus = 0.0;
  Vec pf_pair;           // canonical positive ground state of big_h
  Vec phi_pf_full;       // its nonzero flag-sector components
  Vec phi_pf_cross;
};

struct LtqoReport {
  bool nondegenerate = false;
  bool ltqo = false;
  bool agree = false;
  Index degeneracy = 0;        // of the full Hamiltonian
  Index cross_degeneracy = 0;  // of the cross + plus part
  Index witness_j = -1;        // violating pair for the indistinguishability
  Index witness_k = -1;        //   test, if any
  double max_offdiag = 0.0;
  double max_diag_spread = 0.0;
};

GroundData ground_projection(const Mat& h, double cluster_tol = 1e-8);

// Fills phi_pf (= Pi applied to the maximally entangled vector) and pi_hat
// (range of the reduced ground projection); verifies the two ranges agree.
GroundData canonical_pf_ground_state(GroundData g, const Bipartition& b,
                                     bool verify_rp = false, double tol = 1e-8);

// {X on the plus factor : (I(x)X) commutes with o and its adjoint}.
MatrixStarAlgebra local_commutant(const Mat& o, const Bipartition& b,
                                  double rank_tol = 1e-10);

// The plus-factor operator W with phi = (I(x)W) phi_pf; lies in the cut-down
// local commutant of h.
Mat ground_state_to_w(const Vec& phi, const GroundData& g, const Bipartition& b,
                      double tol = 1e-8);

DilatedSystem dilate(const Mat& h_minus, const Mat& h_plus,
                     const std::vector<Mat>& cross_terms, const Bipartition& b,
                     bool verify_rp = true, double tol = 1e-9);

// Equivalence of ground-state uniqueness with local indistinguishability of
// the cross-part ground states.
LtqoReport ltqo_check(const Mat& h_minus, const Mat& h_plus,
                      const std::vector<Mat>& cross_terms, const Bipartition& b,
                      double tol = 1e-9);

}  // namespace rpkit

#endif  // RPKIT_GROUNDSTATE_HPP_
