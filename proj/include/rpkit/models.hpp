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

#ifndef RPKIT_MODELS_HPP_
#define RPKIT_MODELS_HPP_

#include <string>
#include <vector>

#include "rpkit/bipartition.hpp"
#include "rpkit/pauli.hpp"
#include "rpkit/staralg.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

// Reflection-symmetric patch of the surface code on a 45-degree rotated
// square lattice, cut along a horizontal line.  Only the upper (plus) half is
// stored; the lower half is its mirror image.  Plus-side qubits sit on the
// lattice edges: row 1 holds the L edges closest to the cut (labels e1..eL,
// left to right), row 2 holds deeper edges (labels f2..).  Pure-plus terms
// and the plus factors of crossing terms are Pauli strings on the plus
// qubits; every term enters the Hamiltonian in projector normalization
// (I - T)/2.
struct ToricRegion {
  Index l = 0;
  Index depth = 1;
  Index n_plus = 0;
  std::vector<std::string> plus_labels;
  std::vector<int> site_distance;          // row number per plus qubit
  std::vector<PauliString> plus_terms;     // plus-local masks
  std::vector<PauliString> cross_factors;  // plus-local masks
  Bipartition bipartition;
};

// Open slab of axis length l (>= 2) and depth 1 or 2.  Depth 1 keeps row 1
// only: crossing star terms on edge pairs (e_{2k-1}, e_{2k}) and crossing
// plaquette terms on (e_{2k}, e_{2k+1}).  Depth 2 adds the row-2 edges that
// complete interior stars above the plaquettes.
ToricRegion toric_slab(Index l, Index depth);

// Slab of even length l closed off into a patch with a unique ground state:
// row-1 pair plaquettes, end caps (single-qubit crossing Z terms at e1 and
// e_l), and the mirrored lower terms.  With drop_end_cap (needs l >= 4) the
// e_l cap and the last crossing plaquette are omitted, leaving a two-fold
// degenerate model.
ToricRegion toric_closed_patch(Index l, bool drop_end_cap = false);

struct ToricParts {
  Mat h_minus;
  Mat h_plus;
  std::vector<Mat> cross_terms;  // crossing factors scaled by 1/sqrt(2)
};

ToricParts toric_parts(const ToricRegion& r);

// Dense assembled Hamiltonian; ambient dimension <= 1024.
Mat toric_full_hamiltonian(const ToricRegion& r);

// All stabilizer terms as ambient Pauli strings (minus qubits 0..n-1 mirror
// plus qubits n..2n-1).
std::vector<PauliString> toric_ambient_stabilizers(const ToricRegion& r);

// Boundary algebra A_L on the l axis qubits, generated by the pair operators
// G_j on (j, j+1): X-type for odd j, Z-type for even j (1-based).
std::vector<PauliString> boundary_generators(Index l);
PauliSpanInfo toric_boundary_algebra(Index l);         // 2 <= l <= 12
MatrixStarAlgebra toric_boundary_algebra_dense(Index l);  // 2 <= l <= 6

struct JonesReport {
  Index l = 0;
  Index dim_lm1 = 0;
  Index dim_l = 0;
  Index dim_lp1 = 0;
  bool tower_relation = false;  // e a e = E(a) e over a basis of A_L
  bool dim_growth = false;      // dim A_{L+1} = 4 dim A_{L-1}
  bool dense_checked = false;
  double seed_residual = 0.0;   // dense |e (x1 x2) e| for the first X pair
  double witness_residual = 0.0;  // dense |e a e - a e| for a commuting member
};

// Compression identity for the tower A_{L-1} in A_L in A_{L+1} with
// e_{L+1} = (I + G_L)/2; 2 <= l <= 10.
JonesReport toric_jones_tower_check(Index l);

}  // namespace rpkit

#endif  // RPKIT_MODELS_HPP_
