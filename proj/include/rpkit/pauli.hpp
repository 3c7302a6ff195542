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

#ifndef RPKIT_PAULI_HPP_
#define RPKIT_PAULI_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "rpkit/types.hpp"

namespace rpkit {

// i^phase * X(x) Z(z) with X(x) = prod_j sigma_x_j^{x_j} (bit j of the mask is
// qubit j) and Z(z) likewise; per qubit the X factor stands left of the Z one.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int phase = 0;  // exponent of i, mod 4

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.x == b.x && a.z == b.z && a.phase == b.phase;
  }
};

PauliString pauli_mul(const PauliString& a, const PauliString& b);
bool pauli_commute(const PauliString& a, const PauliString& b);
bool pauli_hermitian(const PauliString& p);

// Dense 2^n x 2^n matrix; qubit 0 is the most significant index factor.
Mat pauli_dense(int n, const PauliString& p);

// p * m without forming the dense matrix of p.
Mat pauli_apply_left(int n, const PauliString& p, const Mat& m);

// prod_i (I + g_i)/2 for commuting Hermitian generators; n <= 12.
Mat stabilizer_projector(int n, const std::vector<PauliString>& gens);

// GF(2) rank of the (x|z) mask rows.
Index pauli_rank(const std::vector<PauliString>& gens);

// Span basis in reduced (x|z) form, with GF(2) membership queries.
struct Gf2Span {
  std::vector<std::array<std::uint64_t, 2>> rows;  // reduced basis
  bool insert(std::uint64_t x, std::uint64_t z);   // true if rank grew
  bool contains(std::uint64_t x, std::uint64_t z) const;
  Index rank() const { return static_cast<Index>(rows.size()); }
};

// Structure of the algebra spanned by the Pauli group generated by `gens`
// (phases do not affect the span).
struct PauliSpanInfo {
  Index rank_k = 0;       // log2 of the linear dimension
  Index symp_rank_r = 0;  // rank of the commutation form on the span
  std::vector<Index> block_signature;          // 2^{k-r} copies of 2^{r/2}
  std::vector<std::array<std::uint64_t, 2>> basis;         // span basis masks
  std::vector<std::array<std::uint64_t, 2>> center_basis;  // radical masks
};

PauliSpanInfo pauli_span_info(const std::vector<PauliString>& gens);

// All 2^k products of the independent generators, phases tracked.
std::vector<PauliString> pauli_group_elements(const std::vector<PauliString>& gens);

// Partial trace over the qubits in minus_mask of the projector onto the joint
// +1 eigenspace, computed by enumerating group elements acting trivially
// there.  Returns a dense matrix on the remaining qubits (original order).
Mat stabilizer_reduced_projector(int n, const std::vector<PauliString>& gens,
                                 std::uint64_t minus_mask);

// Ground-space dimension of -sum(g): 2^(n - rank).
Index stabilizer_degeneracy(int n, const std::vector<PauliString>& gens);

}  // namespace rpkit

#endif  // RPKIT_PAULI_HPP_
