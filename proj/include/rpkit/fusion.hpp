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

#ifndef RPKIT_FUSION_HPP_
#define RPKIT_FUSION_HPP_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rpkit/types.hpp"

namespace rpkit {

// Fusion rules N_{ij}^k with duals and quantum dimensions.  Label 0 is the
// unit object.
struct FusionData {
  std::vector<std::string> labels;
  std::vector<Index> dual;
  std::vector<Eigen::MatrixXi> fusion;  // fusion[i](j, k) = N_{ij}^k
  RVec qdim;                            // largest eigenvalue of each N_i
  double global_dim = 0.0;              // sum of squared quantum dimensions

  Index size() const { return static_cast<Index>(labels.size()); }
};

// Validates unit/dual/associativity bookkeeping and recomputes the quantum
// dimensions from the fusion multiplicities; d(i) d(j) = sum_k N_{ij}^k d(k)
// must hold to 1e-12 relative accuracy.
FusionData make_fusion_data(std::vector<std::string> labels,
                            std::vector<Index> dual,
                            std::vector<Eigen::MatrixXi> fusion);

// Built-ins: "trivial", "vec_z2", "fibonacci", "ising".
FusionData builtin_fusion(const std::string& name);

// Multiplicity of each total charge in A^m, A = direct sum of all objects.
std::vector<long long> fusion_charge_multiplicities(const FusionData& data,
                                                    Index m);

// dim hom(A^m, A^n); m, n <= 12.
long long fusion_hom_dims(const FusionData& data, Index m, Index n);

// Multiset {multiplicity of x in A^m : x with nonzero multiplicity}, sorted.
std::vector<Index> fusion_block_signature(const FusionData& data, Index m);

// One boundary tube labelled by alternating horizontal/vertical edges
// (i_l, i'_l, k_l, k'_l), 1-based along the tube.
struct TubeLabels {
  std::vector<std::array<Index, 4>> edges;
};

// Difference of entropy-like weights between the two path gauges of a
// string-net boundary tube: log(d(i_n) prod_l d(k_l)) -
// log(d(k'_1) prod_l d(i'_l)).  Requires k'_l = i_{l-1} for l >= 2; the
// modular eigenvalue at time t is exp(i t exponent).
double stringnet_modular_spectrum(const FusionData& data,
                                  const TubeLabels& labels);

}  // namespace rpkit

#endif  // RPKIT_FUSION_HPP_
