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

// The split H = H_minus (x) H_plus with the reflection antiunitary
// theta_hat(v) = theta_unitary * conj(v) and the induced conjugate-linear
// *-isomorphism Theta from operators on H_plus to operators on H_minus.

#include "rpkit/tensorlab.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

struct Bipartition {
  Index dim_minus = 0;
  Index dim_plus = 0;
  FactorShape plus_shape;   // per-site dimensions on the upper half
  FactorShape minus_shape;  // mirrored ordering: minus factor k pairs with plus factor k
  Mat theta_unitary;        // dim_minus x dim_plus
  // site_map[k] = plus factor index reflected onto minus factor k.
  std::vector<int> site_map;

  FactorShape ambient_shape() const;
  Index ambient_dim() const { return dim_minus * dim_plus; }
};

// theta_unitary given explicitly; validates unitarity and the involution
// condition theta_unitary * conj(theta_unitary) = I.
Bipartition make_bipartition(const FactorShape& plus_shape, const Mat& theta_unitary,
                             double tol = 1e-10);

// Compiled from site data: the reflection sends plus factor site_map[k] onto
// minus factor k, with an optional on-site unitary twist theta0 applied before
// entrywise conjugation. Empty twists mean plain conjugation.
Bipartition make_bipartition_from_sites(const FactorShape& plus_shape,
                                        const std::vector<int>& site_map,
                                        const std::vector<Mat>& theta0 = {},
                                        double tol = 1e-10);

// n mirrored qubit pairs, identity pairing, plain conjugation.
Bipartition qubit_bipartition(int n_plus_sites);

Vec theta_hat(const Vec& v, const Bipartition& b);
Vec theta_hat_inverse(const Vec& v, const Bipartition& b);

// Theta(X) = theta_hat X theta_hat^{-1} = U conj(X) U^dag.
Mat Theta(const Mat& x, const Bipartition& b);
Mat Theta_inverse(const Mat& y, const Bipartition& b);

// sum_i theta_hat|i> (x) |i> over the computational basis of H_plus.
Vec max_entangled(const Bipartition& b);

}  // namespace rpkit
