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

// Operator-state correspondence, Choi-matrix complete-positivity tests,
// reflection-positivity verdicts, and reflection positive Hamiltonians.

#include <vector>

#include "rpkit/bipartition.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

// Choi(Phi) = sum_{ij} |i><j| (x) Phi(|i><j|).
struct SuperOperator {
  Mat choi;
  Index dim = 0;  // Phi maps dim x dim matrices to dim x dim matrices
};

struct Verdict {
  bool yes = false;
  double min_eigenvalue = 0.0;
};

// O: theta_hat|eta> (x) |xi> -> |xi><eta|, extended linearly.
Mat o_map(const Vec& v, const Bipartition& b);
Vec o_inv(const Mat& m, const Bipartition& b);

// Choi matrix of X -> o_map(t * o_inv(X)).
SuperOperator conjugate_superop(const Mat& t, const Bipartition& b);

// Superoperator matrix of the same map acting on row-major vectorizations.
Mat conjugate_superop_matrix(const Mat& t, const Bipartition& b);

Verdict is_completely_positive(const SuperOperator& s, double tol = 1e-9);
Verdict is_rp_operator(const Mat& t, const Bipartition& b, double tol = 1e-9);
Verdict is_rp_state(const Vec& v, const Bipartition& b, double tol = 1e-9);

// Gram matrix of the positivity functional Y -> Tr(t Y) over the spanning
// family Theta(E_a) (x) E_b of reflected pairs; PSD iff t is reflection
// positive. Independent of the Choi route; used for cross-checking.
Mat rp_direct_gram(const Mat& t, const Bipartition& b);

struct RPHamiltonian {
  Mat h_plus;
  std::vector<Mat> cross_terms;
  Mat assembled;  // Theta(h_plus) (x) I + I (x) h_plus - sum_j Theta(O_j) (x) O_j
};

RPHamiltonian build_rp_hamiltonian(const Mat& h_plus, const std::vector<Mat>& cross_terms,
                                   const Bipartition& b, double tol = 1e-9);

}  // namespace rpkit
