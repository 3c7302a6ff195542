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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpkit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

// Ordered factor dimensions of a tensor-product space.
using FactorShape = std::vector<Index>;

// Project-wide defaults. All overridable per call.
struct Tolerances {
  double residual = 1e-9;  // relative residual tolerance
  double rank = 1e-10;     // rank threshold factor, times the largest eigenvalue
  double cluster = 1e-8;   // eigenvalue cluster width factor
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define RPKIT_DEFINE_ERROR(NAME)                            \
  class NAME : public Error {                               \
   public:                                                  \
    explicit NAME(const std::string& what) : Error(what) {} \
  }

RPKIT_DEFINE_ERROR(DimensionMismatch);
RPKIT_DEFINE_ERROR(NotHermitian);
RPKIT_DEFINE_ERROR(NotPSD);
RPKIT_DEFINE_ERROR(NotUnitary);
RPKIT_DEFINE_ERROR(NotProjection);
RPKIT_DEFINE_ERROR(NotRP);
RPKIT_DEFINE_ERROR(NotHermitianAssembly);
RPKIT_DEFINE_ERROR(NotGroundState);
RPKIT_DEFINE_ERROR(NotAFieldOperator);
RPKIT_DEFINE_ERROR(NoConvergence);
RPKIT_DEFINE_ERROR(ZeroVector);
RPKIT_DEFINE_ERROR(ZeroPF);
RPKIT_DEFINE_ERROR(NonIntegerBlock);
RPKIT_DEFINE_ERROR(InteractionAlgebraMismatch);
RPKIT_DEFINE_ERROR(CommutationFailure);
RPKIT_DEFINE_ERROR(FrustrationDetected);
RPKIT_DEFINE_ERROR(TooLarge);
RPKIT_DEFINE_ERROR(Inadmissible);
RPKIT_DEFINE_ERROR(ParseError);
RPKIT_DEFINE_ERROR(NonFiniteEntry);
RPKIT_DEFINE_ERROR(InvalidKrausSet);
RPKIT_DEFINE_ERROR(GaplessWarning);

#undef RPKIT_DEFINE_ERROR

inline Index shape_product(const FactorShape& shape) {
  Index p = 1;
  for (Index d : shape) p *= d;
  return p;
}

}  // namespace rpkit
