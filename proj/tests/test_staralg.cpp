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

#include <doctest.h>

#include <algorithm>

#include "rpkit/pauli.hpp"
#include "rpkit/staralg.hpp"
#include "support.hpp"

using namespace rpkit;
using testkit::Rng;

namespace {

Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// A random generated subalgebra of M_d from a few Gaussian generators closed
// under the adjoint.
MatrixStarAlgebra random_algebra(Rng& rng, Index d, int n_gens) {
  std::vector<Mat> gens;
  for (int k = 0; k < n_gens; ++k) {
    const Mat g = testkit::random_matrix(rng, d, d);
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  return generated_algebra(gens, Mat::Identity(d, d));
}

}  // namespace

TEST_SUITE("staralg") {

TEST_CASE("orthonormalization and span residuals") {
  Rng rng(71);
  const Mat a = testkit::random_matrix(rng, 3, 3);
  const auto basis = orthonormalize_span({a, Mat(2.0 * a), testkit::random_matrix(rng, 3, 3)});
  CHECK(basis.size() == 2);  // the duplicate direction collapses
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) {
      const cplx g = hs_inner(basis[i], basis[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  CHECK(span_residual(a, basis) < 1e-12);
}

TEST_CASE("empty generating set returns the scaled unit") {
  Rng rng(72);
  const Mat p = testkit::random_projection(rng, 4, 2);
  const MatrixStarAlgebra a = generated_algebra({}, p);
  CHECK(a.dim() == 1);
  CHECK(span_residual(p, a.basis) < 1e-12);
}

TEST_CASE("two anticommuting involutions generate a full factor") {
  const Mat id2 = Mat::Identity(2, 2);
  const MatrixStarAlgebra a = generated_algebra(
      {kron(sx(), id2), kron(sz(), id2)}, Mat::Identity(4, 4));
  CHECK(a.dim() == 4);  // M_2 (x) I
  CHECK(block_signature(a) == std::vector<Index>{2});
  // Closure: products of basis elements stay inside the span.
  Rng rng(73);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat x = a.basis[rng() % a.basis.size()] * a.basis[rng() % a.basis.size()];
    CHECK(span_residual(x, a.basis) < 1e-9);
  }
}

TEST_CASE("pair generators along a line give a four dimensional factor") {
  // X on edges (1,2) and Z on edges (2,3) of a three edge chain.
  const Mat g1 = pauli_dense(3, PauliString{0b011, 0, 0});
  const Mat g2 = pauli_dense(3, testkit::hermitian_pauli(0, 0b110));
  const MatrixStarAlgebra a = generated_algebra({g1, g2}, Mat::Identity(8, 8));
  CHECK(a.dim() == 4);
  CHECK(block_signature(a) == std::vector<Index>{2});
}

TEST_CASE("commutants of the extremes") {
  Rng rng(74);
  const MatrixStarAlgebra full = generated_algebra(
      {testkit::random_matrix(rng, 3, 3), testkit::random_matrix(rng, 3, 3),
       testkit::random_matrix(rng, 3, 3).adjoint(),
       testkit::random_matrix(rng, 3, 3)},
      Mat::Identity(3, 3));
  // Generic generators produce everything; its commutant is the scalars.
  if (full.dim() == 9) {
    const MatrixStarAlgebra c = commutant(full);
    CHECK(c.dim() == 1);
    CHECK(span_residual(Mat::Identity(3, 3), c.basis) < 1e-9);
  }

  std::vector<Mat> diag_gens;
  for (Index k = 0; k < 3; ++k) diag_gens.push_back(matrix_unit(3, k, k));
  const MatrixStarAlgebra diag = generated_algebra(diag_gens, Mat::Identity(3, 3));
  CHECK(diag.dim() == 3);
  const MatrixStarAlgebra dc = commutant(diag);
  CHECK(dc.dim() == 3);  // maximal abelian equals its own commutant
  for (const Mat& x : dc.basis) CHECK(span_residual(x, diag.basis) < 1e-9);
}

TEST_CASE("double commutant restores random generated algebras") {
  Rng rng(75);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixStarAlgebra a;
    switch (trial % 3) {
      case 0:  // generically all of M_8
        a = random_algebra(rng, 8, 1 + trial % 2);
        break;
      case 1: {  // M_4 (x) I, a proper factor
        const Mat g = testkit::random_matrix(rng, 4, 4);
        a = generated_algebra({kron(g, Mat::Identity(2, 2)),
                               kron(Mat(g.adjoint()), Mat::Identity(2, 2))},
                              Mat::Identity(8, 8));
        break;
      }
      default: {  // block diagonal sum of two factors
        const Mat g1 = testkit::random_matrix(rng, 4, 4);
        const Mat g2 = testkit::random_matrix(rng, 4, 4);
        Mat gen = Mat::Zero(8, 8);
        gen.topLeftCorner(4, 4) = g1;
        gen.bottomRightCorner(4, 4) = g2;
        a = generated_algebra({gen, Mat(gen.adjoint())}, Mat::Identity(8, 8));
        break;
      }
    }
    const MatrixStarAlgebra back = commutant(commutant(a));
    CHECK(algebra_equal(a, back, 1e-8));
  }
}

TEST_CASE("centers and blocks of a direct sum") {
  // M_2 + scalars embedded in M_3.
  std::vector<Mat> gens;
  Mat g = Mat::Zero(3, 3);
  g.topLeftCorner(2, 2) = sx();
  gens.push_back(g);
  g.topLeftCorner(2, 2) = sz();
  gens.push_back(g);
  const MatrixStarAlgebra a = generated_algebra(gens, Mat::Identity(3, 3));
  CHECK(a.dim() == 5);  // 4 + 1
  const CenterBlocks cb = center_and_blocks(a);
  CHECK(cb.block_signature == std::vector<Index>{1, 2});
  CHECK(cb.center.dim() == 2);
  CHECK(cb.minimal_central_projections.size() == 2);
  Mat sum = Mat::Zero(3, 3);
  for (const Mat& p : cb.minimal_central_projections) {
    CHECK(rel_residual(Mat(p * p), p) < 1e-9);
    sum += p;
  }
  CHECK(rel_residual(sum, a.unit) < 1e-9);
}

TEST_CASE("block bookkeeping on random algebras") {
  Rng rng(76);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixStarAlgebra a = random_algebra(rng, 6, 1);
    const auto sig = block_signature(a);
    Index total = 0;
    for (Index s : sig) total += s * s;
    CHECK(total == a.dim());
  }
}

TEST_CASE("compressions of a crossing operator generate its plus factor") {
  Rng rng(77);
  const Bipartition b = make_bipartition({3}, Mat::Identity(3, 3));
  const Mat a = testkit::random_matrix(rng, 3, 3);
  const Mat bb = testkit::random_matrix(rng, 3, 3);
  const MatrixStarAlgebra alg = interaction_algebra(kron(a, bb), b);
  const MatrixStarAlgebra expected =
      generated_algebra({bb, Mat(bb.adjoint())}, Mat::Identity(3, 3));
  CHECK(algebra_equal(alg, expected, 1e-8));
}

TEST_CASE("crossing sums generate the algebra of their factors") {
  Rng rng(78);
  const Bipartition b = qubit_bipartition(1);
  const Mat o1 = testkit::random_hermitian(rng, 2);
  const Mat o2 = testkit::random_hermitian(rng, 2);
  const Mat t = kron(Theta(o1, b), o1) + kron(Theta(o2, b), o2);
  const MatrixStarAlgebra alg = interaction_algebra(t, b);
  const MatrixStarAlgebra expected =
      generated_algebra({o1, o2}, Mat::Identity(2, 2));
  CHECK(algebra_equal(alg, expected, 1e-8));
}

TEST_CASE("span comparison distinguishes the two factor embeddings") {
  const Mat id2 = Mat::Identity(2, 2);
  const MatrixStarAlgebra left = generated_algebra(
      {kron(sx(), id2), kron(sz(), id2)}, Mat::Identity(4, 4));
  const MatrixStarAlgebra right = generated_algebra(
      {kron(id2, sx()), kron(id2, sz())}, Mat::Identity(4, 4));
  CHECK(algebra_equal(left, left, 1e-9));
  CHECK(!algebra_equal(left, right, 1e-9));
  // Same abstract shape though.
  CHECK(iso_signature_equal(left, right));
}

TEST_CASE("signature comparison is a multiset comparison") {
  Rng rng(79);
  const MatrixStarAlgebra m2 = generated_algebra({sx(), sz()}, Mat::Identity(2, 2));
  std::vector<Mat> diag_gens{matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)};
  const MatrixStarAlgebra diag = generated_algebra(diag_gens, Mat::Identity(2, 2));
  CHECK(iso_signature_equal(m2, m2));
  CHECK(!iso_signature_equal(m2, diag));  // {2} vs {1,1}
}

}  // TEST_SUITE
