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

#include <cmath>
#include <complex>

#include "rpkit/tensorlab.hpp"
#include "support.hpp"

using namespace rpkit;
using testkit::Rng;

namespace {

Mat sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat sigma_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_SUITE("tensorlab") {

TEST_CASE("kron of identities and bit flips") {
  const Mat i2 = Mat::Identity(2, 2);
  CHECK(rel_residual(kron(i2, i2), Mat::Identity(4, 4)) == 0.0);

  Vec v00 = Vec::Zero(4);
  v00(0) = 1.0;  // |00>
  const Vec flipped = kron(sigma_x(), sigma_x()) * v00;
  CHECK(std::abs(flipped(3) - 1.0) < 1e-15);  // |11>
  CHECK(flipped.head(3).norm() < 1e-15);
}

TEST_CASE("kron trace multiplies and mixed product holds") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat a = testkit::random_matrix(rng, 3, 3);
    const Mat b = testkit::random_matrix(rng, 3, 3);
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);

    const Mat c = testkit::random_matrix(rng, 3, 2);
    const Mat d = testkit::random_matrix(rng, 3, 4);
    // (a (x) b)(c (x) d) = (ac) (x) (bd)
    CHECK(rel_residual(kron(a, b) * kron(c, d), kron(Mat(a * c), Mat(b * d))) <
          1e-13);
  }
}

TEST_CASE("three-factor kron is associative") {
  Rng rng(12);
  const Mat a = testkit::random_matrix(rng, 2, 2);
  const Mat b = testkit::random_matrix(rng, 3, 3);
  const Mat c = testkit::random_matrix(rng, 2, 2);
  CHECK(rel_residual(kron(a, b, c), kron(kron(a, b), c)) < 1e-14);
}

TEST_CASE("partial trace of the identity and of loop oracle instances") {
  const Mat reduced = partial_trace(Mat::Identity(4, 4), {2, 2}, {1});
  CHECK(rel_residual(reduced, Mat(2.0 * Mat::Identity(2, 2))) < 1e-15);

  Rng rng(13);
  for (int trial = 0; trial < 4; ++trial) {
    Mat rho = testkit::random_psd(rng, 6);
    rho /= rho.trace().real();
    for (const std::set<int>& keep :
         {std::set<int>{0}, std::set<int>{1}, std::set<int>{0, 1}}) {
      const Mat lib = partial_trace(rho, {2, 3}, keep);
      const Mat oracle = testkit::loop_partial_trace(rho, {2, 3}, keep);
      CHECK(rel_residual(lib, oracle) < 1e-12);
      CHECK(std::abs(lib.trace() - rho.trace()) < 1e-12);  // trace preserving
    }
  }
}

TEST_CASE("partial trace is linear") {
  Rng rng(14);
  const Mat a = testkit::random_matrix(rng, 8, 8);
  const Mat b = testkit::random_matrix(rng, 8, 8);
  const cplx alpha(0.3, -1.1);
  const FactorShape shape{2, 2, 2};
  const Mat lhs = partial_trace(Mat(alpha * a + b), shape, {0, 2});
  const Mat rhs = alpha * partial_trace(a, shape, {0, 2}) +
                  partial_trace(b, shape, {0, 2});
  CHECK(rel_residual(lhs, rhs) < 1e-13);
}

TEST_CASE("hermitian eigendecomposition on fixed spectra") {
  Mat d3 = Mat::Zero(3, 3);
  d3.diagonal() << 3.0, 1.0, 2.0;
  const HermEig e = herm_eig(d3);
  CHECK(std::abs(e.eigenvalues(0) - 1.0) < 1e-14);
  CHECK(std::abs(e.eigenvalues(1) - 2.0) < 1e-14);
  CHECK(std::abs(e.eigenvalues(2) - 3.0) < 1e-14);

  const HermEig ex = herm_eig(sigma_x());
  CHECK(std::abs(ex.eigenvalues(0) + 1.0) < 1e-14);
  CHECK(std::abs(ex.eigenvalues(1) - 1.0) < 1e-14);
}

TEST_CASE("hermitian eigendecomposition reconstructs and is unitary") {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat h = testkit::random_hermitian(rng, 16);
    const HermEig e = herm_eig(h);
    const Mat rebuilt = e.eigenvectors *
                        e.eigenvalues.cast<cplx>().asDiagonal() *
                        e.eigenvectors.adjoint();
    CHECK(rel_residual(rebuilt, h) < 1e-10);
    CHECK((e.eigenvectors.adjoint() * e.eigenvectors - Mat::Identity(16, 16))
              .norm() < 1e-10);
    for (Index k = 1; k < 16; ++k)
      CHECK(e.eigenvalues(k) >= e.eigenvalues(k - 1));
  }
}

TEST_CASE("non-hermitian input is rejected") {
  Mat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(herm_eig(m), NotHermitian);
}

TEST_CASE("psd functions on fixed matrices") {
  Rng rng(16);
  const Mat p = testkit::random_projection(rng, 5, 2);
  const Mat inv_sqrt = psd_function(p, [](double x) { return std::pow(x, -0.5); });
  CHECK(rel_residual(inv_sqrt, p) < 1e-12);

  Mat d2 = Mat::Zero(2, 2);
  d2(0, 0) = 4.0;
  const Mat root = psd_function(d2, [](double x) { return std::sqrt(x); });
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 2.0;
  CHECK(rel_residual(root, expected) < 1e-14);
}

TEST_CASE("imaginary powers cancel down to the support projection") {
  Rng rng(17);
  Mat xi = testkit::random_matrix(rng, 4, 3);
  xi = xi * xi.adjoint();  // PSD, rank 3
  const double t = 0.37;
  const Mat fwd = psd_function(
      xi, [&](double x) { return std::exp(cplx(0.0, 2.0 * t * std::log(x))); });
  const Mat bwd = psd_function(
      xi, [&](double x) { return std::exp(cplx(0.0, -2.0 * t * std::log(x))); });
  const Mat support = range_projection(xi);
  CHECK(rel_residual(Mat(fwd * bwd), support) < 1e-10);
}

TEST_CASE("identity map reproduces the input on its support") {
  Rng rng(18);
  const Mat xi = testkit::random_psd(rng, 5);
  const Mat same = psd_function(xi, [](double x) { return x; });
  CHECK(rel_residual(same, xi) < 1e-10);
}

TEST_CASE("negative spectrum is rejected as non positive") {
  CHECK_THROWS_AS(psd_function(Mat(-Mat::Identity(2, 2)),
                               [](double x) { return x; }),
                  NotPSD);
}

TEST_CASE("hermitian exponential matches the scalar exponential") {
  const Mat e = hermitian_exp(sigma_z(), -0.7);
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = std::exp(-0.7);
  expected(1, 1) = std::exp(0.7);
  CHECK(rel_residual(e, expected) < 1e-13);

  Rng rng(19);
  const Mat h = testkit::random_hermitian(rng, 6);
  // e^{-h} e^{h} = I
  CHECK(rel_residual(Mat(hermitian_exp(h, -1.0) * hermitian_exp(h, 1.0)),
                     Mat::Identity(6, 6)) < 1e-11);
}

TEST_CASE("pseudo inverse inverts on the support and kills the kernel") {
  Rng rng(20);
  Mat a = testkit::random_matrix(rng, 5, 3);
  const Mat xi = a * a.adjoint();
  const Mat pinv = psd_pseudo_inverse(xi);
  const Mat support = range_projection(xi);
  CHECK(rel_residual(Mat(pinv * xi), support) < 1e-9);
  CHECK(rel_residual(Mat(xi * pinv), support) < 1e-9);
  CHECK(std::abs(support.trace().real() - 3.0) < 1e-9);
}

TEST_CASE("matrix units and embeddings agree with explicit kron") {
  const Mat e01 = matrix_unit(3, 0, 1);
  CHECK(std::abs(e01(0, 1) - 1.0) < 1e-15);
  CHECK(e01.norm() == 1.0);

  Rng rng(21);
  const Mat op = testkit::random_matrix(rng, 2, 2);
  const FactorShape shape{2, 3, 2};
  const Mat lifted = embed_operator(op, {0}, shape);
  CHECK(rel_residual(lifted, kron(op, Mat::Identity(6, 6))) < 1e-14);
  const Mat lifted2 = embed_operator(op, {2}, shape);
  CHECK(rel_residual(lifted2, kron(Mat::Identity(6, 6), op)) < 1e-14);
}

TEST_CASE("embedding a two-site operator in swapped order transposes factors") {
  Rng rng(22);
  const Mat a = testkit::random_matrix(rng, 2, 2);
  const Mat b = testkit::random_matrix(rng, 2, 2);
  const FactorShape shape{2, 2};
  const Mat direct = embed_operator(kron(a, b), {0, 1}, shape);
  CHECK(rel_residual(direct, kron(a, b)) < 1e-14);
  const Mat swapped = embed_operator(kron(a, b), {1, 0}, shape);
  CHECK(rel_residual(swapped, kron(b, a)) < 1e-13);
}

TEST_CASE("flatten and reshape round trip row major") {
  Rng rng(23);
  const Mat m = testkit::random_matrix(rng, 3, 4);
  const Vec v = flatten_row_major(m);
  CHECK(std::abs(v(1) - m(0, 1)) < 1e-15);  // row major order
  CHECK(rel_residual(reshape_row_major(v, 3, 4), m) < 1e-15);
}

TEST_CASE("robust svd survives heavily tied singular values") {
  // 16 Pauli strings on two qubits as matrix rows: all rows are pairwise
  // orthogonal with equal norm 2, so every singular value equals exactly 2.
  // Heavily tied spectra like this are where fast SVD kernels go wrong.
  std::vector<Mat> paulis;
  const Mat i2 = Mat::Identity(2, 2);
  Mat sy(2, 2);
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  const std::vector<Mat> singles{i2, sigma_x(), sy, sigma_z()};
  for (const Mat& a : singles)
    for (const Mat& b : singles) paulis.push_back(kron(a, b));

  Mat stacked(16, 16);
  for (int k = 0; k < 16; ++k)
    stacked.row(k) = flatten_row_major(paulis[k]).transpose();

  const SvdData plain = robust_svd(stacked);
  REQUIRE(plain.singular_values.size() == 16);
  for (Index k = 0; k < 16; ++k)
    CHECK(std::abs(plain.singular_values(k) - 2.0) < 1e-12);

  const SvdData full =
      robust_svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Mat rebuilt = full.u *
                      full.singular_values.cast<cplx>().asDiagonal() *
                      full.v.adjoint();
  CHECK(rel_residual(rebuilt, stacked) < 1e-12);
  CHECK((full.u.adjoint() * full.u - Mat::Identity(16, 16)).norm() < 1e-12);
  CHECK((full.v.adjoint() * full.v - Mat::Identity(16, 16)).norm() < 1e-12);
}

TEST_CASE("robust svd matches the spectrum of a diagonal matrix") {
  Mat m = Mat::Zero(3, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const SvdData svd = robust_svd(m);
  CHECK(std::abs(svd.singular_values(0) - 3.0) < 1e-14);
  CHECK(std::abs(svd.singular_values(1) - 1.0) < 1e-14);
}

TEST_CASE("relative residual floors at tiny magnitudes") {
  const Mat z = Mat::Zero(2, 2);
  CHECK(rel_residual(z, z) == 0.0);
  CHECK(rel_residual(Mat::Identity(2, 2), Mat::Identity(2, 2)) == 0.0);
}

}  // TEST_SUITE
