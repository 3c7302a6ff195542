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

#include "rpkit/pfengine.hpp"
#include "support.hpp"

using namespace rpkit;
using testkit::Rng;

namespace {

Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

// Power iteration on the map itself, entirely independent of the transfer
// matrix eigensolve.
double power_iteration_radius(const SymmetricCPMap& psi, int iters) {
  Mat x = Mat::Identity(psi.dim, psi.dim);
  double norm = x.norm();
  for (int k = 0; k < iters; ++k) {
    x = apply_map(psi, x);
    norm = x.norm();
    x /= norm;
  }
  return norm;
}

}  // namespace

TEST_SUITE("pfengine") {

TEST_CASE("kraus list validation") {
  Mat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(make_symmetric_cp_map({m}), InvalidKrausSet);
  CHECK_NOTHROW(make_symmetric_cp_map({m, Mat(m.adjoint())}));
  CHECK_THROWS_AS(make_symmetric_cp_map({sx(), Mat(2.0 * sx())}),
                  InvalidKrausSet);
  CHECK_THROWS_AS(make_symmetric_cp_map({}), InvalidKrausSet);
}

TEST_CASE("symmetry of the trace pairing") {
  Rng rng(61);
  const auto psi = make_symmetric_cp_map(testkit::random_kraus_set(rng, 4, false));
  for (int trial = 0; trial < 5; ++trial) {
    const Mat x = testkit::random_matrix(rng, 4, 4);
    const Mat y = testkit::random_matrix(rng, 4, 4);
    const cplx lhs = (apply_map(psi, x) * y).trace();
    const cplx rhs = (x * apply_map(psi, y)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("transfer matrix represents the map") {
  Rng rng(62);
  const auto psi = make_symmetric_cp_map(testkit::random_kraus_set(rng, 3, false));
  const Mat t = transfer_matrix(psi);
  CHECK((t - t.adjoint()).norm() < 1e-11 * t.norm());
  for (int trial = 0; trial < 5; ++trial) {
    const Mat x = testkit::random_matrix(rng, 3, 3);
    const Vec out = t * flatten_row_major(x);
    CHECK(rel_residual(reshape_row_major(out, 3, 3), apply_map(psi, x)) < 1e-12);
  }
}

TEST_CASE("spectral radius on fixed channels and against power iteration") {
  CHECK(std::abs(spectral_radius(make_symmetric_cp_map({sx()})) - 1.0) < 1e-12);
  const Mat scaled = std::sqrt(2.0) * Mat::Identity(2, 2);
  CHECK(std::abs(spectral_radius(make_symmetric_cp_map({scaled})) - 2.0) < 1e-12);

  Rng rng(63);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = make_symmetric_cp_map(testkit::random_kraus_set(rng, 4, false));
    const double lib = spectral_radius(psi);
    const double oracle = power_iteration_radius(psi, 300);
    CHECK(std::abs(lib - oracle) < 1e-8 * std::max(1.0, lib));
  }
}

TEST_CASE("canonical eigenvector of an idempotent compression map") {
  Rng rng(64);
  const Mat p = testkit::random_projection(rng, 4, 2);
  const auto psi = make_symmetric_cp_map({p});
  const PFResult pf = canonical_pf(psi);
  CHECK(std::abs(pf.rho - 1.0) < 1e-9);
  // The limit reduces to one application on the identity.
  CHECK(rel_residual(pf.xi, apply_map(psi, Mat::Identity(4, 4))) < 1e-8);
  CHECK(rel_residual(pf.p_max, p) < 1e-8);
}

TEST_CASE("canonical eigenvector of a reflection channel is the identity") {
  const auto psi = make_symmetric_cp_map({sx()});
  const PFResult pf = canonical_pf(psi);
  CHECK(rel_residual(pf.xi, Mat::Identity(2, 2)) < 1e-9);
  CHECK(rel_residual(pf.p_max, Mat::Identity(2, 2)) < 1e-9);
}

TEST_CASE("canonical eigenvector is a maximal eigenvector on random maps") {
  Rng rng(65);
  for (int trial = 0; trial < 6; ++trial) {
    const bool kernel = trial % 2 == 1;
    const auto psi =
        make_symmetric_cp_map(testkit::random_kraus_set(rng, 4, kernel));
    const PFResult pf = canonical_pf(psi);
    CHECK(rel_residual(apply_map(psi, pf.xi), Mat(pf.rho * pf.xi)) < 1e-8);
    CHECK(testkit::min_eig(pf.xi) > -1e-10 * pf.xi.norm());
    // Every positive eigenvector at the radius is dominated: its range stays
    // inside the maximal support.
    for (const Mat& e : pf_eigenspace(psi)) {
      const Mat herm = (e + e.adjoint()) / 2.0;
      if (testkit::min_eig(herm) < -1e-8 * herm.norm()) continue;
      const Mat range = range_projection(Mat(herm + 1e-14 * Mat::Identity(4, 4)), 1e-10);
      CHECK((range - pf.p_max * range).norm() < 1e-6);
    }
    if (kernel) CHECK(pf.p_max.trace().real() < 3.5);  // genuinely truncated
    // Kraus operators commute with the maximal support.
    for (const Mat& k : psi.kraus)
      CHECK((k * pf.p_max - pf.p_max * k).norm() < 1e-8 * std::max(1.0, k.norm()));
    // One sided multiplications pass through the map.
    const Mat x = testkit::random_matrix(rng, 4, 4);
    CHECK((apply_map(psi, Mat(x * pf.p_max)) - apply_map(psi, x) * pf.p_max)
              .norm() < 1e-9 * std::max(1.0, x.norm()));
    CHECK((apply_map(psi, Mat(pf.p_max * x)) - pf.p_max * apply_map(psi, x))
              .norm() < 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("truncation by the identity and by the maximal support") {
  Rng rng(66);
  const auto psi = make_symmetric_cp_map(testkit::random_kraus_set(rng, 4, true));
  const auto same = truncate(psi, Mat::Identity(4, 4));
  for (size_t k = 0; k < psi.kraus.size(); ++k)
    CHECK(rel_residual(same.kraus[k], psi.kraus[k]) < 1e-14);

  const PFResult pf = canonical_pf(psi);
  const auto cut = truncate(psi, pf.p_max);
  const PFResult pf_cut = canonical_pf(cut);
  CHECK(std::abs(pf.rho - pf_cut.rho) < 1e-8 * pf.rho);
  CHECK(rel_residual(pf.xi, pf_cut.xi) < 1e-6);

  // The top eigenspaces coincide as subspaces.
  const auto e1 = pf_eigenspace(psi);
  const auto e2 = pf_eigenspace(cut);
  CHECK(e1.size() == e2.size());

  CHECK_THROWS_AS(truncate(psi, Mat(2.0 * Mat::Identity(4, 4))), NotProjection);
}

TEST_CASE("bimodule algebra of simple channels") {
  const auto identity_map = make_symmetric_cp_map({Mat::Identity(3, 3)});
  CHECK(bim(identity_map).dim() == 9);

  const auto flip = make_symmetric_cp_map({sx(), Mat::Identity(2, 2)});
  const MatrixStarAlgebra a = bim(flip);
  CHECK(a.dim() == 2);  // span{I, X}
  CHECK(span_residual(sx(), a.basis) < 1e-10);
  CHECK(span_residual(Mat::Identity(2, 2), a.basis) < 1e-10);
}

TEST_CASE("bimodule property holds by direct substitution") {
  Rng rng(67);
  const auto psi = make_symmetric_cp_map(testkit::random_kraus_set(rng, 4, false));
  const MatrixStarAlgebra a = bim(psi);
  for (const Mat& x : a.basis)
    for (int trial = 0; trial < 3; ++trial) {
      const Mat y = testkit::random_matrix(rng, 4, 4);
      CHECK((apply_map(psi, Mat(y * x)) - apply_map(psi, y) * x).norm() <
            1e-10 * std::max(1.0, y.norm()));
      CHECK((apply_map(psi, Mat(y * x.adjoint())) -
             apply_map(psi, y) * x.adjoint())
                .norm() < 1e-10 * std::max(1.0, y.norm()));
    }
}

TEST_CASE("top eigenspace of the reflection channel excludes the odd sector") {
  const auto psi = make_symmetric_cp_map({sx()});
  const auto basis = pf_eigenspace(psi);
  CHECK(basis.size() == 2);  // I and X, but not Y or Z
  Mat szm(2, 2);
  szm << 1, 0, 0, -1;
  double overlap = 0.0;
  for (const Mat& e : basis) overlap = std::max(overlap, std::abs(hs_inner(e, szm)));
  CHECK(overlap < 1e-10);
}

TEST_CASE("eigenspace dimension equals the compressed bimodule dimension") {
  Rng rng(68);
  for (int trial = 0; trial < 6; ++trial) {
    const Index d = 2 + trial % 3;
    const auto psi = make_symmetric_cp_map(
        testkit::random_kraus_set(rng, d, trial % 2 == 1 && d >= 3));
    const EigenspaceStructure s = verify_eigenspace_structure(psi);
    CHECK(s.yes);
    CHECK(s.dims_match);
    CHECK(s.eigenspace_dim == s.sandwich_dim);
    CHECK(s.max_residual < 1e-8);
  }
}

TEST_CASE("verdicts are scale invariant") {
  Rng rng(69);
  const auto kraus = testkit::random_kraus_set(rng, 3, false);
  std::vector<Mat> scaled;
  for (const Mat& k : kraus) scaled.push_back(std::sqrt(3.0) * k);
  const EigenspaceStructure a = verify_eigenspace_structure(make_symmetric_cp_map(kraus));
  const EigenspaceStructure b = verify_eigenspace_structure(make_symmetric_cp_map(scaled));
  CHECK(a.yes == b.yes);
  CHECK(a.eigenspace_dim == b.eigenspace_dim);
}

TEST_CASE("fixed points of a unital map sit in the multiplicative domain") {
  const Mat id = Mat::Identity(2, 2);
  const auto psi = make_symmetric_cp_map({id / std::sqrt(2.0), sx() / std::sqrt(2.0)});
  const FixedPointDomainReport r =
      verify_fixed_point_domain(psi, Mat(id / 2.0));
  CHECK(r.yes);
  CHECK(r.fixed_dim == 2);
  CHECK(r.max_residual < 1e-8);
}

}  // TEST_SUITE
