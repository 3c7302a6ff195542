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

#include "rpkit/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace rpkit {

namespace {

double ground_energy(const Mat& h) {
  return herm_eig(h, 1e-7).eigenvalues.minCoeff();
}

Mat cross_part(const std::vector<Mat>& cross_terms, const Bipartition& b) {
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;
  Mat h0 = Mat::Zero(dm * dp, dm * dp);
  for (const Mat& o : cross_terms) {
    if (o.rows() != dp || o.cols() != dp)
      throw DimensionMismatch("cross term must act on the plus factor");
    h0 -= kron(Theta(o, b), o);
  }
  return h0;
}

}  // namespace

GroundData ground_projection(const Mat& h, double cluster_tol) {
  GroundData g;
  g.h = h;
  const HermEig eig = herm_eig(h);
  const Index d = eig.eigenvalues.size();
  g.energy_e0 = eig.eigenvalues(0);
  const double scale =
      std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(d - 1)));

  Index k = 0;
  while (k < d && eig.eigenvalues(k) <= g.energy_e0 + cluster_tol * scale) ++k;
  g.degeneracy = k;
  g.gap = (k < d) ? eig.eigenvalues(k) - g.energy_e0
                  : std::numeric_limits<double>::infinity();
  const Mat v = eig.eigenvectors.leftCols(k);
  g.projection_pi = v * v.adjoint();
  if (g.gap < 10.0 * cluster_tol * scale)
    throw GaplessWarning("ground_projection: gap " + std::to_string(g.gap) +
                         " is below the resolution threshold");
  return g;
}

GroundData canonical_pf_ground_state(GroundData g, const Bipartition& b,
                                     bool verify_rp, double tol) {
  if (g.projection_pi.rows() != b.ambient_dim())
    throw DimensionMismatch("canonical_pf_ground_state: bipartition mismatch");
  if (verify_rp) {
    const Verdict v = is_rp_operator(hermitian_exp(g.h, -1.0), b);
    if (!v.yes)
      throw NotRP("canonical_pf_ground_state: e^{-H} is not reflection positive");
  }

  const Vec mu = max_entangled(b);
  g.phi_pf = g.projection_pi * mu;
  if (g.phi_pf.norm() <= 1e-10 * mu.norm())
    throw ZeroPF("canonical_pf_ground_state: ground projection annihilates the "
                 "maximally entangled vector");

  const Mat rho_plus =
      partial_trace(g.projection_pi, {b.dim_minus, b.dim_plus}, {1});
  g.pi_hat = range_projection(rho_plus);

  const Mat o = o_map(g.phi_pf, b);
  if ((o - o.adjoint()).norm() > tol * std::max(1.0, o.norm()))
    throw NotRP("canonical_pf_ground_state: positive ground state is not self-adjoint "
                "under the correspondence");
  const Mat p_o = range_projection(Mat((o + o.adjoint()) / 2.0));
  if ((p_o - g.pi_hat).norm() > 1e-6 * std::max(1.0, g.pi_hat.norm()))
    throw NotRP("canonical_pf_ground_state: entanglement support mismatch");
  return g;
}

MatrixStarAlgebra local_commutant(const Mat& o, const Bipartition& b, double rank_tol) {
  if (o.rows() != b.ambient_dim() || o.cols() != b.ambient_dim())
    throw DimensionMismatch("local_commutant: operator must act on the ambient space");
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;
  std::vector<Mat> blocks;
  for (Index m = 0; m < dm; ++m)
    for (Index n = 0; n < dm; ++n) {
      blocks.push_back(o.block(m * dp, n * dp, dp, dp));
      blocks.push_back(blocks.back().adjoint());
    }
  return commutant_of_set(blocks, Mat::Identity(dp, dp), rank_tol);
}

Mat ground_state_to_w(const Vec& phi, const GroundData& g, const Bipartition& b,
                      double tol) {
  if (phi.size() != b.ambient_dim())
    throw DimensionMismatch("ground_state_to_w: wrong vector size");
  if (g.phi_pf.size() == 0)
    throw ZeroPF("ground_state_to_w: GroundData lacks the positive ground state");
  if ((g.projection_pi * phi - phi).norm() > 1e-9 * std::max(1.0, phi.norm()))
    throw NotGroundState("ground_state_to_w: vector is not in the ground space");

  const Mat xi_raw = o_map(g.phi_pf, b);
  const Mat xi = (xi_raw + xi_raw.adjoint()) / 2.0;
  const Mat w = psd_pseudo_inverse(xi) * o_map(phi, b);

  if ((w * g.pi_hat - w).norm() > tol * std::max(1.0, w.norm()))
    throw NotGroundState("ground_state_to_w: W is not supported on the "
                         "entanglement support");
  std::vector<Mat> cut;
  for (const Mat& c : local_commutant(g.h, b).basis) cut.push_back(c * g.pi_hat);
  if (span_residual(w, orthonormalize_span(cut, 1e-8)) > tol)
    throw NotGroundState("ground_state_to_w: W escapes the cut-down local commutant");

  const Mat grid_pf = reshape_row_major(g.phi_pf, b.dim_minus, b.dim_plus);
  const Vec recon_plus = flatten_row_major(Mat(grid_pf * w.transpose()));
  if (rel_residual(recon_plus, phi) > tol)
    throw NotGroundState("ground_state_to_w: plus-side reconstruction failed");
  const Vec recon_minus =
      flatten_row_major(Mat(Theta(Mat(w.adjoint()), b) * grid_pf));
  if (rel_residual(recon_minus, phi) > tol)
    throw NotGroundState("ground_state_to_w: minus-side reconstruction failed");
  return w;
}

DilatedSystem dilate(const Mat& h_minus, const Mat& h_plus,
                     const std::vector<Mat>& cross_terms, const Bipartition& b,
                     bool verify_rp, double tol) {
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;
  if (h_minus.rows() != dm || h_minus.cols() != dm || h_plus.rows() != dp ||
      h_plus.cols() != dp)
    throw DimensionMismatch("dilate: one-sided parts have wrong dimensions");

  DilatedSystem d;
  d.shift_minus = ground_energy(h_minus);
  d.shift_plus = ground_energy(h_plus);
  const Mat hm = h_minus - d.shift_minus * Mat::Identity(dm, dm);
  const Mat hp = h_plus - d.shift_plus * Mat::Identity(dp, dp);
  const Mat h0 = cross_part(cross_terms, b);
  const Mat idm = Mat::Identity(dm, dm);
  const Mat idp = Mat::Identity(dp, dp);

  d.block_full = kron(hm, idp) + kron(idm, hp) + h0;
  d.block_cross_plus = kron(idm, hp) + h0;
  d.block_minus_cross = kron(hm, idp) + h0;
  d.block_cross = h0;

  d.block_energies.resize(4);
  d.block_energies << ground_energy(d.block_full), ground_energy(d.block_cross_plus),
      ground_energy(d.block_minus_cross), ground_energy(d.block_cross);
  const double scale = std::max(1.0, d.block_full.norm());
  if (d.block_energies.maxCoeff() - d.block_energies.minCoeff() > tol * scale)
    throw FrustrationDetected("dilate: block ground energies disagree by " +
                              std::to_string(d.block_energies.maxCoeff() -
                                             d.block_energies.minCoeff()));

  // Flag selector diag(1,0): flag index 0 switches the one-sided term on.
  Mat p0 = Mat::Zero(2, 2);
  p0(0, 0) = 1.0;
  const Mat id2 = Mat::Identity(2, 2);
  d.big_h = kron(kron(hm, p0), kron(idp, id2)) + kron(kron(idm, id2), kron(hp, p0));
  for (const Mat& o : cross_terms)
    d.big_h -= kron(kron(Theta(o, b), id2), kron(o, id2));

  FactorShape lifted_plus = b.plus_shape;
  lifted_plus.push_back(2);
  d.lifted = make_bipartition(lifted_plus, kron(b.theta_unitary, id2));

  if (verify_rp) {
    const Verdict v = is_rp_operator(hermitian_exp(d.big_h, -1.0), d.lifted);
    if (!v.yes) throw NotRP("dilate: e^{-H} of the doubled system is not "
                            "reflection positive");
  }

  const GroundData gd = ground_projection(d.big_h);
  d.pf_pair = gd.projection_pi * max_entangled(d.lifted);
  d.phi_pf_full.resize(dm * dp);
  d.phi_pf_cross.resize(dm * dp);
  for (Index m = 0; m < dm; ++m)
    for (Index p = 0; p < dp; ++p) {
      d.phi_pf_full(m * dp + p) = d.pf_pair(((m * 2 + 0) * dp + p) * 2 + 0);
      d.phi_pf_cross(m * dp + p) = d.pf_pair(((m * 2 + 1) * dp + p) * 2 + 1);
    }
  return d;
}

LtqoReport ltqo_check(const Mat& h_minus, const Mat& h_plus,
                      const std::vector<Mat>& cross_terms, const Bipartition& b,
                      double tol) {
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;
  const Mat hm = h_minus - ground_energy(h_minus) * Mat::Identity(dm, dm);
  const Mat hp = h_plus - ground_energy(h_plus) * Mat::Identity(dp, dp);
  const Mat h0 = cross_part(cross_terms, b);
  const Mat idm = Mat::Identity(dm, dm);
  const Mat idp = Mat::Identity(dp, dp);

  const Mat h_full = kron(hm, idp) + kron(idm, hp) + h0;
  const Mat h_cross_plus = kron(idm, hp) + h0;

  const double e_full = ground_energy(h_full);
  const double e_cp = ground_energy(h_cross_plus);
  const double e_mc = ground_energy(Mat(kron(hm, idp) + h0));
  const double e_c = ground_energy(h0);
  const double scale = std::max(1.0, h_full.norm());
  const double spread = std::max({e_full, e_cp, e_mc, e_c}) -
                        std::min({e_full, e_cp, e_mc, e_c});
  if (spread > 1e-9 * scale)
    throw FrustrationDetected("ltqo_check: block ground energies disagree by " +
                              std::to_string(spread));

  LtqoReport r;
  const GroundData full = ground_projection(h_full);
  r.degeneracy = full.degeneracy;
  r.nondegenerate = full.degeneracy == 1;

  const GroundData cross = ground_projection(h_cross_plus);
  r.cross_degeneracy = cross.degeneracy;
  const HermEig eig = herm_eig(h_cross_plus);
  std::vector<Mat> omaps;
  for (Index k = 0; k < cross.degeneracy; ++k)
    omaps.push_back(o_map(eig.eigenvectors.col(k), b));

  double gscale = 1.0;
  std::vector<Mat> diags;
  for (const Mat& o : omaps) {
    diags.push_back(o * o.adjoint());
    gscale = std::max(gscale, diags.back().norm());
  }
  for (size_t j = 0; j < omaps.size(); ++j) {
    for (size_t k = 0; k < omaps.size(); ++k) {
      if (j == k) continue;
      const double off = (omaps[j] * omaps[k].adjoint()).norm();
      if (off > r.max_offdiag && off > tol * gscale && r.witness_j < 0) {
        r.witness_j = static_cast<Index>(j);
        r.witness_k = static_cast<Index>(k);
      }
      r.max_offdiag = std::max(r.max_offdiag, off);
    }
    if (j > 0) {
      const double spread_jj = (diags[j] - diags[0]).norm();
      if (spread_jj > tol * gscale && r.witness_j < 0) {
        r.witness_j = static_cast<Index>(j);
        r.witness_k = static_cast<Index>(j);
      }
      r.max_diag_spread = std::max(r.max_diag_spread, spread_jj);
    }
  }
  r.ltqo = r.max_offdiag <= tol * gscale && r.max_diag_spread <= tol * gscale;
  r.agree = r.ltqo == r.nondegenerate;
  return r;
}

}  // namespace rpkit
