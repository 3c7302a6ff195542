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

#include "rpkit/osrecon.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "rpkit/rpcore.hpp"
#include "rpkit/tensorlab.hpp"

namespace rpkit {

namespace {

void validate_projection(const Mat& pi, const Bipartition& b, bool verify_rp,
                         double tol) {
  if (pi.rows() != b.ambient_dim() || pi.cols() != b.ambient_dim())
    throw DimensionMismatch("projection must act on the ambient space");
  const double scale = std::max(1.0, pi.norm());
  if ((pi * pi - pi).norm() > tol * scale || (pi - pi.adjoint()).norm() > tol * scale)
    throw NotProjection("input is not an orthogonal projection");
  if (verify_rp) {
    const Verdict v = is_rp_operator(pi, b);
    if (!v.yes)
      throw NotRP("projection is not reflection positive (min Choi eigenvalue " +
                  std::to_string(v.min_eigenvalue) + ")");
  }
}

Mat e_map_unchecked(const Mat& x, const Mat& pi, const Bipartition& b,
                    double trace_pi) {
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;
  const Mat a = Theta(Mat(x.adjoint()), b);
  Mat out = Mat::Zero(dp, dp);
  for (Index m = 0; m < dm; ++m)
    for (Index n = 0; n < dm; ++n) out += a(n, m) * pi.block(m * dp, n * dp, dp, dp);
  return out / trace_pi;
}

}  // namespace

Mat e_map(const Mat& x, const Mat& pi, const Bipartition& b, bool verify, double tol) {
  if (x.rows() != b.dim_plus || x.cols() != b.dim_plus)
    throw DimensionMismatch("e_map: argument must act on the plus factor");
  validate_projection(pi, b, verify, tol);
  const double trace_pi = std::real(pi.trace());
  if (trace_pi < 1e-12) throw ZeroPF("e_map: projection has zero trace");
  return e_map_unchecked(x, pi, b, trace_pi);
}

Mat os_form(const Mat& pi, const Bipartition& b, const std::vector<Mat>& generating,
            bool verify, double tol) {
  validate_projection(pi, b, verify, tol);
  const double trace_pi = std::real(pi.trace());
  if (trace_pi < 1e-12) throw ZeroPF("os_form: projection has zero trace");
  const Index dp = b.dim_plus;

  std::vector<Mat> gens = generating;
  if (gens.empty())
    for (Index i = 0; i < dp; ++i)
      for (Index j = 0; j < dp; ++j) gens.push_back(matrix_unit(dp, i, j));

  const Index n = static_cast<Index>(gens.size());
  Mat gram(n, n);
  for (Index a = 0; a < n; ++a) {
    const Mat ea = e_map_unchecked(Mat(gens[static_cast<size_t>(a)].adjoint()), pi, b,
                                   trace_pi);
    for (Index c = 0; c < n; ++c)
      gram(a, c) = (ea * gens[static_cast<size_t>(c)]).trace();
  }
  gram = (gram + Mat(gram.adjoint())) / 2.0;

  const HermEig eig = herm_eig(gram, 1e-7);
  const double lmax = std::max(eig.eigenvalues.maxCoeff(), 0.0);
  if (eig.eigenvalues.minCoeff() < -1e-8 * std::max(lmax, 1.0))
    throw NotRP("os_form: averaged form is not positive semidefinite");
  return gram;
}

OSRResult field_algebra(const Mat& pi, const Bipartition& b, bool verify_rp,
                        double tol, double rank_tol) {
  validate_projection(pi, b, verify_rp, tol);
  OSRResult osr;
  osr.b = b;
  osr.pi = pi;
  osr.trace_pi = std::real(pi.trace());
  if (osr.trace_pi < 1e-12) throw ZeroPF("field_algebra: projection has zero trace");
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;

  const Vec phi_pf = pi * max_entangled(b);
  if (phi_pf.norm() <= 1e-10 * std::sqrt(static_cast<double>(dp)))
    throw ZeroPF("field_algebra: projection annihilates the maximally entangled "
                 "vector");
  const Mat xi_raw = o_map(phi_pf, b);
  osr.xi = (xi_raw + Mat(xi_raw.adjoint())) / 2.0;

  const Mat rho_plus = partial_trace(pi, {dm, dp}, {1});
  osr.pi_hat = range_projection(rho_plus);
  osr.vacuum_density = rho_plus / osr.trace_pi;
  if ((range_projection(osr.xi) - osr.pi_hat).norm() > 1e-6 * std::max(1.0, dp * 1.0))
    throw NotRP("field_algebra: support of the positive ground-state matrix "
                "differs from the entanglement support");

  const HermEig peig = herm_eig(pi, 1e-7);
  const Mat xi_pinv = psd_pseudo_inverse(osr.xi);
  osr.f_central = Mat::Zero(dp, dp);
  for (Index k = 0; k < peig.eigenvalues.size(); ++k) {
    if (peig.eigenvalues(k) <= 0.5) continue;
    const Mat w = xi_pinv * o_map(peig.eigenvectors.col(k), b);
    osr.f_central += w * w.adjoint();
  }
  osr.f_central /= osr.trace_pi;

  osr.interaction_alg = interaction_algebra(pi, b);
  std::vector<Mat> cut;
  for (const Mat& a : osr.interaction_alg.basis) cut.push_back(a * osr.pi_hat);
  osr.field_algebra.ambient_dim = dp;
  osr.field_algebra.unit = osr.pi_hat;
  osr.field_algebra.basis = orthonormalize_span(cut, 1e-8);

  const bool reduced = dp * dp >= 4096;
  std::vector<Mat> gens;
  if (reduced)
    gens = osr.field_algebra.basis;
  else
    for (Index i = 0; i < dp; ++i)
      for (Index j = 0; j < dp; ++j) gens.push_back(matrix_unit(dp, i, j));
  osr.gram = os_form(pi, b, gens, false, tol);

  const HermEig geig = herm_eig(osr.gram, 1e-7);
  const double lmax = std::max(geig.eigenvalues.maxCoeff(), 0.0);
  std::vector<double> lambdas;
  for (Index k = geig.eigenvalues.size() - 1; k >= 0; --k) {
    const double lam = geig.eigenvalues(k);
    if (lam <= rank_tol * std::max(lmax, 1e-300)) break;
    lambdas.push_back(lam);
    Mat x = Mat::Zero(dp, dp);
    for (Index a = 0; a < static_cast<Index>(gens.size()); ++a)
      x += geig.eigenvectors(a, k) * gens[static_cast<size_t>(a)];
    osr.phys_basis.push_back(x);
    osr.emap_phys_adj.push_back(
        e_map_unchecked(Mat(x.adjoint()), pi, b, osr.trace_pi));
  }
  osr.phys_eigenvalues =
      Eigen::Map<const RVec>(lambdas.data(), static_cast<Index>(lambdas.size()));

  osr.vacuum_vector.resize(osr.phys_dim());
  for (Index k = 0; k < osr.phys_dim(); ++k)
    osr.vacuum_vector(k) = osr.emap_phys_adj[static_cast<size_t>(k)].trace() /
                           std::sqrt(osr.phys_eigenvalues(k));

  // Verify the compressed-conjugation presentation against the physical one.
  const Mat sqrt_xi = psd_function(osr.xi, [](double v) { return std::sqrt(v); });
  const Mat inv_sqrt_xi =
      psd_function(osr.xi, [](double v) { return 1.0 / std::sqrt(v); });
  const auto rho = [&](const Mat& a) {
    return field_operator(inv_sqrt_xi * a * sqrt_xi, osr, std::max(tol, 1e-7));
  };

  double res = 0.0;
  std::vector<Mat> images;
  for (const Mat& a : osr.field_algebra.basis) images.push_back(rho(a));
  const Index fd = osr.field_algebra.dim();
  for (Index j = 0; j < fd; ++j) {
    const Mat& aj = osr.field_algebra.basis[static_cast<size_t>(j)];
    res = std::max(res, rel_residual(rho(Mat(aj.adjoint())),
                                     Mat(images[static_cast<size_t>(j)].adjoint())));
    for (Index k = 0; k < fd; ++k) {
      const Mat& ak = osr.field_algebra.basis[static_cast<size_t>(k)];
      // Normalized with a floor: products of orthonormal basis elements can
      // vanish, and a purely relative residual would read noise as O(1).
      const Mat prod = aj * ak;
      const Mat expect =
          images[static_cast<size_t>(j)] * images[static_cast<size_t>(k)];
      res = std::max(res,
                     (rho(prod) - expect).norm() / std::max(1.0, prod.norm()));
    }
    // Vacuum expectation of the physical operator vs the density presentation,
    // evaluated on the actual argument of the compression map.
    const Mat tj = inv_sqrt_xi * aj * sqrt_xi;
    const cplx om_phys = (osr.vacuum_vector.adjoint() *
                          images[static_cast<size_t>(j)] * osr.vacuum_vector)(0);
    const cplx om_dens = (osr.vacuum_density * tj).trace();
    res = std::max(res, std::abs(om_phys - om_dens));
  }
  res = std::max(res, rel_residual(rho(osr.pi_hat),
                                   Mat::Identity(osr.phys_dim(), osr.phys_dim())));

  Mat stacked(osr.phys_dim() * osr.phys_dim(), fd);
  for (Index j = 0; j < fd; ++j)
    stacked.col(j) = flatten_row_major(images[static_cast<size_t>(j)]);
  const RVec sv = robust_svd(stacked).singular_values;
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-8 * std::max(sv(0), 1e-300)) ++rank;

  osr.verification_residual = res;
  if (res > std::max(tol, 1e-7) || rank != fd)
    throw CommutationFailure(
        "field_algebra: compressed-conjugation presentation failed verification "
        "(residual " + std::to_string(res) + ", rank " + std::to_string(rank) +
        " of " + std::to_string(fd) + ")");
  return osr;
}

Mat field_operator(const Mat& t, const OSRResult& osr, double tol) {
  const Index dp = osr.b.dim_plus;
  if (t.rows() != dp || t.cols() != dp)
    throw DimensionMismatch("field_operator: argument must act on the plus factor");
  const Mat compressed = osr.pi_hat * t * osr.pi_hat;
  // The zero operator is trivially inside; span_residual is scale-relative and
  // would read pure noise as distance 1.
  if (compressed.norm() > tol * std::max(1.0, t.norm()) &&
      span_residual(compressed, osr.field_algebra.basis) > tol)
    throw NotAFieldOperator("field_operator: compression lies outside the field "
                            "algebra");
  const Mat id = Mat::Identity(dp, dp);
  if ((osr.pi_hat * t * (id - osr.pi_hat)).norm() > tol * std::max(1.0, t.norm()))
    throw NotAFieldOperator("field_operator: operator maps the support complement "
                            "into the support");

  const Index n = osr.phys_dim();
  Mat out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      out(j, k) = (osr.emap_phys_adj[static_cast<size_t>(j)] *
                   (t * osr.phys_basis[static_cast<size_t>(k)]))
                      .trace() /
                  std::sqrt(osr.phys_eigenvalues(j) * osr.phys_eigenvalues(k));
  return out;
}

Mat modular_flow(const OSRResult& osr, double t) {
  const Index dp = osr.b.dim_plus;
  const Mat phase = psd_function(
      osr.xi, [t](double v) { return std::exp(cplx(0.0, 2.0 * t * std::log(v))); });
  return phase + (Mat::Identity(dp, dp) - osr.pi_hat);
}

bool modular_trivial(const OSRResult& osr, double rel_tol) {
  const auto eig = herm_eig(osr.xi);
  const double top = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (top <= 0.0) return true;
  double low = top;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > 1e-10 * top) {
      low = eig.eigenvalues(i);
      break;
    }
  }
  return (top - low) <= rel_tol * top;
}

}  // namespace rpkit
