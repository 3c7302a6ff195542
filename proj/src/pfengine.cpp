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

#include "rpkit/pfengine.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace rpkit {

namespace {

void require_square_same_dim(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw InvalidKrausSet("empty Kraus list");
  const Index d = kraus[0].rows();
  for (const Mat& k : kraus)
    if (k.rows() != d || k.cols() != d)
      throw DimensionMismatch("Kraus operators must be square and equally sized");
}

}  // namespace

SymmetricCPMap make_symmetric_cp_map(const std::vector<Mat>& kraus, double tol) {
  require_square_same_dim(kraus);
  SymmetricCPMap psi;
  psi.kraus = kraus;
  psi.dim = kraus[0].rows();
  for (const Mat& k : kraus) require_finite(k, "make_symmetric_cp_map");

  // Dagger closure as a set: each adjoint must appear in the list.
  for (const Mat& k : kraus) {
    const Mat ka = k.adjoint();
    bool found = false;
    for (const Mat& other : kraus)
      if ((ka - other).norm() <= tol * std::max(1.0, ka.norm())) {
        found = true;
        break;
      }
    if (!found) throw InvalidKrausSet("Kraus list is not closed under the adjoint");
  }

  Mat stacked(psi.dim * psi.dim, static_cast<Index>(kraus.size()));
  for (size_t j = 0; j < kraus.size(); ++j)
    stacked.col(static_cast<Index>(j)) = flatten_row_major(kraus[j]);
  const RVec sv = robust_svd(stacked).singular_values;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= 1e-9 * std::max(sv(0), 1e-300))
      throw InvalidKrausSet("Kraus list is linearly dependent");
  return psi;
}

Mat apply_map(const SymmetricCPMap& psi, const Mat& x) {
  Mat out = Mat::Zero(psi.dim, psi.dim);
  for (const Mat& k : psi.kraus) out += k * x * k.adjoint();
  return out;
}

Mat transfer_matrix(const SymmetricCPMap& psi) {
  Mat t = Mat::Zero(psi.dim * psi.dim, psi.dim * psi.dim);
  for (const Mat& k : psi.kraus) t += kron(k, Mat(k.conjugate()));
  return t;
}

double spectral_radius(const SymmetricCPMap& psi) {
  const HermEig eig = herm_eig(transfer_matrix(psi), 1e-7);
  double rho = 0.0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    rho = std::max(rho, std::abs(eig.eigenvalues(i)));
  return rho;
}

PFResult canonical_pf(const SymmetricCPMap& psi, Index max_iters, double tol) {
  PFResult out;
  out.rho = spectral_radius(psi);
  const double scale = transfer_matrix(psi).norm();
  if (out.rho < 1e-12 * std::max(1.0, scale))
    throw ZeroPF("canonical_pf: spectral radius is zero");

  const Mat id = Mat::Identity(psi.dim, psi.dim);
  Mat x = id;
  Index n = 0;

  // Burn-in: damp the subdominant spectrum before averaging.  The limit of the
  // running mean is unchanged by skipping a finite prefix.
  for (; n < max_iters / 2; ++n) {
    const Mat next = apply_map(psi, x) / out.rho;
    const double step = (next - x).norm() / std::max(1.0, next.norm());
    x = next;
    if (step < tol) break;
  }

  Mat sum = x;
  Mat mean = x;
  double diff = std::numeric_limits<double>::infinity();
  Index terms = 1;
  for (; n < max_iters; ++n, ++terms) {
    x = apply_map(psi, x) / out.rho;
    sum += x;
    const Mat next_mean = sum / static_cast<double>(terms + 1);
    diff = (next_mean - mean).norm();
    mean = next_mean;
    if (diff < tol * std::max(1.0, mean.norm())) break;
  }
  out.cesaro_iterations = n;
  out.residual = diff;
  if (n >= max_iters)
    throw NoConvergence("canonical_pf: running means still moving after " +
                        std::to_string(max_iters) +
                        " iterations (last delta " + std::to_string(diff) + ")");

  out.xi = (mean + Mat(mean.adjoint())) / 2.0;
  out.p_max = range_projection(out.xi);
  return out;
}

SymmetricCPMap truncate(const SymmetricCPMap& psi, const Mat& p, double tol) {
  if (p.rows() != psi.dim || p.cols() != psi.dim)
    throw DimensionMismatch("truncate: projection dimension mismatch");
  if ((p * p - p).norm() > tol * std::max(1.0, p.norm()) ||
      (p - p.adjoint()).norm() > tol * std::max(1.0, p.norm()))
    throw NotProjection("truncate: p is not an orthogonal projection");
  SymmetricCPMap out;
  out.dim = psi.dim;
  for (const Mat& k : psi.kraus) out.kraus.push_back(k * p);
  return out;
}

MatrixStarAlgebra bim(const SymmetricCPMap& psi) {
  std::vector<Mat> closed = psi.kraus;
  for (const Mat& k : psi.kraus) closed.push_back(k.adjoint());
  return commutant_of_set(closed, Mat::Identity(psi.dim, psi.dim));
}

std::vector<Mat> pf_eigenspace(const SymmetricCPMap& psi, double cluster_tol) {
  const HermEig eig = herm_eig(transfer_matrix(psi), 1e-7);
  double rho = 0.0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    rho = std::max(rho, std::abs(eig.eigenvalues(i)));
  std::vector<Mat> basis;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (std::abs(eig.eigenvalues(i) - rho) <= cluster_tol * std::max(rho, 1e-300))
      basis.push_back(reshape_row_major(eig.eigenvectors.col(i), psi.dim, psi.dim));
  return basis;
}

EigenspaceStructure verify_eigenspace_structure(const SymmetricCPMap& psi, double tol) {
  EigenspaceStructure out;
  const PFResult pf = canonical_pf(psi);
  const MatrixStarAlgebra b = bim(psi);
  const std::vector<Mat> espace = pf_eigenspace(psi);

  std::vector<Mat> compressed;
  for (const Mat& x : b.basis) compressed.push_back(x * pf.p_max);
  const std::vector<Mat> sandwich_basis = orthonormalize_span(compressed, 1e-8);

  const Mat sqrt_xi = psd_function(pf.xi, [](double t) { return std::sqrt(t); });
  out.max_residual = 0.0;
  for (const Mat& x : sandwich_basis) {
    const Mat y = sqrt_xi * x * sqrt_xi;
    out.max_residual = std::max(out.max_residual, span_residual(y, espace));
  }
  out.eigenspace_dim = static_cast<Index>(espace.size());
  out.sandwich_dim = static_cast<Index>(sandwich_basis.size());
  out.dims_match = out.eigenspace_dim == out.sandwich_dim;
  out.yes = out.dims_match && out.max_residual < tol;
  return out;
}

FixedPointDomainReport verify_fixed_point_domain(const SymmetricCPMap& psi,
                                                 const Mat& state, double tol) {
  FixedPointDomainReport out;
  const Mat id = Mat::Identity(psi.dim, psi.dim);
  if (rel_residual(apply_map(psi, id), id) > tol)
    throw InvalidKrausSet("verify_fixed_point_domain: map is not unital");
  const HermEig seig = herm_eig(state, 1e-7);
  if (seig.eigenvalues.minCoeff() <= 0)
    throw NotPSD("verify_fixed_point_domain: state is not faithful");
  if (rel_residual(apply_map(psi, state), state) > tol)
    throw InvalidKrausSet("verify_fixed_point_domain: state is not invariant");

  const HermEig teig = herm_eig(transfer_matrix(psi), 1e-7);
  std::vector<Mat> fixed;
  for (Index i = 0; i < teig.eigenvalues.size(); ++i)
    if (std::abs(teig.eigenvalues(i) - 1.0) <= 1e-8)
      fixed.push_back(reshape_row_major(teig.eigenvectors.col(i), psi.dim, psi.dim));
  out.fixed_dim = static_cast<Index>(fixed.size());

  for (const Mat& x : fixed) {
    const Mat px = apply_map(psi, x);
    const double r1 = rel_residual(apply_map(psi, Mat(x.adjoint() * x)),
                                   Mat(px.adjoint() * px));
    const double r2 = rel_residual(apply_map(psi, Mat(x * x.adjoint())),
                                   Mat(px * px.adjoint()));
    out.max_residual = std::max({out.max_residual, r1, r2});
  }
  out.yes = out.max_residual < tol;
  return out;
}

}  // namespace rpkit
