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

#include "rpkit/staralg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "rpkit/groundstate.hpp"

namespace rpkit {

namespace {

// Append candidate to an HS-orthonormal basis if it has a component outside
// the current span (two-pass modified Gram-Schmidt).
bool absorb(std::vector<Mat>& basis, const Mat& candidate, double tol) {
  const double scale = candidate.norm();
  if (scale < 1e-12) return false;
  Mat r = candidate;
  for (int pass = 0; pass < 2; ++pass)
    for (const Mat& b : basis) r -= hs_inner(b, r) * b;
  if (r.norm() <= tol * std::max(1.0, scale)) return false;
  basis.push_back(r / r.norm());
  return true;
}

Mat range_basis(const Mat& projection) {
  const HermEig eig = herm_eig(projection, 1e-7);
  Index rank = 0;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k)
    if (eig.eigenvalues(k) > 0.5) ++rank;
  Mat r(projection.rows(), rank);
  Index c = 0;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k)
    if (eig.eigenvalues(k) > 0.5) r.col(c++) = eig.eigenvectors.col(k);
  return r;
}

Mat stack_basis(const std::vector<Mat>& basis) {
  if (basis.empty()) return Mat(0, 0);
  Mat out(basis[0].size(), static_cast<Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    out.col(static_cast<Index>(j)) = flatten_row_major(basis[j]);
  return out;
}

// Kernel with an absolute singular-value cutoff.  Constraint systems built
// from normalized operators need this: thresholds relative to the constraint
// matrix itself would promote pure numerical noise to full-rank constraints.
Mat nullspace_below(const Mat& m, double abs_tol) {
  const SvdData svd = robust_svd(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Index n = m.cols();
  const RVec& sv = svd.singular_values;
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) > abs_tol) ++rank;
  return svd.v.rightCols(n - rank);
}

}  // namespace

cplx hs_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }

std::vector<Mat> orthonormalize_span(const std::vector<Mat>& mats, double rank_tol) {
  if (mats.empty()) return {};
  const Mat stacked = stack_basis(mats);
  const SvdData svd = robust_svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singular_values;
  const double smax = sv.size() ? sv(0) : 0.0;
  std::vector<Mat> out;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rank_tol * std::max(smax, 1e-300))
      out.push_back(reshape_row_major(svd.u.col(k), mats[0].rows(), mats[0].cols()));
  return out;
}

double span_residual(const Mat& x, const std::vector<Mat>& basis) {
  const double scale = x.norm();
  if (scale < 1e-300) return 0.0;
  Mat r = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const Mat& b : basis) r -= hs_inner(b, r) * b;
  return r.norm() / scale;
}

Mat nullspace(const Mat& m, double rank_tol) {
  const SvdData svd = robust_svd(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Index n = m.cols();
  const RVec& sv = svd.singular_values;
  const double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rank_tol * std::max(smax, 1e-300)) ++rank;
  return svd.v.rightCols(n - rank);
}

MatrixStarAlgebra generated_algebra(const std::vector<Mat>& generators, const Mat& unit,
                                    double rank_tol) {
  const Index d = unit.rows();
  if (unit.cols() != d) throw DimensionMismatch("generated_algebra: unit must be square");
  if ((unit * unit - unit).norm() > 1e-8 * std::max(1.0, unit.norm()) ||
      (unit - unit.adjoint()).norm() > 1e-8 * std::max(1.0, unit.norm()))
    throw NotProjection("generated_algebra: unit is not an orthogonal projection");

  const double grow_tol = std::max(rank_tol * 100.0, 1e-9);
  std::vector<Mat> basis;
  absorb(basis, unit, grow_tol);
  for (const Mat& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw DimensionMismatch("generated_algebra: generator dimension mismatch");
    const Mat gp = unit * g * unit;
    absorb(basis, gp, grow_tol);
    absorb(basis, Mat(gp.adjoint()), grow_tol);
  }

  size_t frontier_begin = 0;
  while (frontier_begin < basis.size()) {
    const size_t frozen = basis.size();
    for (size_t i = 0; i < frozen; ++i)
      for (size_t j = 0; j < frozen; ++j) {
        if (i < frontier_begin && j < frontier_begin) continue;
        absorb(basis, basis[i] * basis[j], grow_tol);
      }
    frontier_begin = frozen;
  }

  MatrixStarAlgebra a;
  a.ambient_dim = d;
  a.unit = unit;
  a.basis = std::move(basis);
  return a;
}

MatrixStarAlgebra commutant_of_set(const std::vector<Mat>& mats, const Mat& unit,
                                   double rank_tol) {
  const Index d = unit.rows();
  const Mat id = Mat::Identity(d, d);

  Mat n;  // orthonormal columns spanning the admissible vectorized operators
  if ((unit - id).norm() < 1e-12) {
    n = Mat::Identity(d * d, d * d);
  } else {
    const Mat r = range_basis(unit);
    const Index rr = r.cols();
    n.resize(d * d, rr * rr);
    for (Index x = 0; x < rr; ++x)
      for (Index y = 0; y < rr; ++y)
        n.col(x * rr + y) = flatten_row_major(Mat(r.col(x) * r.col(y).adjoint()));
  }

  double scale = 0.0;
  for (const Mat& b : mats) {
    if (b.rows() != d || b.cols() != d)
      throw DimensionMismatch("commutant_of_set: element dimension mismatch");
    scale = std::max(scale, b.norm());
  }
  if (scale < 1e-300) scale = 1.0;

  // Columns of n are HS-orthonormal operators, so singular values measure
  // |[X, b]| directly; cut against the scale of the whole generating set.
  // The cut floor must clear the accuracy of the incoming elements: iterated
  // commutants hand in operators polluted at the previous pass's cut level,
  // and slicing inside the resulting near-degenerate singular-value cluster
  // returns a kernel that misses exact invariants (even the unit).
  const double cut = std::max(rank_tol, 1e-8) * scale;
  for (const Mat& b : mats) {
    if (n.cols() == 0) break;
    if (b.norm() <= 1e-13 * scale) continue;  // noise element: no constraint
    const Mat l = kron(b, id) - kron(id, Mat(b.transpose()));
    const Mat constrained = l * n;
    n = n * nullspace_below(constrained, cut);
  }

  MatrixStarAlgebra c;
  c.ambient_dim = d;
  c.unit = unit;
  for (Index k = 0; k < n.cols(); ++k)
    c.basis.push_back(reshape_row_major(n.col(k), d, d));
  return c;
}

MatrixStarAlgebra commutant(const MatrixStarAlgebra& a, double rank_tol) {
  return commutant_of_set(a.basis, a.unit, rank_tol);
}

CenterBlocks center_and_blocks(const MatrixStarAlgebra& a, std::uint64_t seed) {
  CenterBlocks out;
  out.center.ambient_dim = a.ambient_dim;
  out.center.unit = a.unit;
  if (a.dim() == 0) return out;

  // The center is cut out inside the algebra's own coefficient space: z =
  // sum_a c_a basis_a with [z, basis_i] = 0 for every i.  This stays cheap
  // for large ambient dimensions where a dense commutant would not.
  const Index dim = a.dim();
  const Index dd = a.ambient_dim * a.ambient_dim;
  Mat constraints(dim * dd, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      constraints.col(j).segment(i * dd, dd) = flatten_row_major(
          Mat(a.basis[j] * a.basis[i] - a.basis[i] * a.basis[j]));
  // The basis is HS-orthonormal, so an absolute cutoff reads directly as the
  // largest tolerated commutator norm of a unit-norm central candidate.
  const Mat k = nullspace_below(constraints, 1e-8);
  std::vector<Mat> center_raw;
  for (Index j = 0; j < k.cols(); ++j) {
    Mat z = Mat::Zero(a.ambient_dim, a.ambient_dim);
    for (Index c = 0; c < dim; ++c) z += k(c, j) * a.basis[c];
    center_raw.push_back(z);
  }
  out.center.basis = orthonormalize_span(center_raw);

  // Hermitian spanning set of the (dagger-closed) center.
  std::vector<Mat> herm_raw;
  for (const Mat& z : out.center.basis) {
    herm_raw.push_back((z + z.adjoint()) / 2.0);
    herm_raw.push_back((z - z.adjoint()) / cplx(0, 2));
  }
  const std::vector<Mat> hbasis = orthonormalize_span(herm_raw);
  const Index center_dim = out.center.dim();

  const Mat r = range_basis(a.unit);  // avoid spurious kernel outside the unit
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat h = Mat::Zero(a.ambient_dim, a.ambient_dim);
    for (const Mat& hb : hbasis) h += coef(rng) * hb;
    h = (h + Mat(h.adjoint())) / 2.0;
    const Mat hr = r.adjoint() * h * r;
    const HermEig eig = herm_eig(hr, 1e-7);
    const Index nr = eig.eigenvalues.size();
    const double spread =
        nr ? std::max(1.0, eig.eigenvalues(nr - 1) - eig.eigenvalues(0)) : 1.0;

    std::vector<std::pair<Index, Index>> clusters;  // [begin, end) in eigen order
    Index begin = 0;
    for (Index i = 1; i <= nr; ++i)
      if (i == nr || eig.eigenvalues(i) - eig.eigenvalues(i - 1) > 1e-8 * spread) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    if (static_cast<Index>(clusters.size()) != center_dim) continue;  // collision; retry

    std::vector<Mat> projections;
    std::vector<Index> sizes;
    Index dim_check = 0;
    bool ok = true;
    for (const auto& [lo, hi] : clusters) {
      const Mat block = r * eig.eigenvectors.middleCols(lo, hi - lo);
      const Mat p = block * block.adjoint();
      std::vector<Mat> compressed;
      for (const Mat& b : a.basis) compressed.push_back(p * b * p);
      const Index nk = static_cast<Index>(orthonormalize_span(compressed, 1e-8).size());
      const double dk = std::sqrt(static_cast<double>(nk));
      const double mk = static_cast<double>(hi - lo) / std::max(dk, 1e-300);
      if (std::abs(dk - std::round(dk)) > 1e-6 || std::abs(mk - std::round(mk)) > 1e-6) {
        ok = false;
        break;
      }
      projections.push_back(p);
      sizes.push_back(static_cast<Index>(std::llround(dk)));
      dim_check += nk;
    }
    if (!ok || dim_check != a.dim()) continue;

    out.minimal_central_projections = std::move(projections);
    out.block_signature = std::move(sizes);
    std::sort(out.block_signature.begin(), out.block_signature.end());
    return out;
  }
  throw NonIntegerBlock("center_and_blocks: block sizes failed to resolve to integers");
}

std::vector<Index> block_signature(const MatrixStarAlgebra& a) {
  return center_and_blocks(a).block_signature;
}

MatrixStarAlgebra interaction_algebra(const Mat& o, const Bipartition& b, double tol) {
  if (o.rows() != b.ambient_dim() || o.cols() != b.ambient_dim())
    throw DimensionMismatch("interaction_algebra: operator must act on the ambient space");
  const Index dm = b.dim_minus;
  const Index dp = b.dim_plus;

  std::vector<Mat> factors;
  for (Index m = 0; m < dm; ++m)
    for (Index n = 0; n < dm; ++n) factors.push_back(o.block(m * dp, n * dp, dp, dp));
  const MatrixStarAlgebra direct =
      generated_algebra(factors, Mat::Identity(dp, dp));

  const MatrixStarAlgebra via_bicommutant = commutant(local_commutant(o, b));
  if (!algebra_equal(direct, via_bicommutant, tol))
    throw InteractionAlgebraMismatch(
        "interaction_algebra: block-generated algebra disagrees with the "
        "bicommutant of the local commutant");
  return direct;
}

bool algebra_equal(const MatrixStarAlgebra& a, const MatrixStarAlgebra& b, double tol) {
  if (a.ambient_dim != b.ambient_dim)
    throw DimensionMismatch("algebra_equal: ambient dimensions differ");
  if (a.dim() != b.dim()) return false;
  for (const Mat& x : a.basis)
    if (span_residual(x, b.basis) > tol) return false;
  for (const Mat& x : b.basis)
    if (span_residual(x, a.basis) > tol) return false;
  return true;
}

bool iso_signature_equal(const MatrixStarAlgebra& a, const MatrixStarAlgebra& b) {
  return block_signature(a) == block_signature(b);
}

}  // namespace rpkit
