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

#include "rpkit/tensorlab.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

namespace rpkit {

namespace {

// Mixed-radix index helpers for partial traces and embeddings.
std::vector<Index> strides_of(const FactorShape& shape) {
  std::vector<Index> s(shape.size());
  Index acc = 1;
  for (int k = static_cast<int>(shape.size()) - 1; k >= 0; --k) {
    s[static_cast<size_t>(k)] = acc;
    acc *= shape[static_cast<size_t>(k)];
  }
  return s;
}

}  // namespace

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat kron(const Mat& a, const Mat& b, const Mat& c) { return kron(kron(a, b), c); }

Mat partial_trace(const Mat& m, const FactorShape& shape,
                  const std::set<int>& keep) {
  const Index total = shape_product(shape);
  if (m.rows() != total || m.cols() != total)
    throw DimensionMismatch("partial_trace: matrix does not match shape product");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(shape.size()))
      throw DimensionMismatch("partial_trace: keep index out of range");

  std::vector<int> kept(keep.begin(), keep.end());
  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(shape.size()); ++k)
    if (!keep.count(k)) traced.push_back(k);

  const auto strides = strides_of(shape);
  Index dk = 1, dt = 1;
  for (int k : kept) dk *= shape[static_cast<size_t>(k)];
  for (int k : traced) dt *= shape[static_cast<size_t>(k)];

  // Absolute offset of a combined (kept, traced) configuration.
  auto offset = [&](Index kept_idx, Index traced_idx) {
    Index off = 0;
    for (int k = static_cast<int>(kept.size()) - 1; k >= 0; --k) {
      const int f = kept[static_cast<size_t>(k)];
      const Index d = shape[static_cast<size_t>(f)];
      off += (kept_idx % d) * strides[static_cast<size_t>(f)];
      kept_idx /= d;
    }
    for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
      const int f = traced[static_cast<size_t>(k)];
      const Index d = shape[static_cast<size_t>(f)];
      off += (traced_idx % d) * strides[static_cast<size_t>(f)];
      traced_idx /= d;
    }
    return off;
  };

  Mat out = Mat::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j) {
      cplx acc(0.0, 0.0);
      for (Index t = 0; t < dt; ++t) acc += m(offset(i, t), offset(j, t));
      out(i, j) = acc;
    }
  return out;
}

HermEig herm_eig(const Mat& m, double herm_tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("herm_eig: matrix not square");
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > herm_tol * std::max(scale, 1e-300))
    throw NotHermitian("herm_eig: Hermiticity residual above tolerance");

  Eigen::SelfAdjointEigenSolver<Mat> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw Error("herm_eig: eigensolver failed to converge");

  HermEig out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  // Deterministic phases: largest-magnitude entry of each column real positive.
  for (Index c = 0; c < out.eigenvectors.cols(); ++c) {
    Index arg = 0;
    double best = -1.0;
    for (Index r = 0; r < out.eigenvectors.rows(); ++r) {
      const double a = std::abs(out.eigenvectors(r, c));
      if (a > best + 1e-14) {
        best = a;
        arg = r;
      }
    }
    const cplx z = out.eigenvectors(arg, c);
    if (std::abs(z) > 0) out.eigenvectors.col(c) *= std::conj(z) / std::abs(z);
  }
  return out;
}

Mat psd_function(const Mat& m, const std::function<cplx(double)>& f,
                 double rank_tol) {
  const HermEig eig = herm_eig(m);
  const double lmax = eig.eigenvalues.size() ? eig.eigenvalues.maxCoeff() : 0.0;
  const double scale = std::max(lmax, 0.0);
  const double threshold = rank_tol * scale;
  if (eig.eigenvalues.size() && eig.eigenvalues.minCoeff() < -threshold)
    throw NotPSD("psd_function: negative eigenvalue below rank threshold");

  Mat out = Mat::Zero(m.rows(), m.cols());
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lam = eig.eigenvalues(k);
    if (lam > threshold)
      out += f(lam) * (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
  }
  return out;
}

Mat hermitian_exp(const Mat& h, double factor) {
  const HermEig eig = herm_eig(h);
  Mat out = Mat::Zero(h.rows(), h.cols());
  for (Index k = 0; k < eig.eigenvalues.size(); ++k)
    out += std::exp(factor * eig.eigenvalues(k)) *
           (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
  return out;
}

Mat range_projection(const Mat& psd, double rank_tol) {
  return psd_function(psd, [](double) { return cplx(1.0, 0.0); }, rank_tol);
}

Mat psd_pseudo_inverse(const Mat& psd, double rank_tol) {
  return psd_function(psd, [](double x) { return cplx(1.0 / x, 0.0); }, rank_tol);
}

Mat matrix_unit(Index d, Index i, Index j) {
  Mat out = Mat::Zero(d, d);
  out(i, j) = cplx(1.0, 0.0);
  return out;
}

Mat embed_operator(const Mat& op, const std::vector<int>& positions,
                   const FactorShape& shape) {
  Index dop = 1;
  for (int p : positions) {
    if (p < 0 || p >= static_cast<int>(shape.size()))
      throw DimensionMismatch("embed_operator: position out of range");
    dop *= shape[static_cast<size_t>(p)];
  }
  if (op.rows() != dop || op.cols() != dop)
    throw DimensionMismatch("embed_operator: operator does not match positions");

  const Index total = shape_product(shape);
  const auto strides = strides_of(shape);

  std::vector<int> rest;
  for (int k = 0; k < static_cast<int>(shape.size()); ++k)
    if (std::find(positions.begin(), positions.end(), k) == positions.end())
      rest.push_back(k);
  Index drest = 1;
  for (int k : rest) drest *= shape[static_cast<size_t>(k)];

  auto offset = [&](const std::vector<int>& factors, Index idx) {
    Index off = 0;
    for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
      const int f = factors[static_cast<size_t>(k)];
      const Index d = shape[static_cast<size_t>(f)];
      off += (idx % d) * strides[static_cast<size_t>(f)];
      idx /= d;
    }
    return off;
  };

  Mat out = Mat::Zero(total, total);
  for (Index a = 0; a < dop; ++a)
    for (Index bidx = 0; bidx < dop; ++bidx) {
      const cplx val = op(a, bidx);
      if (val == cplx(0.0, 0.0)) continue;
      const Index ra = offset(positions, a), cb = offset(positions, bidx);
      for (Index r = 0; r < drest; ++r) {
        const Index ro = offset(rest, r);
        out(ra + ro, cb + ro) += val;
      }
    }
  return out;
}

Vec flatten_row_major(const Mat& m) {
  Vec v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Mat reshape_row_major(const Vec& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw DimensionMismatch("reshape_row_major: size mismatch");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

double rel_residual(const Mat& a, const Mat& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

namespace {

bool wants(unsigned options, unsigned flag) { return (options & flag) != 0; }

template <typename Svd>
SvdData pack_svd(const Svd& svd, unsigned options) {
  SvdData out;
  out.singular_values = svd.singularValues();
  if (wants(options, Eigen::ComputeFullU | Eigen::ComputeThinU)) out.u = svd.matrixU();
  if (wants(options, Eigen::ComputeFullV | Eigen::ComputeThinV)) out.v = svd.matrixV();
  return out;
}

bool svd_acceptable(const Mat& m, const SvdData& d) {
  const RVec& sv = d.singular_values;
  if (!sv.allFinite()) return false;
  double mass = 0.0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) < 0.0) return false;
    if (k > 0 && sv(k) > sv(k - 1) * (1.0 + 1e-12) + 1e-300) return false;
    mass += sv(k) * sv(k);
  }
  const double total = m.squaredNorm();
  if (std::abs(mass - total) > 1e-9 * std::max(total, 1e-300)) return false;

  if (d.u.size() > 0 && d.v.size() > 0) {
    // Reconstruction check on a deterministic probe vector.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec x(m.cols());
    for (Index k = 0; k < m.cols(); ++k) x(k) = cplx(gauss(rng), gauss(rng));
    Vec coef = d.v.adjoint() * x;
    const Index r = std::min<Index>(sv.size(), coef.size());
    coef.conservativeResize(r);
    for (Index k = 0; k < r; ++k) coef(k) *= sv(k);
    const Vec rebuilt = d.u.leftCols(r) * coef;
    const double scale = std::max(1e-300, m.norm() * x.norm());
    if ((Vec(m * x) - rebuilt).norm() > 1e-9 * scale) return false;
  }
  return true;
}

}  // namespace

SvdData robust_svd(const Mat& m, unsigned options) {
  {
    Eigen::BDCSVD<Mat> svd(m, options);
    SvdData out = pack_svd(svd, options);
    if (svd_acceptable(m, out)) return out;
  }
  Eigen::JacobiSVD<Mat> svd(m, options);
  return pack_svd(svd, options);
}

void require_finite(const Mat& m, const std::string& context) {
  if (!m.allFinite()) throw NonFiniteEntry(context + ": non-finite entry");
}

}  // namespace rpkit
