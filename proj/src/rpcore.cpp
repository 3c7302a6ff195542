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

#include "rpkit/rpcore.hpp"

#include <Eigen/SVD>

namespace rpkit {

namespace {

// theta_unitary is often a complex permutation (site reflections); conjugating
// by the correspondence then reduces to pure reindexing of t.
struct GeneralizedPermutation {
  bool valid = false;
  std::vector<Index> row;  // row[q]: row of the single nonzero in column q
  std::vector<cplx> val;   // val[q]: that entry
};

GeneralizedPermutation as_generalized_permutation(const Mat& u) {
  GeneralizedPermutation g;
  const Index d = u.cols();
  g.row.assign(static_cast<size_t>(d), -1);
  g.val.assign(static_cast<size_t>(d), cplx(0, 0));
  std::vector<int> row_hits(static_cast<size_t>(d), 0);
  for (Index q = 0; q < d; ++q) {
    int hits = 0;
    for (Index r = 0; r < d; ++r) {
      if (std::abs(u(r, q)) > 1e-12) {
        ++hits;
        g.row[static_cast<size_t>(q)] = r;
        g.val[static_cast<size_t>(q)] = u(r, q);
        row_hits[static_cast<size_t>(r)]++;
      }
    }
    if (hits != 1) return g;
  }
  for (int h : row_hits)
    if (h != 1) return g;
  g.valid = true;
  return g;
}

void check_ambient(const Mat& t, const Bipartition& b, const char* who) {
  if (t.rows() != b.ambient_dim() || t.cols() != b.ambient_dim())
    throw DimensionMismatch(std::string(who) + ": operator must act on the ambient space");
}

// Matrix of o_inv on row-major vectorizations: column (p,q) holds o_inv(E_pq).
Mat o_inv_matrix(const Bipartition& b) {
  const Index d = b.dim_plus;
  Mat out = Mat::Zero(d * d, d * d);
  for (Index p = 0; p < d; ++p)
    for (Index q = 0; q < d; ++q)
      for (Index m = 0; m < d; ++m)
        out(m * d + p, p * d + q) = b.theta_unitary(m, q);
  return out;
}

Mat o_map_matrix(const Bipartition& b) {
  const Index d = b.dim_plus;
  Mat out = Mat::Zero(d * d, d * d);
  // o_map(v)(p,q) = sum_m conj(U(m,q)) v(m*d + p)
  for (Index p = 0; p < d; ++p)
    for (Index q = 0; q < d; ++q)
      for (Index m = 0; m < d; ++m)
        out(p * d + q, m * d + p) = std::conj(b.theta_unitary(m, q));
  return out;
}

}  // namespace

Mat o_map(const Vec& v, const Bipartition& b) {
  if (v.size() != b.ambient_dim()) throw DimensionMismatch("o_map: wrong vector size");
  const Mat v_grid = reshape_row_major(v, b.dim_minus, b.dim_plus);
  return v_grid.transpose() * b.theta_unitary.conjugate();
}

Vec o_inv(const Mat& m, const Bipartition& b) {
  if (m.rows() != b.dim_plus || m.cols() != b.dim_plus)
    throw DimensionMismatch("o_inv: operator must act on the plus factor");
  return flatten_row_major(b.theta_unitary * m.transpose());
}

SuperOperator conjugate_superop(const Mat& t, const Bipartition& b) {
  check_ambient(t, b, "conjugate_superop");
  const Index d = b.dim_plus;
  SuperOperator s;
  s.dim = d;
  s.choi.resize(d * d, d * d);

  const auto g = as_generalized_permutation(b.theta_unitary);
  if (g.valid) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        const Index cj = g.row[static_cast<size_t>(j)];
        const cplx sj = g.val[static_cast<size_t>(j)];
        for (Index k = 0; k < d; ++k)
          for (Index l = 0; l < d; ++l) {
            const Index cl = g.row[static_cast<size_t>(l)];
            const cplx sl = g.val[static_cast<size_t>(l)];
            s.choi(i * d + k, j * d + l) =
                std::conj(sl) * sj * t(cl * d + k, cj * d + i);
          }
      }
    return s;
  }

  const Mat ms = o_map_matrix(b) * t * o_inv_matrix(b);
  // Choi block (i,j) holds the image of E_ij: reshuffle the superoperator matrix.
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l)
          s.choi(i * d + k, j * d + l) = ms(k * d + l, i * d + j);
  return s;
}

Mat conjugate_superop_matrix(const Mat& t, const Bipartition& b) {
  check_ambient(t, b, "conjugate_superop_matrix");
  return o_map_matrix(b) * t * o_inv_matrix(b);
}

Verdict is_completely_positive(const SuperOperator& s, double tol) {
  const HermEig eig = herm_eig(s.choi, 1e-7);
  Verdict v;
  v.min_eigenvalue = eig.eigenvalues.minCoeff();
  const double lmax = eig.eigenvalues.maxCoeff();
  v.yes = v.min_eigenvalue >= -tol * std::max(1.0, lmax);
  return v;
}

Verdict is_rp_operator(const Mat& t, const Bipartition& b, double tol) {
  return is_completely_positive(conjugate_superop(t, b), tol);
}

Verdict is_rp_state(const Vec& v, const Bipartition& b, double tol) {
  if (v.norm() == 0.0) throw ZeroVector("is_rp_state: zero vector");
  const Mat o = o_map(v, b);
  Verdict out;
  const double scale = std::max(1.0, o.norm());
  if ((o - o.adjoint()).norm() > tol * scale) {
    out.yes = false;
    out.min_eigenvalue = -(o - o.adjoint()).norm();
    return out;
  }
  const HermEig eig = herm_eig((o + o.adjoint()) / 2.0);
  out.min_eigenvalue = eig.eigenvalues.minCoeff();
  out.yes = out.min_eigenvalue >= -tol * std::max(1.0, eig.eigenvalues.maxCoeff());
  return out;
}

Mat rp_direct_gram(const Mat& t, const Bipartition& b) {
  check_ambient(t, b, "rp_direct_gram");
  const Index d = b.dim_plus;
  const Mat& u = b.theta_unitary;
  Mat gram(d * d, d * d);
  Mat t_dc(d, d);
  for (Index c = 0; c < d; ++c)
    for (Index dd = 0; dd < d; ++dd) {
      for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) t_dc(m, n) = t(m * d + dd, n * d + c);
      const Mat w = u.adjoint() * t_dc * u;
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) gram(i * d + j, c * d + dd) = w(j, i);
    }
  return gram;
}

RPHamiltonian build_rp_hamiltonian(const Mat& h_plus, const std::vector<Mat>& cross_terms,
                                   const Bipartition& b, double tol) {
  const Index d = b.dim_plus;
  if (h_plus.rows() != d || h_plus.cols() != d)
    throw DimensionMismatch("build_rp_hamiltonian: h_plus must act on the plus factor");
  if ((h_plus - h_plus.adjoint()).norm() > tol * std::max(1.0, h_plus.norm()))
    throw NotHermitian("build_rp_hamiltonian: h_plus not Hermitian");
  for (const Mat& o : cross_terms)
    if (o.rows() != d || o.cols() != d)
      throw DimensionMismatch("build_rp_hamiltonian: cross term has wrong dimension");

  if (!cross_terms.empty()) {
    Mat stacked(d * d, static_cast<Index>(cross_terms.size()));
    for (size_t j = 0; j < cross_terms.size(); ++j)
      stacked.col(static_cast<Index>(j)) = flatten_row_major(cross_terms[j]);
    Eigen::JacobiSVD<Mat> svd(stacked);
    const double smax = svd.singularValues()(0);
    for (Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) <= 1e-9 * smax)
        throw DimensionMismatch("build_rp_hamiltonian: cross terms linearly dependent");
  }

  RPHamiltonian h;
  h.h_plus = h_plus;
  h.cross_terms = cross_terms;
  const Mat id = Mat::Identity(d, d);
  h.assembled = kron(Theta(h_plus, b), id) + kron(id, h_plus);
  for (const Mat& o : cross_terms) h.assembled -= kron(Theta(o, b), o);
  if ((h.assembled - h.assembled.adjoint()).norm() >
      1e-10 * std::max(1.0, h.assembled.norm()))
    throw NotHermitianAssembly("build_rp_hamiltonian: assembled H not Hermitian");
  return h;
}

}  // namespace rpkit
