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

#include "rpkit/bipartition.hpp"

namespace rpkit {

FactorShape Bipartition::ambient_shape() const {
  FactorShape shape = minus_shape;
  shape.insert(shape.end(), plus_shape.begin(), plus_shape.end());
  return shape;
}

namespace {

void validate(Bipartition& b, double tol) {
  if (b.dim_minus != b.dim_plus)
    throw DimensionMismatch("bipartition: factor dimensions must match");
  require_finite(b.theta_unitary, "bipartition");
  const Index d = b.dim_plus;
  if (b.theta_unitary.rows() != d || b.theta_unitary.cols() != d)
    throw DimensionMismatch("bipartition: theta_unitary has wrong shape");
  const Mat id = Mat::Identity(d, d);
  if ((b.theta_unitary.adjoint() * b.theta_unitary - id).norm() > tol * std::sqrt((double)d))
    throw NotUnitary("bipartition: theta_unitary is not unitary");
  // theta_hat squared must act as the identity.
  if ((b.theta_unitary * b.theta_unitary.conjugate() - id).norm() > tol * std::sqrt((double)d))
    throw NotUnitary("bipartition: reflection does not square to the identity");
}

}  // namespace

Bipartition make_bipartition(const FactorShape& plus_shape, const Mat& theta_unitary,
                             double tol) {
  Bipartition b;
  b.plus_shape = plus_shape;
  b.minus_shape = plus_shape;
  b.dim_plus = shape_product(plus_shape);
  b.dim_minus = theta_unitary.rows();
  b.theta_unitary = theta_unitary;
  b.site_map.resize(plus_shape.size());
  for (size_t k = 0; k < plus_shape.size(); ++k) b.site_map[k] = static_cast<int>(k);
  validate(b, tol);
  return b;
}

Bipartition make_bipartition_from_sites(const FactorShape& plus_shape,
                                        const std::vector<int>& site_map,
                                        const std::vector<Mat>& theta0, double tol) {
  const size_t n = plus_shape.size();
  if (site_map.size() != n)
    throw DimensionMismatch("bipartition: site_map must cover every site");
  std::vector<bool> seen(n, false);
  for (int s : site_map) {
    if (s < 0 || s >= static_cast<int>(n) || seen[static_cast<size_t>(s)])
      throw DimensionMismatch("bipartition: site_map is not a bijection");
    seen[static_cast<size_t>(s)] = true;
  }
  if (!theta0.empty() && theta0.size() != n)
    throw DimensionMismatch("bipartition: one twist per site or none");

  Bipartition b;
  b.plus_shape = plus_shape;
  b.minus_shape.resize(n);
  for (size_t k = 0; k < n; ++k)
    b.minus_shape[k] = plus_shape[static_cast<size_t>(site_map[k])];
  b.dim_plus = shape_product(plus_shape);
  b.dim_minus = shape_product(b.minus_shape);
  b.site_map = site_map;

  // Per-site action first (twist then conjugation handled by the caller-facing
  // convention theta_hat(v) = U conj(v)), then the factor permutation.
  Mat twisted = Mat::Identity(1, 1);
  for (size_t k = 0; k < n; ++k) {
    const Index d = plus_shape[k];
    Mat t = theta0.empty() ? Mat(Mat::Identity(d, d)) : theta0[k];
    if (t.rows() != d || t.cols() != d)
      throw DimensionMismatch("bipartition: twist has wrong on-site dimension");
    twisted = kron(twisted, t);
  }

  // Permutation sending the plus basis index to the mirrored minus basis index:
  // minus factor k carries the (twisted) state of plus factor site_map[k].
  const auto plus_strides = [&] {
    std::vector<Index> s(n);
    Index acc = 1;
    for (int k = static_cast<int>(n) - 1; k >= 0; --k) {
      s[static_cast<size_t>(k)] = acc;
      acc *= plus_shape[static_cast<size_t>(k)];
    }
    return s;
  }();
  Mat perm = Mat::Zero(b.dim_minus, b.dim_plus);
  for (Index idx = 0; idx < b.dim_plus; ++idx) {
    Index rem = idx, target = 0, stride = 1;
    std::vector<Index> digits(n);
    for (size_t k = 0; k < n; ++k) {
      digits[k] = rem / plus_strides[k];
      rem %= plus_strides[k];
    }
    for (int k = static_cast<int>(n) - 1; k >= 0; --k) {
      target += digits[static_cast<size_t>(b.site_map[static_cast<size_t>(k)])] * stride;
      stride *= b.minus_shape[static_cast<size_t>(k)];
    }
    perm(target, idx) = cplx(1.0, 0.0);
  }
  b.theta_unitary = perm * twisted;
  validate(b, tol);
  return b;
}

Bipartition qubit_bipartition(int n_plus_sites) {
  FactorShape shape(static_cast<size_t>(n_plus_sites), 2);
  std::vector<int> ident(static_cast<size_t>(n_plus_sites));
  for (int k = 0; k < n_plus_sites; ++k) ident[static_cast<size_t>(k)] = k;
  return make_bipartition_from_sites(shape, ident);
}

Vec theta_hat(const Vec& v, const Bipartition& b) {
  if (v.size() != b.dim_plus) throw DimensionMismatch("theta_hat: wrong dimension");
  return b.theta_unitary * v.conjugate();
}

Vec theta_hat_inverse(const Vec& v, const Bipartition& b) {
  if (v.size() != b.dim_minus)
    throw DimensionMismatch("theta_hat_inverse: wrong dimension");
  return (b.theta_unitary.adjoint() * v).conjugate();
}

Mat Theta(const Mat& x, const Bipartition& b) {
  if (x.rows() != b.dim_plus || x.cols() != b.dim_plus)
    throw DimensionMismatch("Theta: operator must act on the plus factor");
  return b.theta_unitary * x.conjugate() * b.theta_unitary.adjoint();
}

Mat Theta_inverse(const Mat& y, const Bipartition& b) {
  if (y.rows() != b.dim_minus || y.cols() != b.dim_minus)
    throw DimensionMismatch("Theta_inverse: operator must act on the minus factor");
  return (b.theta_unitary.adjoint() * y * b.theta_unitary).conjugate();
}

Vec max_entangled(const Bipartition& b) {
  // Component at (minus m, plus p) is (theta_hat e_p)_m, i.e. column p of U.
  return flatten_row_major(b.theta_unitary);
}

}  // namespace rpkit
