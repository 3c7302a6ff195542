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

#pragma once

// Seeded random generators and independent reference oracles shared by the
// test binaries.  Oracles deliberately avoid the library routine they check:
// the partial-trace oracle is a plain index loop, the reflection-positivity
// oracle builds the functional's Gram matrix from first principles, and the
// fusion oracle is integer transfer-matrix power counting.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "rpkit/bipartition.hpp"
#include "rpkit/pauli.hpp"
#include "rpkit/rpcore.hpp"
#include "rpkit/tensorlab.hpp"
#include "rpkit/types.hpp"

namespace testkit {

using rpkit::cplx;
using rpkit::FactorShape;
using rpkit::Index;
using rpkit::Mat;
using rpkit::RVec;
using rpkit::Vec;
using Rng = std::mt19937_64;

inline Mat random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return m;
}

inline Vec random_vector(Rng& rng, Index d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (Index i = 0; i < d; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  return v;
}

inline Mat random_hermitian(Rng& rng, Index d) {
  const Mat m = random_matrix(rng, d, d);
  return (m + m.adjoint()) / 2.0;
}

inline Mat random_unitary(Rng& rng, Index d) {
  const Mat m = random_matrix(rng, d, d);
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    const cplx rkk = r(k, k);
    if (std::abs(rkk) > 0) q.col(k) *= rkk / std::abs(rkk);
  }
  return q;
}

inline Mat random_psd(Rng& rng, Index d) {
  const Mat m = random_matrix(rng, d, d);
  return m * m.adjoint();
}

inline Mat random_projection(Rng& rng, Index d, Index rank) {
  const Mat u = random_unitary(rng, d);
  Mat p = Mat::Zero(d, d);
  for (Index k = 0; k < rank; ++k) p += u.col(k) * u.col(k).adjoint();
  return p;
}

// ---------------------------------------------------------------------------
// Oracles.

// Plain index-loop partial trace, independent of the library implementation.
inline Mat loop_partial_trace(const Mat& m, const FactorShape& shape,
                              const std::set<int>& keep) {
  const int nf = static_cast<int>(shape.size());
  std::vector<int> kept, traced;
  for (int f = 0; f < nf; ++f)
    (keep.count(f) ? kept : traced).push_back(f);
  Index dk = 1, dt = 1;
  for (int f : kept) dk *= shape[f];
  for (int f : traced) dt *= shape[f];

  // digits -> flat index, factor 0 major.
  auto flat = [&](const std::vector<Index>& digits) {
    Index idx = 0;
    for (int f = 0; f < nf; ++f) idx = idx * shape[f] + digits[f];
    return idx;
  };
  auto unpack = [&](Index v, const std::vector<int>& factors) {
    std::vector<Index> digits(factors.size());
    for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
      digits[f] = v % shape[factors[f]];
      v /= shape[factors[f]];
    }
    return digits;
  };

  Mat out = Mat::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a)
    for (Index b = 0; b < dk; ++b) {
      const auto da = unpack(a, kept);
      const auto db = unpack(b, kept);
      cplx sum = 0.0;
      for (Index t = 0; t < dt; ++t) {
        const auto dtr = unpack(t, traced);
        std::vector<Index> ia(nf), ib(nf);
        for (size_t k = 0; k < kept.size(); ++k)
          ia[kept[k]] = da[k], ib[kept[k]] = db[k];
        for (size_t k = 0; k < traced.size(); ++k)
          ia[traced[k]] = dtr[k], ib[traced[k]] = dtr[k];
        sum += m(flat(ia), flat(ib));
      }
      out(a, b) = sum;
    }
  return out;
}

// Gram matrix of the quadratic functional X -> Tr(t (theta X theta^-1 (x) X))
// over the matrix-unit basis of the plus observables, built from the raw
// definition (reflection realized directly through the bipartition unitary).
// The functional is nonnegative for every X exactly when this matrix is PSD.
inline Mat rp_gram_oracle(const Mat& t, const rpkit::Bipartition& b) {
  const Index dp = b.dim_plus;
  const Mat& u = b.theta_unitary;
  std::vector<Mat> units, reflected;
  for (Index i = 0; i < dp; ++i)
    for (Index j = 0; j < dp; ++j) {
      Mat e = Mat::Zero(dp, dp);
      e(i, j) = 1.0;
      units.push_back(e);
      reflected.push_back(u * e.conjugate() * u.adjoint());
    }
  const Index n = dp * dp;
  Mat gram(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index c = 0; c < n; ++c)
      gram(a, c) = (t * rpkit::kron(reflected[a], units[c])).trace();
  return gram;
}

// Same acceptance rule as the library verdicts: smallest eigenvalue above
// -tol * max(1, largest eigenvalue).
inline bool psd_verdict(const Mat& hermitian, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es((hermitian + hermitian.adjoint()) / 2.0);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return lo >= -tol * std::max(1.0, hi);
}

inline double min_eig(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es((hermitian + hermitian.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

// GF(2) row rank of (x|z) mask pairs by plain elimination.
inline int gf2_rank_oracle(std::vector<std::array<std::uint64_t, 2>> rows) {
  int rank = 0;
  for (int bit = 127; bit >= 0; --bit) {
    const int word = bit / 64, shift = bit % 64;
    size_t pivot = rows.size();
    for (size_t r = rank; r < rows.size(); ++r)
      if ((rows[r][word] >> shift) & 1u) {
        pivot = r;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != static_cast<size_t>(rank) && ((rows[r][word] >> shift) & 1u)) {
        rows[r][0] ^= rows[rank][0];
        rows[r][1] ^= rows[rank][1];
      }
    ++rank;
  }
  return rank;
}

// Integer path counting for the object A = direct sum of all simple objects:
// multiplicity vector of A^m via powers of the total fusion matrix.
inline std::vector<long long> fusion_mult_oracle(
    const std::vector<Eigen::MatrixXi>& fusion, Index m) {
  const Index n = fusion[0].rows();
  Eigen::MatrixXi total = Eigen::MatrixXi::Zero(n, n);
  for (const auto& ni : fusion) total += ni;  // total(j, k) = sum_i N_{ij}^k
  std::vector<long long> mult(n, 0);
  for (Index j = 0; j < n; ++j) mult[j] = 1;  // A^1
  for (Index step = 1; step < m; ++step) {
    std::vector<long long> next(n, 0);
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) next[k] += mult[j] * total(j, k);
    mult = next;
  }
  return mult;
}

// ---------------------------------------------------------------------------
// Structured random instances.

// Hermitian Pauli phase for masks (x, z): i^{|x & z|} X(x) Z(z).
inline rpkit::PauliString hermitian_pauli(std::uint64_t x, std::uint64_t z) {
  rpkit::PauliString p;
  p.x = x;
  p.z = z;
  p.phase = static_cast<int>(__builtin_popcountll(x & z) % 4);
  return p;
}

// `count` mutually commuting, GF(2)-independent Hermitian Pauli strings on
// n qubits (never the identity).
inline std::vector<rpkit::PauliString> random_commuting_paulis(Rng& rng,
                                                               int n_qubits,
                                                               int count) {
  const std::uint64_t mask = (n_qubits >= 64) ? ~0ull : ((1ull << n_qubits) - 1);
  std::vector<rpkit::PauliString> out;
  std::vector<std::array<std::uint64_t, 2>> accepted;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && ++guard < 4096) {
    const std::uint64_t x = rng() & mask;
    const std::uint64_t z = rng() & mask;
    if (x == 0 && z == 0) continue;
    const rpkit::PauliString p = hermitian_pauli(x, z);
    bool ok = true;
    for (const auto& q : out)
      if (!rpkit::pauli_commute(p, q)) ok = false;
    if (!ok) continue;
    auto rows = accepted;
    rows.push_back({x, z});
    if (gf2_rank_oracle(rows) != static_cast<int>(rows.size())) continue;
    accepted.push_back({x, z});
    out.push_back(p);
  }
  return out;
}

// A reflection positive Hamiltonian instance: Hermitian upper part plus
// dagger-paired crossing factors on a plain conjugation bipartition.
struct RpInstance {
  rpkit::Bipartition b;
  Mat h_plus;
  std::vector<Mat> cross;
  rpkit::RPHamiltonian ham;
};

inline RpInstance random_rp_instance(Rng& rng, Index dp, int n_pairs,
                                     bool hermitian_cross) {
  RpInstance inst;
  inst.b = rpkit::make_bipartition(FactorShape{dp}, Mat::Identity(dp, dp));
  inst.h_plus = random_hermitian(rng, dp);
  for (int k = 0; k < n_pairs; ++k) {
    if (hermitian_cross) {
      inst.cross.push_back(random_hermitian(rng, dp));
    } else {
      const Mat m = random_matrix(rng, dp, dp) / std::sqrt(2.0);
      inst.cross.push_back(m);
      inst.cross.push_back(m.adjoint());
    }
  }
  inst.ham = rpkit::build_rp_hamiltonian(inst.h_plus, inst.cross, inst.b);
  return inst;
}

// The same two-sided assembly but with the crossing sign flipped, which
// breaks positivity of the heat semigroup.
inline Mat sign_flipped_assembly(const RpInstance& inst) {
  const Index dp = inst.b.dim_plus;
  const Mat id = Mat::Identity(dp, dp);
  Mat h = rpkit::kron(rpkit::Theta(inst.h_plus, inst.b), id) +
          rpkit::kron(id, inst.h_plus);
  for (const Mat& o : inst.cross)
    h += rpkit::kron(rpkit::Theta(o, inst.b), o);
  return h;
}

// Dagger-closed Kraus list; with_kernel confines every operator to a common
// proper invariant subspace so the maximal support ends up rank deficient.
inline std::vector<Mat> random_kraus_set(Rng& rng, Index d, bool with_kernel) {
  std::vector<Mat> kraus;
  Mat m = random_matrix(rng, d, d);
  if (with_kernel && d >= 3) {
    const Mat u = random_unitary(rng, d);
    Mat blk = Mat::Zero(d, d);
    blk.topLeftCorner(d - 1, d - 1) = random_matrix(rng, d - 1, d - 1);
    m = u * blk * u.adjoint();
    kraus.push_back(m / 2.0);
    kraus.push_back(m.adjoint() / 2.0);
    Mat herm = Mat::Zero(d, d);
    herm.topLeftCorner(d - 1, d - 1) = random_hermitian(rng, d - 1);
    kraus.push_back(u * herm * u.adjoint() / 2.0);
  } else {
    kraus.push_back(m / 2.0);
    kraus.push_back(m.adjoint() / 2.0);
    kraus.push_back(random_hermitian(rng, d) / 2.0);
  }
  return kraus;
}

}  // namespace testkit
