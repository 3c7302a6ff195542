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

#include "rpkit/models.hpp"

#include <cmath>
#include <string>

#include "rpkit/rpcore.hpp"

namespace rpkit {
namespace {

constexpr Index kMaxPlusQubits = 7;  // ambient limited to 14 qubits

PauliString x_pair(int a, int b) {
  PauliString p;
  p.x = (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
  return p;
}

PauliString z_pair(int a, int b) {
  PauliString p;
  p.z = (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
  return p;
}

PauliString z_single(int a) {
  PauliString p;
  p.z = std::uint64_t(1) << a;
  return p;
}

void finish_region(ToricRegion& r) {
  if (r.n_plus > kMaxPlusQubits) {
    throw TooLarge("region needs " + std::to_string(2 * r.n_plus) +
                   " qubits, limit is " + std::to_string(2 * kMaxPlusQubits));
  }
  r.bipartition = qubit_bipartition(static_cast<int>(r.n_plus));
}

}  // namespace

ToricRegion toric_slab(Index l, Index depth) {
  if (l < 2) throw DimensionMismatch("slab length must be at least 2");
  if (depth != 1 && depth != 2) {
    throw DimensionMismatch("slab depth must be 1 or 2");
  }
  ToricRegion r;
  r.l = l;
  r.depth = depth;
  for (Index j = 1; j <= l; ++j) {
    r.plus_labels.push_back("e" + std::to_string(j));
    r.site_distance.push_back(1);
  }
  r.n_plus = l;

  // Crossing stars on (e_{2k-1}, e_{2k}) and crossing plaquettes on
  // (e_{2k}, e_{2k+1}); bits are 0-based site indices.
  for (Index k = 1; 2 * k <= l; ++k) {
    r.cross_factors.push_back(
        x_pair(static_cast<int>(2 * k - 2), static_cast<int>(2 * k - 1)));
  }
  for (Index k = 1; 2 * k + 1 <= l; ++k) {
    r.cross_factors.push_back(
        z_pair(static_cast<int>(2 * k - 1), static_cast<int>(2 * k)));
  }

  if (depth == 2) {
    // Interior stars one row up: X on e_{2k}, e_{2k+1}, f_{2k}, f_{2k+1}.
    std::vector<Index> f_sites;
    for (Index k = 1; 2 * k + 1 <= l; ++k) {
      for (Index j : {2 * k, 2 * k + 1}) {
        bool seen = false;
        for (Index s : f_sites) seen = seen || s == j;
        if (!seen) f_sites.push_back(j);
      }
    }
    std::vector<int> f_local(l + 2, -1);
    for (Index s : f_sites) {
      f_local[s] = static_cast<int>(r.n_plus);
      r.plus_labels.push_back("f" + std::to_string(s));
      r.site_distance.push_back(2);
      ++r.n_plus;
    }
    for (Index k = 1; 2 * k + 1 <= l; ++k) {
      PauliString star;
      star.x = (std::uint64_t(1) << (2 * k - 1)) |
               (std::uint64_t(1) << (2 * k)) |
               (std::uint64_t(1) << f_local[2 * k]) |
               (std::uint64_t(1) << f_local[2 * k + 1]);
      r.plus_terms.push_back(star);
    }
  }

  finish_region(r);
  return r;
}

ToricRegion toric_closed_patch(Index l, bool drop_end_cap) {
  if (l < 2 || l % 2 != 0) {
    throw DimensionMismatch("closed patch needs even length >= 2");
  }
  if (drop_end_cap && l < 4) {
    throw DimensionMismatch("degenerate closed patch needs length >= 4");
  }
  ToricRegion r;
  r.l = l;
  r.depth = 1;
  r.n_plus = l;
  for (Index j = 1; j <= l; ++j) {
    r.plus_labels.push_back("e" + std::to_string(j));
    r.site_distance.push_back(1);
  }
  for (Index k = 1; 2 * k <= l; ++k) {
    r.cross_factors.push_back(
        x_pair(static_cast<int>(2 * k - 2), static_cast<int>(2 * k - 1)));
    r.plus_terms.push_back(
        z_pair(static_cast<int>(2 * k - 2), static_cast<int>(2 * k - 1)));
  }
  // The cap at e_l is a product of every other plaquette, so removing it alone
  // does not free a logical qubit; the degenerate variant removes the last
  // crossing plaquette as well.
  for (Index k = 1; 2 * k + 1 <= l; ++k) {
    if (drop_end_cap && 2 * k + 3 > l) continue;
    r.cross_factors.push_back(
        z_pair(static_cast<int>(2 * k - 1), static_cast<int>(2 * k)));
  }
  r.cross_factors.push_back(z_single(0));
  if (!drop_end_cap) {
    r.cross_factors.push_back(z_single(static_cast<int>(l - 1)));
  }
  finish_region(r);
  return r;
}

ToricParts toric_parts(const ToricRegion& r) {
  const int n = static_cast<int>(r.n_plus);
  const Index dp = Index(1) << n;
  const Mat id = Mat::Identity(dp, dp);
  ToricParts parts;
  parts.h_plus =
      (static_cast<double>(r.cross_factors.size()) / 4.0) * id;
  for (const PauliString& p : r.plus_terms) {
    parts.h_plus += 0.5 * (id - pauli_dense(n, p));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const PauliString& p : r.cross_factors) {
    parts.cross_terms.push_back(inv_sqrt2 * pauli_dense(n, p));
  }
  parts.h_minus = Theta(parts.h_plus, r.bipartition);
  return parts;
}

Mat toric_full_hamiltonian(const ToricRegion& r) {
  if (r.bipartition.ambient_dim() > 1024) {
    throw TooLarge("dense assembly limited to ambient dimension 1024");
  }
  ToricParts parts = toric_parts(r);
  return build_rp_hamiltonian(parts.h_plus, parts.cross_terms, r.bipartition)
      .assembled;
}

std::vector<PauliString> toric_ambient_stabilizers(const ToricRegion& r) {
  const int n = static_cast<int>(r.n_plus);
  std::vector<PauliString> out;
  for (const PauliString& p : r.cross_factors) {
    PauliString amb;
    amb.x = p.x | (p.x << n);
    amb.z = p.z | (p.z << n);
    out.push_back(amb);
  }
  for (const PauliString& p : r.plus_terms) {
    PauliString upper;
    upper.x = p.x << n;
    upper.z = p.z << n;
    out.push_back(upper);
    out.push_back(p);  // mirrored lower term
  }
  return out;
}

std::vector<PauliString> boundary_generators(Index l) {
  if (l < 2 || l > 12) {
    throw TooLarge("boundary algebra supported for 2 <= l <= 12");
  }
  std::vector<PauliString> gens;
  for (Index j = 1; j < l; ++j) {
    const int a = static_cast<int>(j - 1);
    const int b = static_cast<int>(j);
    gens.push_back(j % 2 == 1 ? x_pair(a, b) : z_pair(a, b));
  }
  return gens;
}

PauliSpanInfo toric_boundary_algebra(Index l) {
  return pauli_span_info(boundary_generators(l));
}

MatrixStarAlgebra toric_boundary_algebra_dense(Index l) {
  if (l > 6) throw TooLarge("dense boundary algebra limited to l <= 6");
  const Index d = Index(1) << l;
  std::vector<Mat> gens;
  for (const PauliString& p : boundary_generators(l)) {
    gens.push_back(pauli_dense(static_cast<int>(l), p));
  }
  return generated_algebra(gens, Mat::Identity(d, d));
}

JonesReport toric_jones_tower_check(Index l) {
  if (l < 2 || l > 10) {
    throw TooLarge("jones tower check supported for 2 <= l <= 10");
  }
  JonesReport rep;
  rep.l = l;

  PauliSpanInfo lower =
      l >= 3 ? toric_boundary_algebra(l - 1) : PauliSpanInfo{};
  PauliSpanInfo mid = toric_boundary_algebra(l);
  PauliSpanInfo upper = toric_boundary_algebra(l + 1);
  rep.dim_lm1 = Index(1) << lower.rank_k;
  rep.dim_l = Index(1) << mid.rank_k;
  rep.dim_lp1 = Index(1) << upper.rank_k;
  rep.dim_growth = rep.dim_lp1 == 4 * rep.dim_lm1;

  // e = (I + G_l)/2 with G_l the added pair; for a basis string a of A_l,
  // e a e equals (a + G_l a)/2 when they commute and vanishes otherwise.
  // The conditional expectation onto A_{l-1} keeps members and kills the
  // rest, so the compression identity reduces to: commuting members lie in
  // A_{l-1} and commuting non-members do not occur.
  const PauliString g_l = boundary_generators(l + 1).back();
  Gf2Span lower_span;
  for (const auto& row : lower.basis) lower_span.insert(row[0], row[1]);
  bool ok = true;
  for (const auto& row : mid.basis) {
    const PauliString a{row[0], row[1], 0};
    const bool commutes = pauli_commute(a, g_l);
    const bool member = lower_span.contains(row[0], row[1]);
    if (commutes != member) ok = false;
  }
  rep.tower_relation = ok;

  if (l + 1 <= 8) {
    const int n = static_cast<int>(l + 1);
    const Index d = Index(1) << n;
    const Mat e =
        0.5 * (Mat::Identity(d, d) + pauli_dense(n, g_l));
    // G_{l-1} shares one qubit with G_l and is of the opposite type, so it
    // anticommutes and must compress to zero; at l = 2 it is the x1 x2 pair.
    const Mat seed = pauli_dense(n, boundary_generators(l).back());
    rep.seed_residual = (e * seed * e).cwiseAbs().maxCoeff();
    // Commuting witness: a member of A_{l-1} must compress to itself.
    const Mat a = l >= 3 ? pauli_dense(n, boundary_generators(l - 1).front())
                         : Mat(Mat::Identity(d, d));
    rep.witness_residual = (e * a * e - a * e).cwiseAbs().maxCoeff();
    rep.dense_checked = true;
  }
  return rep;
}

}  // namespace rpkit
