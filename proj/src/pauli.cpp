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

#include "rpkit/pauli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <utility>

namespace rpkit {
namespace {

int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

cplx phase_value(int phase) {
  static const cplx table[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                cplx(0, -1)};
  return table[((phase % 4) + 4) % 4];
}

// Reverse the low n bits so qubit j lands on index bit n-1-j.
std::uint64_t to_index_bits(std::uint64_t mask, int n) {
  std::uint64_t out = 0;
  for (int j = 0; j < n; ++j) {
    if ((mask >> j) & 1u) out |= std::uint64_t(1) << (n - 1 - j);
  }
  return out;
}

void check_qubit_count(int n) {
  if (n < 0 || n > 12) {
    throw TooLarge("dense stabilizer computation limited to 12 qubits, got " +
                   std::to_string(n));
  }
}

// Group closure with sign-consistency detection; key = (x, z).  Requires
// commuting Hermitian generators so that the coset update H -> H u Hg closes.
std::map<std::pair<std::uint64_t, std::uint64_t>, int> group_closure(
    const std::vector<PauliString>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!pauli_hermitian(gens[i])) {
      throw NotHermitian("pauli group generator " + std::to_string(i) +
                         " is not Hermitian");
    }
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!pauli_commute(gens[i], gens[j])) {
        throw CommutationFailure("pauli group generators " + std::to_string(i) +
                                 " and " + std::to_string(j) +
                                 " do not commute");
      }
    }
  }
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> group;
  group[{0, 0}] = 0;
  for (const PauliString& g : gens) {
    auto it = group.find({g.x, g.z});
    if (it != group.end()) {
      if (it->second != ((g.phase % 4) + 4) % 4) {
        throw NotProjection(
            "stabilizer generators are sign-inconsistent (group contains -I)");
      }
      continue;
    }
    std::vector<PauliString> fresh;
    for (const auto& [key, phase] : group) {
      PauliString t = pauli_mul({key.first, key.second, phase}, g);
      fresh.push_back(t);
    }
    for (const PauliString& t : fresh) {
      auto jt = group.find({t.x, t.z});
      if (jt != group.end()) {
        if (jt->second != ((t.phase % 4) + 4) % 4) {
          throw NotProjection(
              "stabilizer generators are sign-inconsistent (group contains "
              "-I)");
        }
      } else {
        group[{t.x, t.z}] = ((t.phase % 4) + 4) % 4;
      }
    }
  }
  return group;
}

Index log2_size(std::size_t size) {
  Index k = 0;
  while ((std::size_t(1) << k) < size) ++k;
  return k;
}

}  // namespace

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  PauliString out;
  out.x = a.x ^ b.x;
  out.z = a.z ^ b.z;
  out.phase = (a.phase + b.phase + 2 * (std::popcount(a.z & b.x) & 3)) % 4;
  return out;
}

bool pauli_commute(const PauliString& a, const PauliString& b) {
  return ((parity64(a.x & b.z) + parity64(a.z & b.x)) & 1) == 0;
}

bool pauli_hermitian(const PauliString& p) {
  // (i^f XZ)^dag = (-i)^f (-1)^{x.z} XZ, so Hermitian iff f and |x&z| agree
  // mod 2.
  return (std::popcount(p.x & p.z) & 1) == ((((p.phase % 4) + 4) % 4) & 1);
}

Mat pauli_dense(int n, const PauliString& p) {
  check_qubit_count(n);
  const Index d = Index(1) << n;
  const std::uint64_t xm = to_index_bits(p.x, n);
  const std::uint64_t zm = to_index_bits(p.z, n);
  const cplx ph = phase_value(p.phase);
  Mat out = Mat::Zero(d, d);
  for (Index c = 0; c < d; ++c) {
    const double sign = parity64(zm & std::uint64_t(c)) ? -1.0 : 1.0;
    out(static_cast<Index>(std::uint64_t(c) ^ xm), c) = ph * sign;
  }
  return out;
}

Mat pauli_apply_left(int n, const PauliString& p, const Mat& m) {
  check_qubit_count(n);
  const Index d = Index(1) << n;
  if (m.rows() != d) {
    throw DimensionMismatch("pauli_apply_left: matrix has " +
                            std::to_string(m.rows()) + " rows, expected " +
                            std::to_string(d));
  }
  const std::uint64_t xm = to_index_bits(p.x, n);
  const std::uint64_t zm = to_index_bits(p.z, n);
  const cplx ph = phase_value(p.phase);
  Mat out(d, m.cols());
  for (Index i = 0; i < d; ++i) {
    const Index src = static_cast<Index>(std::uint64_t(i) ^ xm);
    const double sign = parity64(zm & std::uint64_t(src)) ? -1.0 : 1.0;
    out.row(i) = (ph * sign) * m.row(src);
  }
  return out;
}

Mat stabilizer_projector(int n, const std::vector<PauliString>& gens) {
  check_qubit_count(n);
  const Index d = Index(1) << n;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!pauli_hermitian(gens[i])) {
      throw NotHermitian("stabilizer generator " + std::to_string(i) +
                         " is not Hermitian");
    }
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!pauli_commute(gens[i], gens[j])) {
        throw CommutationFailure("stabilizer generators " + std::to_string(i) +
                                 " and " + std::to_string(j) +
                                 " do not commute");
      }
    }
  }
  group_closure(gens);  // sign-consistency check
  Mat p = Mat::Identity(d, d);
  for (const PauliString& g : gens) {
    p = 0.5 * (p + pauli_apply_left(n, g, p));
  }
  return p;
}

Index pauli_rank(const std::vector<PauliString>& gens) {
  Gf2Span span;
  for (const PauliString& g : gens) span.insert(g.x, g.z);
  return span.rank();
}

bool Gf2Span::insert(std::uint64_t x, std::uint64_t z) {
  for (const auto& row : rows) {
    const std::uint64_t lead_x = row[0] ? (row[0] & ~(row[0] - 1)) : 0;
    const std::uint64_t lead_z = row[0] ? 0 : (row[1] & ~(row[1] - 1));
    const bool hit = row[0] ? (x & lead_x) != 0 : (z & lead_z) != 0;
    if (hit) {
      x ^= row[0];
      z ^= row[1];
    }
  }
  if (x == 0 && z == 0) return false;
  // Reduce existing rows by the new one, keeping the basis row-reduced.
  const std::uint64_t lead_x = x ? (x & ~(x - 1)) : 0;
  const std::uint64_t lead_z = x ? 0 : (z & ~(z - 1));
  for (auto& row : rows) {
    const bool hit = x ? (row[0] & lead_x) != 0 : (row[1] & lead_z) != 0;
    if (hit) {
      row[0] ^= x;
      row[1] ^= z;
    }
  }
  rows.push_back({x, z});
  std::sort(rows.begin(), rows.end());
  return true;
}

bool Gf2Span::contains(std::uint64_t x, std::uint64_t z) const {
  // Eliminate with every row whose leading bit is present; basis rows have
  // distinct leading bits, so a single sweep in any order suffices after
  // repeating until stable.
  bool changed = true;
  while (changed && (x != 0 || z != 0)) {
    changed = false;
    for (const auto& row : rows) {
      const std::uint64_t rx = row[0];
      const std::uint64_t rz = row[1];
      const std::uint64_t lead_x = rx ? (rx & ~(rx - 1)) : 0;
      const std::uint64_t lead_z = rx ? 0 : (rz & ~(rz - 1));
      const bool hit = rx ? (x & lead_x) != 0 : (z & lead_z) != 0;
      if (hit) {
        x ^= rx;
        z ^= rz;
        changed = true;
      }
    }
  }
  return x == 0 && z == 0;
}

PauliSpanInfo pauli_span_info(const std::vector<PauliString>& gens) {
  PauliSpanInfo info;
  Gf2Span span;
  for (const PauliString& g : gens) span.insert(g.x, g.z);
  info.basis = span.rows;
  info.rank_k = span.rank();
  const Index k = info.rank_k;
  if (k > 62) throw TooLarge("pauli span rank exceeds 62");

  // Commutation form on the span basis, rows as bit masks.
  std::vector<std::uint64_t> gram(k, 0);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      const PauliString pa{info.basis[a][0], info.basis[a][1], 0};
      const PauliString pb{info.basis[b][0], info.basis[b][1], 0};
      if (!pauli_commute(pa, pb)) gram[a] |= std::uint64_t(1) << b;
    }
  }

  // GF(2) elimination of the Gram matrix; record the nullspace combinations.
  std::vector<std::uint64_t> rows = gram;
  std::vector<std::uint64_t> combo(k);
  for (Index i = 0; i < k; ++i) combo[i] = std::uint64_t(1) << i;
  Index r = 0;
  for (Index col = 0; col < k && r < k; ++col) {
    Index pivot = -1;
    for (Index i = r; i < k; ++i) {
      if ((rows[i] >> col) & 1u) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    std::swap(combo[r], combo[pivot]);
    for (Index i = 0; i < k; ++i) {
      if (i != r && ((rows[i] >> col) & 1u)) {
        rows[i] ^= rows[r];
        combo[i] ^= combo[r];
      }
    }
    ++r;
  }
  info.symp_rank_r = r;
  if (r % 2 != 0) throw NonIntegerBlock("commutation form has odd rank");

  for (Index i = r; i < k; ++i) {
    std::array<std::uint64_t, 2> mask = {0, 0};
    for (Index a = 0; a < k; ++a) {
      if ((combo[i] >> a) & 1u) {
        mask[0] ^= info.basis[a][0];
        mask[1] ^= info.basis[a][1];
      }
    }
    info.center_basis.push_back(mask);
  }

  const Index blocks = Index(1) << (k - r);
  const Index size = Index(1) << (r / 2);
  info.block_signature.assign(blocks, size);
  return info;
}

std::vector<PauliString> pauli_group_elements(
    const std::vector<PauliString>& gens) {
  auto group = group_closure(gens);
  std::vector<PauliString> out;
  out.reserve(group.size());
  for (const auto& [key, phase] : group) {
    out.push_back({key.first, key.second, phase});
  }
  return out;
}

Mat stabilizer_reduced_projector(int n, const std::vector<PauliString>& gens,
                                 std::uint64_t minus_mask) {
  auto group = pauli_group_elements(gens);
  const Index k = log2_size(group.size());
  const int n_minus = std::popcount(minus_mask);
  const int n_plus = n - n_minus;
  check_qubit_count(n_plus);
  const double d_minus = static_cast<double>(Index(1) << n_minus);
  const double scale = d_minus / static_cast<double>(Index(1) << k);

  // Map the remaining qubits to local indices in increasing order.
  std::vector<int> local(n, -1);
  int next = 0;
  for (int j = 0; j < n; ++j) {
    if (!((minus_mask >> j) & 1u)) local[j] = next++;
  }

  const Index dp = Index(1) << n_plus;
  Mat out = Mat::Zero(dp, dp);
  for (const PauliString& t : group) {
    if (((t.x | t.z) & minus_mask) != 0) continue;
    PauliString loc;
    loc.phase = t.phase;
    for (int j = 0; j < n; ++j) {
      if (local[j] < 0) continue;
      if ((t.x >> j) & 1u) loc.x |= std::uint64_t(1) << local[j];
      if ((t.z >> j) & 1u) loc.z |= std::uint64_t(1) << local[j];
    }
    out += scale * pauli_dense(n_plus, loc);
  }
  return out;
}

Index stabilizer_degeneracy(int n, const std::vector<PauliString>& gens) {
  auto group = pauli_group_elements(gens);
  const Index k = log2_size(group.size());
  if (k > n) throw DimensionMismatch("stabilizer rank exceeds qubit count");
  return Index(1) << (n - k);
}

}  // namespace rpkit
