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

#include "rpkit/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rpkit {
namespace {

constexpr long long kPathLimit = 1LL << 60;

double perron_root(const Eigen::MatrixXi& m) {
  Eigen::MatrixXd md = m.cast<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> es(md);
  double best = 0.0;
  for (Index i = 0; i < md.rows(); ++i) {
    best = std::max(best, es.eigenvalues()(i).real());
  }
  return best;
}

}  // namespace

FusionData make_fusion_data(std::vector<std::string> labels,
                            std::vector<Index> dual,
                            std::vector<Eigen::MatrixXi> fusion) {
  const Index n = static_cast<Index>(labels.size());
  if (n == 0) throw DimensionMismatch("fusion data needs at least one label");
  if (static_cast<Index>(dual.size()) != n ||
      static_cast<Index>(fusion.size()) != n) {
    throw DimensionMismatch("fusion data arrays must match the label count");
  }
  for (Index i = 0; i < n; ++i) {
    if (fusion[i].rows() != n || fusion[i].cols() != n) {
      throw DimensionMismatch("fusion matrix " + std::to_string(i) +
                              " has wrong shape");
    }
    if (dual[i] < 0 || dual[i] >= n || dual[dual[i]] != i) {
      throw Inadmissible("dual map is not an involution");
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        const int nijk = fusion[i](j, k);
        if (nijk < 0) throw Inadmissible("negative fusion multiplicity");
        if (fusion[0](j, k) != (j == k ? 1 : 0) ||
            fusion[i](0, k) != (i == k ? 1 : 0)) {
          throw Inadmissible("label 0 does not act as the unit");
        }
        if (fusion[i](j, 0) != (j == dual[i] ? 1 : 0)) {
          throw Inadmissible("fusion into the unit must pair duals");
        }
        if (nijk != fusion[dual[j]](dual[i], dual[k])) {
          throw Inadmissible("fusion rules clash with the dual map");
        }
      }
    }
  }
  // Associativity: sum_m N_{ij}^m N_{mk}^l = sum_m N_{jk}^m N_{im}^l.
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
          long long lhs = 0, rhs = 0;
          for (Index m = 0; m < n; ++m) {
            lhs += static_cast<long long>(fusion[i](j, m)) * fusion[m](k, l);
            rhs += static_cast<long long>(fusion[j](k, m)) * fusion[i](m, l);
          }
          if (lhs != rhs) throw Inadmissible("fusion rules not associative");
        }
      }
    }
  }

  FusionData data;
  data.labels = std::move(labels);
  data.dual = std::move(dual);
  data.fusion = std::move(fusion);
  data.qdim = RVec(n);
  for (Index i = 0; i < n; ++i) data.qdim(i) = perron_root(data.fusion[i]);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      double sum = 0.0;
      for (Index k = 0; k < n; ++k) {
        sum += data.fusion[i](j, k) * data.qdim(k);
      }
      const double lhs = data.qdim(i) * data.qdim(j);
      if (std::abs(lhs - sum) > 1e-12 * std::max(1.0, std::abs(lhs))) {
        throw Inadmissible("quantum dimensions clash with fusion rules");
      }
    }
    if (std::abs(data.qdim(i) - data.qdim(data.dual[i])) > 1e-12) {
      throw Inadmissible("quantum dimension must match its dual");
    }
  }
  data.global_dim = data.qdim.squaredNorm();
  return data;
}

FusionData builtin_fusion(const std::string& name) {
  auto zero = [](Index n) { return Eigen::MatrixXi::Zero(n, n).eval(); };
  if (name == "trivial") {
    Eigen::MatrixXi n1 = zero(1);
    n1(0, 0) = 1;
    return make_fusion_data({"1"}, {0}, {n1});
  }
  if (name == "vec_z2") {
    std::vector<Eigen::MatrixXi> n = {zero(2), zero(2)};
    for (Index i = 0; i < 2; ++i) {
      for (Index j = 0; j < 2; ++j) n[i](j, i ^ j) = 1;
    }
    return make_fusion_data({"0", "1"}, {0, 1}, n);
  }
  if (name == "fibonacci") {
    std::vector<Eigen::MatrixXi> n = {zero(2), zero(2)};
    n[0](0, 0) = 1;
    n[0](1, 1) = 1;
    n[1](0, 1) = 1;
    n[1](1, 0) = 1;
    n[1](1, 1) = 1;
    return make_fusion_data({"1", "t"}, {0, 1}, n);
  }
  if (name == "ising") {
    // labels 1, s, p with s*s = 1 + p, s*p = p*s = s, p*p = 1.
    std::vector<Eigen::MatrixXi> n = {zero(3), zero(3), zero(3)};
    for (Index j = 0; j < 3; ++j) n[0](j, j) = 1;
    n[1](0, 1) = 1;
    n[1](1, 0) = 1;
    n[1](1, 2) = 1;
    n[1](2, 1) = 1;
    n[2](0, 2) = 1;
    n[2](1, 1) = 1;
    n[2](2, 0) = 1;
    return make_fusion_data({"1", "s", "p"}, {0, 1, 2}, n);
  }
  throw ParseError("unknown fusion category: " + name);
}

std::vector<long long> fusion_charge_multiplicities(const FusionData& data,
                                                    Index m) {
  if (m < 0 || m > 12) throw TooLarge("charge multiplicities need 0 <= m <= 12");
  const Index n = data.size();
  std::vector<long long> v(n, 0);
  v[0] = 1;
  for (Index step = 0; step < m; ++step) {
    std::vector<long long> next(n, 0);
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        for (Index j = 0; j < n; ++j) {
          next[x] += v[y] * data.fusion[y](j, x);
        }
      }
      if (next[x] > kPathLimit) throw TooLarge("fusion path count overflow");
    }
    v = std::move(next);
  }
  return v;
}

long long fusion_hom_dims(const FusionData& data, Index m, Index n) {
  if (m > 12 || n > 12) throw TooLarge("hom dimensions need m, n <= 12");
  auto vm = fusion_charge_multiplicities(data, m);
  auto vn = fusion_charge_multiplicities(data, n);
  long long total = 0;
  for (Index x = 0; x < data.size(); ++x) {
    total += vm[x] * vn[x];
    if (total > kPathLimit) throw TooLarge("fusion path count overflow");
  }
  return total;
}

std::vector<Index> fusion_block_signature(const FusionData& data, Index m) {
  auto v = fusion_charge_multiplicities(data, m);
  std::vector<Index> sig;
  for (long long mult : v) {
    if (mult > 0) sig.push_back(static_cast<Index>(mult));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

double stringnet_modular_spectrum(const FusionData& data,
                                  const TubeLabels& labels) {
  if (labels.edges.empty()) throw Inadmissible("empty boundary tube");
  const Index n = data.size();
  for (const auto& e : labels.edges) {
    for (Index part : e) {
      if (part < 0 || part >= n) throw Inadmissible("label out of range");
    }
  }
  for (std::size_t l = 1; l < labels.edges.size(); ++l) {
    if (labels.edges[l][3] != labels.edges[l - 1][0]) {
      throw Inadmissible("tube edge " + std::to_string(l + 1) +
                         " must connect to the previous horizontal label");
    }
  }
  double up = std::log(data.qdim(labels.edges.back()[0]));
  double down = std::log(data.qdim(labels.edges.front()[3]));
  for (const auto& e : labels.edges) {
    up += std::log(data.qdim(e[2]));
    down += std::log(data.qdim(e[1]));
  }
  return up - down;
}

}  // namespace rpkit
