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

#include "rpkit/localnet.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <sstream>

#include "rpkit/groundstate.hpp"
#include "rpkit/json_io.hpp"
#include "rpkit/osrecon.hpp"
#include "rpkit/rpcore.hpp"
#include "rpkit/tensorlab.hpp"

namespace rpkit {
namespace {

// Difference normalized with a floor of 1: the compared operators are built
// from HS-orthonormal basis elements, and products of those can legitimately
// vanish; a purely relative residual would read such noise as O(1).
double floored_residual(const Mat& a, const Mat& b) {
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

bool sorted_unique(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) return false;
  }
  return true;
}

bool contains_all(const std::vector<int>& super, const std::vector<int>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// Local positions of `sub` inside the sorted site list `super`.
std::vector<int> positions_in(const std::vector<int>& sub,
                              const std::vector<int>& super) {
  std::vector<int> pos;
  for (int s : sub) {
    const auto it = std::lower_bound(super.begin(), super.end(), s);
    if (it == super.end() || *it != s) {
      throw DimensionMismatch("site " + std::to_string(s) +
                              " missing from the enclosing region");
    }
    pos.push_back(static_cast<int>(it - super.begin()));
  }
  return pos;
}

FactorShape region_shape(const InteractionSpec& spec, const Region& r) {
  FactorShape shape;
  for (int s : r.sites) shape.push_back(spec.sites[s].dim);
  return shape;
}

Mat embed_term(const InteractionSpec::Term& term, const Region& r,
               const FactorShape& shape) {
  return embed_operator(term.op, positions_in(term.sites, r.sites), shape);
}

// Compress a Pauli string with global-position bit masks onto its support:
// output bit i is input bit sites[i].
PauliString compress_pauli(const PauliString& p, const std::vector<int>& sites) {
  PauliString out;
  out.phase = p.phase;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if ((p.x >> sites[i]) & 1u) out.x |= std::uint64_t(1) << i;
    if ((p.z >> sites[i]) & 1u) out.z |= std::uint64_t(1) << i;
  }
  return out;
}

// Remap a Pauli string whose bit t refers to global site term_sites[t] onto
// region-local bits.
PauliString relabel_pauli(const PauliString& p,
                          const std::vector<int>& term_sites,
                          const std::vector<int>& region_sites) {
  const std::vector<int> pos = positions_in(term_sites, region_sites);
  PauliString out;
  out.phase = p.phase;
  for (std::size_t t = 0; t < term_sites.size(); ++t) {
    if ((p.x >> t) & 1u) out.x |= std::uint64_t(1) << pos[t];
    if ((p.z >> t) & 1u) out.z |= std::uint64_t(1) << pos[t];
  }
  return out;
}

Bipartition region_bipartition(const InteractionSpec& spec, const Region& r) {
  const FactorShape shape = region_shape(spec, r);
  std::vector<int> site_map(shape.size());
  for (std::size_t k = 0; k < shape.size(); ++k) site_map[k] = static_cast<int>(k);
  bool any_twist = false;
  for (int s : r.sites) any_twist = any_twist || spec.sites[s].twist.size() > 0;
  if (!any_twist) return make_bipartition_from_sites(shape, site_map);
  std::vector<Mat> twists;
  for (int s : r.sites) {
    const auto& w = spec.sites[s].twist;
    twists.push_back(w.size() > 0
                         ? w
                         : Mat(Mat::Identity(spec.sites[s].dim, spec.sites[s].dim)));
  }
  return make_bipartition_from_sites(shape, site_map, twists);
}

RegionData dense_region_data(const InteractionSpec& spec, const Region& r) {
  RegionData d;
  d.plus_shape = region_shape(spec, r);
  d.b = region_bipartition(spec, r);
  const Index dp = d.b.dim_plus;

  Mat h_plus = Mat::Zero(dp, dp);
  for (const auto& term : spec.plus_terms) {
    if (contains_all(r.sites, term.sites)) h_plus += embed_term(term, r, d.plus_shape);
  }
  std::vector<Mat> cross;
  for (const auto& term : spec.cross_terms) {
    if (contains_all(r.sites, term.sites)) cross.push_back(embed_term(term, r, d.plus_shape));
  }

  const Mat h = build_rp_hamiltonian(h_plus, cross, d.b).assembled;
  const GroundData g = ground_projection(h);
  const OSRResult osr = field_algebra(g.projection_pi, d.b);
  d.pi_hat = osr.pi_hat;
  d.trace_pi = osr.trace_pi;
  d.reduced_pi = osr.vacuum_density * osr.trace_pi;
  d.xi = osr.xi;
  d.alg = osr.field_algebra;
  d.signature = center_and_blocks(d.alg).block_signature;
  return d;
}

RegionData stabilizer_region_data(const InteractionSpec& spec, const Region& r) {
  RegionData d;
  d.plus_shape = region_shape(spec, r);
  d.b = region_bipartition(spec, r);
  const int n = static_cast<int>(r.sites.size());
  const Index dp = Index(1) << n;
  const std::uint64_t minus_mask = (std::uint64_t(1) << n) - 1;

  // Ambient generators: minus qubits 0..n-1 mirror plus qubits n..2n-1.
  // Crossing terms give Theta(P) (x) P; one-sided terms appear twice, upper
  // and mirrored (conjugation flips the phase exponent of a Pauli string).
  std::vector<PauliString> gens;
  std::vector<PauliString> plus_parts;  // generators of the upper-factor span
  for (std::size_t j = 0; j < spec.cross_terms.size(); ++j) {
    if (!contains_all(r.sites, spec.cross_terms[j].sites)) continue;
    const PauliString p =
        relabel_pauli(spec.cross_paulis[j], spec.cross_terms[j].sites, r.sites);
    PauliString amb;
    amb.x = p.x | (p.x << n);
    amb.z = p.z | (p.z << n);
    gens.push_back(amb);
    plus_parts.push_back({p.x, p.z, 0});
  }
  for (std::size_t j = 0; j < spec.plus_terms.size(); ++j) {
    if (!contains_all(r.sites, spec.plus_terms[j].sites)) continue;
    const PauliString p =
        relabel_pauli(spec.plus_paulis[j], spec.plus_terms[j].sites, r.sites);
    gens.push_back({p.x << n, p.z << n, p.phase});
    gens.push_back({p.x, p.z, (4 - p.phase) % 4});
    plus_parts.push_back({p.x, p.z, 0});
  }

  const auto group = pauli_group_elements(gens);
  Index k = 0;
  while ((std::size_t(1) << k) < group.size()) ++k;
  d.trace_pi = static_cast<double>(Index(1) << (2 * n - k));
  d.reduced_pi = stabilizer_reduced_projector(2 * n, gens, minus_mask);
  d.pi_hat = range_projection(d.reduced_pi);

  // Ground-state matrix via the group sum: with plain conjugation the
  // operator image of Pi * (maximally entangled vector) works out to
  // 2^-k sum_T phase(T) T_plus T_minus^T.
  Mat xi = Mat::Zero(dp, dp);
  const cplx phases[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (const PauliString& t : group) {
    const Mat t_plus = pauli_dense(n, {t.x >> n, t.z >> n, 0});
    const Mat t_minus = pauli_dense(n, {t.x & minus_mask, t.z & minus_mask, 0});
    xi += phases[((t.phase % 4) + 4) % 4] * (t_plus * t_minus.transpose());
  }
  xi /= static_cast<double>(group.size());
  d.xi = 0.5 * (xi + xi.adjoint());
  require_finite(d.xi, "stabilizer ground-state matrix");

  // Boundary algebra: the upper-factor span of the stabilizer group, cut by
  // the support projection.
  Gf2Span span;
  for (const PauliString& p : plus_parts) span.insert(p.x, p.z);
  if (span.rank() > 12) throw TooLarge("upper-factor span too large to enumerate");
  std::vector<Mat> mats;
  const Index combos = Index(1) << span.rank();
  for (Index c = 0; c < combos; ++c) {
    std::uint64_t x = 0, z = 0;
    for (Index b = 0; b < span.rank(); ++b) {
      if ((c >> b) & 1) {
        x ^= span.rows[b][0];
        z ^= span.rows[b][1];
      }
    }
    mats.push_back(pauli_dense(n, {x, z, 0}) * d.pi_hat);
  }
  d.alg.ambient_dim = dp;
  d.alg.unit = d.pi_hat;
  d.alg.basis = orthonormalize_span(mats);
  d.signature = center_and_blocks(d.alg).block_signature;
  return d;
}

std::vector<Mat> inclusion_images(const RegionData& dx, const RegionData& dy,
                                  const std::vector<int>& pos) {
  std::vector<Mat> images;
  for (const Mat& a : dx.alg.basis) {
    images.push_back(embed_operator(a, pos, dy.plus_shape) * dy.pi_hat);
  }
  return images;
}

Index stacked_rank(const std::vector<Mat>& mats, double tol) {
  if (mats.empty()) return 0;
  Mat stacked(mats[0].size(), static_cast<Index>(mats.size()));
  for (std::size_t j = 0; j < mats.size(); ++j) {
    stacked.col(static_cast<Index>(j)) = flatten_row_major(mats[j]);
  }
  const RVec sv = robust_svd(stacked).singular_values;
  const double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * std::max(smax, 1e-300)) ++rank;
  }
  return rank;
}

Mat random_unitary_2x2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(2, 2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat rdiag = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < 2; ++j) {
    const cplx r = rdiag(j, j);
    if (std::abs(r) > 0) q.col(j) *= r / std::abs(r);
  }
  return q;
}

InteractionSpec spec_from_toric(const ToricRegion& big) {
  InteractionSpec spec;
  for (Index j = 0; j < big.n_plus; ++j) {
    InteractionSpec::Site s;
    s.dim = 2;
    s.distance = big.site_distance[j];
    spec.sites.push_back(s);
  }
  spec.range = 1;
  spec.stabilizer = true;

  auto mask_sites = [](const PauliString& p) {
    std::vector<int> sites;
    for (int b = 0; b < 64; ++b) {
      if (((p.x | p.z) >> b) & 1u) sites.push_back(b);
    }
    return sites;
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const PauliString& p : big.plus_terms) {
    InteractionSpec::Term term;
    term.sites = mask_sites(p);
    const PauliString local = compress_pauli(p, term.sites);
    const int nt = static_cast<int>(term.sites.size());
    const Index dt = Index(1) << nt;
    term.op = 0.5 * (Mat::Identity(dt, dt) - pauli_dense(nt, local));
    spec.plus_terms.push_back(term);
    spec.plus_paulis.push_back(local);
  }
  for (const PauliString& p : big.cross_factors) {
    InteractionSpec::Term term;
    term.sites = mask_sites(p);
    const PauliString local = compress_pauli(p, term.sites);
    term.op = inv_sqrt2 * pauli_dense(static_cast<int>(term.sites.size()), local);
    spec.cross_terms.push_back(term);
    spec.cross_paulis.push_back(local);
  }
  validate_interaction_spec(spec);
  return spec;
}

}  // namespace

void validate_interaction_spec(const InteractionSpec& spec) {
  if (spec.sites.empty()) throw ParseError("interaction spec has no sites");
  const int n_sites = static_cast<int>(spec.sites.size());
  for (const auto& site : spec.sites) {
    if (site.dim < 1) throw DimensionMismatch("site dimension must be positive");
    if (site.twist.size() > 0) {
      if (site.twist.rows() != site.dim || site.twist.cols() != site.dim) {
        throw DimensionMismatch("twist size must match the site dimension");
      }
      if ((site.twist.adjoint() * site.twist - Mat::Identity(site.dim, site.dim))
              .norm() > 1e-10 * site.dim) {
        throw NotUnitary("site twist is not unitary");
      }
    }
  }
  auto check_terms = [&](const std::vector<InteractionSpec::Term>& terms,
                         const char* kind) {
    for (const auto& term : terms) {
      if (term.sites.empty() || !sorted_unique(term.sites) ||
          term.sites.front() < 0 || term.sites.back() >= n_sites) {
        throw ParseError(std::string(kind) + " term support must list sorted sites");
      }
      Index dim = 1;
      for (int s : term.sites) dim *= spec.sites[s].dim;
      if (term.op.rows() != dim || term.op.cols() != dim) {
        throw DimensionMismatch(std::string(kind) +
                                " term operator size clashes with its support");
      }
      require_finite(term.op, std::string(kind) + " interaction term");
      if ((term.op - term.op.adjoint()).norm() >
          1e-10 * std::max(1.0, term.op.norm())) {
        throw NotHermitian(std::string(kind) + " interaction term not Hermitian");
      }
    }
  };
  check_terms(spec.plus_terms, "one-sided");
  check_terms(spec.cross_terms, "crossing");

  if (spec.stabilizer) {
    if (spec.plus_paulis.size() != spec.plus_terms.size() ||
        spec.cross_paulis.size() != spec.cross_terms.size()) {
      throw ParseError("stabilizer data must align with the term lists");
    }
    for (const auto& site : spec.sites) {
      if (site.dim != 2 || site.twist.size() > 0) {
        throw ParseError("stabilizer fast path needs plain qubit sites");
      }
    }
    for (std::size_t j = 0; j < spec.plus_terms.size(); ++j) {
      const int nt = static_cast<int>(spec.plus_terms[j].sites.size());
      const Index dt = Index(1) << nt;
      const Mat expect =
          0.5 * (Mat::Identity(dt, dt) - pauli_dense(nt, spec.plus_paulis[j]));
      if ((spec.plus_terms[j].op - expect).norm() > 1e-12 * dt) {
        throw ParseError("one-sided term does not match its declared stabilizer");
      }
    }
    for (std::size_t j = 0; j < spec.cross_terms.size(); ++j) {
      const int nt = static_cast<int>(spec.cross_terms[j].sites.size());
      const Mat expect =
          (1.0 / std::sqrt(2.0)) * pauli_dense(nt, spec.cross_paulis[j]);
      if ((spec.cross_terms[j].op - expect).norm() > 1e-12 * (Index(1) << nt)) {
        throw ParseError("crossing term does not match its declared stabilizer");
      }
    }
  }
}

const Region& find_region(const RegionFamily& family, const std::string& name) {
  for (const Region& r : family.regions) {
    if (r.name == name) return r;
  }
  throw ParseError("unknown region: " + name);
}

bool region_subset(const Region& x, const Region& y) {
  return contains_all(y.sites, x.sites);
}

const RegionData& region_data(const RegionFamily& family,
                              const std::string& name) {
  auto it = family.cache.find(name);
  if (it != family.cache.end()) return it->second;
  const Region& r = find_region(family, name);
  if (!sorted_unique(r.sites)) {
    throw ParseError("region " + name + " must list sorted distinct sites");
  }
  const Index dp = shape_product(region_shape(family.spec, r));
  RegionData d = (family.spec.stabilizer && dp * dp > 256)
                     ? stabilizer_region_data(family.spec, r)
                     : dense_region_data(family.spec, r);
  return family.cache.emplace(name, std::move(d)).first->second;
}

Mat region_flow_unitary(const RegionData& d, double t) {
  const Mat rotation = psd_function(
      d.xi, [t](double lam) { return std::exp(cplx(0.0, 2.0 * t * std::log(lam))); });
  const Mat id = Mat::Identity(d.pi_hat.rows(), d.pi_hat.cols());
  return rotation + (id - d.pi_hat);
}

InclusionData inclusion(const RegionFamily& family, const std::string& x_name,
                        const std::string& y_name) {
  const Region& rx = find_region(family, x_name);
  const Region& ry = find_region(family, y_name);
  if (!region_subset(rx, ry)) {
    throw DimensionMismatch("inclusion needs nested regions: " + x_name +
                            " inside " + y_name);
  }
  const RegionData& dx = region_data(family, x_name);
  const RegionData& dy = region_data(family, y_name);
  const std::vector<int> pos = positions_in(rx.sites, ry.sites);

  InclusionData out;
  out.x_name = x_name;
  out.y_name = y_name;

  std::vector<Mat> lifted;
  for (const Mat& a : dx.alg.basis) {
    lifted.push_back(embed_operator(a, pos, dy.plus_shape));
    const Mat& l = lifted.back();
    out.commutation_residual =
        std::max(out.commutation_residual,
                 (l * dy.pi_hat - dy.pi_hat * l).norm() / std::max(1.0, l.norm()));
  }
  if (out.commutation_residual > 1e-9) {
    throw CommutationFailure("lifted boundary operators fail to commute with "
                             "the enclosing support projection (residual " +
                             std::to_string(out.commutation_residual) + ")");
  }
  for (const Mat& l : lifted) out.images.push_back(l * dy.pi_hat);

  // *-homomorphism checks: unit, adjoints, and products.
  const Mat unit_image =
      embed_operator(dx.alg.unit, pos, dy.plus_shape) * dy.pi_hat;
  out.hom_residual = floored_residual(unit_image, dy.pi_hat);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    out.hom_residual = std::max(
        out.hom_residual,
        floored_residual(Mat(out.images[i].adjoint()),
                     Mat(Mat(lifted[i].adjoint()) * dy.pi_hat)));
    for (std::size_t j = 0; j < lifted.size(); ++j) {
      const Mat prod_then_map =
          embed_operator(Mat(dx.alg.basis[i] * dx.alg.basis[j]), pos,
                         dy.plus_shape) *
          dy.pi_hat;
      out.hom_residual = std::max(
          out.hom_residual, floored_residual(Mat(out.images[i] * out.images[j]),
                                         prod_then_map));
    }
  }

  out.injective = stacked_rank(out.images, 1e-8) == dx.alg.dim();
  out.extendable = extendability_data(family, x_name, y_name).ok;
  return out;
}

ExtendabilityData extendability_data(const RegionFamily& family,
                                     const std::string& x_name,
                                     const std::string& y_name) {
  const Region& rx = find_region(family, x_name);
  const Region& ry = find_region(family, y_name);
  if (!region_subset(rx, ry)) {
    throw DimensionMismatch("extendability needs nested regions");
  }
  const RegionData& dx = region_data(family, x_name);
  const RegionData& dy = region_data(family, y_name);
  std::set<int> keep;
  for (int p : positions_in(rx.sites, ry.sites)) keep.insert(p);
  const Mat reduced = partial_trace(dy.pi_hat, dy.plus_shape, keep);
  const Mat support = range_projection(reduced);

  ExtendabilityData out;
  out.rank_expected = static_cast<Index>(std::llround(dx.pi_hat.real().trace()));
  out.rank_found = static_cast<Index>(std::llround(support.real().trace()));
  out.residual = (support - dx.pi_hat).norm() / std::max(1.0, dx.pi_hat.norm());
  out.ok = out.rank_expected == out.rank_found && out.residual < 1e-9;
  return out;
}

bool extendability_check(const RegionFamily& family, const std::string& x_name,
                         const std::string& y_name) {
  return extendability_data(family, x_name, y_name).ok;
}

NetAxiomsReport net_axioms_check(const RegionFamily& family) {
  NetAxiomsReport rep;
  const auto& regions = family.regions;

  for (const Region& x : regions) {
    for (const Region& y : regions) {
      if (&x == &y || !region_subset(x, y)) continue;
      for (const Region& z : regions) {
        if (&z == &x || &z == &y || !region_subset(y, z)) continue;
        ++rep.chains_checked;
        const RegionData& dx = region_data(family, x.name);
        const RegionData& dy = region_data(family, y.name);
        const RegionData& dz = region_data(family, z.name);
        const std::vector<int> pos_xy = positions_in(x.sites, y.sites);
        const std::vector<int> pos_yz = positions_in(y.sites, z.sites);
        const std::vector<int> pos_xz = positions_in(x.sites, z.sites);
        double worst = 0.0;
        for (const Mat& a : dx.alg.basis) {
          const Mat via_y = embed_operator(
              Mat(embed_operator(a, pos_xy, dy.plus_shape) * dy.pi_hat),
              pos_yz, dz.plus_shape) *
              dz.pi_hat;
          const Mat direct =
              embed_operator(a, pos_xz, dz.plus_shape) * dz.pi_hat;
          worst = std::max(worst, floored_residual(via_y, direct));
        }
        rep.max_composition_residual =
            std::max(rep.max_composition_residual, worst);
        if (worst > 1e-8) {
          std::ostringstream msg;
          msg << "composition " << x.name << " < " << y.name << " < " << z.name
              << " residual " << worst;
          rep.violations.push_back(msg.str());
        }
      }
    }
  }

  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      const Region& x = regions[i];
      const Region& y = regions[j];
      std::vector<int> overlap;
      std::set_intersection(x.sites.begin(), x.sites.end(), y.sites.begin(),
                            y.sites.end(), std::back_inserter(overlap));
      if (!overlap.empty()) continue;
      for (const Region& z : regions) {
        if (!region_subset(x, z) || !region_subset(y, z)) continue;
        ++rep.disjoint_pairs_checked;
        const RegionData& dx = region_data(family, x.name);
        const RegionData& dy = region_data(family, y.name);
        const RegionData& dz = region_data(family, z.name);
        const auto ix = inclusion_images(dx, dz, positions_in(x.sites, z.sites));
        const auto iy = inclusion_images(dy, dz, positions_in(y.sites, z.sites));
        double worst = 0.0;
        for (const Mat& a : ix) {
          for (const Mat& b : iy) {
            worst = std::max(worst, (a * b - b * a).norm() /
                                        std::max(1.0, a.norm() * b.norm()));
          }
        }
        rep.max_commutation_residual =
            std::max(rep.max_commutation_residual, worst);
        if (worst > 1e-8) {
          std::ostringstream msg;
          msg << "commutation " << x.name << " | " << y.name << " inside "
              << z.name << " residual " << worst;
          rep.violations.push_back(msg.str());
        }
      }
    }
  }

  rep.pass = rep.violations.empty();
  return rep;
}

ModularConsistencyReport modular_consistency_check(const RegionFamily& family) {
  ModularConsistencyReport rep;
  const double times[3] = {0.3, 1.0, 2.7};
  for (const Region& x : family.regions) {
    for (const Region& y : family.regions) {
      if (&x == &y || !region_subset(x, y)) continue;
      ++rep.pairs_checked;
      const RegionData& dx = region_data(family, x.name);
      const RegionData& dy = region_data(family, y.name);
      const std::vector<int> pos = positions_in(x.sites, y.sites);
      for (double t : times) {
        const Mat ux = region_flow_unitary(dx, t);
        const Mat uy = region_flow_unitary(dy, t);
        double worst = 0.0;
        for (const Mat& a : dx.alg.basis) {
          const Mat flowed_then_mapped =
              embed_operator(Mat(ux * a * ux.adjoint()), pos, dy.plus_shape) *
              dy.pi_hat;
          const Mat mapped = embed_operator(a, pos, dy.plus_shape) * dy.pi_hat;
          const Mat mapped_then_flowed = uy * mapped * uy.adjoint();
          worst = std::max(worst, floored_residual(mapped_then_flowed,
                                               flowed_then_mapped));
        }
        rep.max_residual = std::max(rep.max_residual, worst);
        if (worst > 1e-8) {
          std::ostringstream msg;
          msg << "modular flow " << x.name << " -> " << y.name << " at t=" << t
              << " residual " << worst;
          rep.violations.push_back(msg.str());
        }
      }
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

BoundaryReductionReport boundary_reduction_check(const RegionFamily& family,
                                                 int range) {
  BoundaryReductionReport rep;
  bool all_ok = true;
  for (const Region& x : family.regions) {
    for (const Region& y : family.regions) {
      if (&x == &y || !region_subset(x, y)) continue;
      BoundaryPairReport pair;
      pair.x_name = x.name;
      pair.y_name = y.name;
      pair.qualifying = true;
      for (int s : y.sites) {
        const bool added =
            !std::binary_search(x.sites.begin(), x.sites.end(), s);
        if (added && family.spec.sites[s].distance <= range) {
          pair.qualifying = false;
        }
      }
      const RegionData& dx = region_data(family, x.name);
      const RegionData& dy = region_data(family, y.name);
      pair.dim_x = dx.alg.dim();
      pair.dim_y = dy.alg.dim();
      pair.signatures_equal = dx.signature == dy.signature;
      const InclusionData inc = inclusion(family, x.name, y.name);
      pair.surjective = stacked_rank(inc.images, 1e-8) == dy.alg.dim();
      if (pair.qualifying && !(pair.signatures_equal && pair.surjective)) {
        all_ok = false;
      }
      rep.pairs.push_back(std::move(pair));
    }
  }
  rep.pass = all_ok;
  return rep;
}

RegionFamily toric_nested_family() {
  RegionFamily fam;
  fam.spec = spec_from_toric(toric_slab(4, 2));
  fam.regions.push_back({"inner", {1, 2}});
  fam.regions.push_back({"axis", {0, 1, 2, 3}});
  fam.regions.push_back({"deep", {0, 1, 2, 3, 4, 5}});
  return fam;
}

RegionFamily toric_axis_growth_family() {
  RegionFamily fam;
  fam.spec = spec_from_toric(toric_slab(5, 1));
  fam.regions.push_back({"short", {0, 1, 2}});
  fam.regions.push_back({"long", {0, 1, 2, 3, 4}});
  return fam;
}

RegionFamily twisted_pair_family(std::uint64_t seed) {
  RegionFamily fam;
  fam.spec = spec_from_toric(toric_slab(4, 1));
  std::mt19937_64 rng(seed);
  // Conjugate every term by a per-site unitary w while keeping the reflection
  // an involution: the induced on-site reflection twist is the symmetric
  // unitary w * w^T, and the mirrored copy of each crossing factor follows
  // automatically from the twisted reflection.
  std::vector<Mat> twists;
  for (auto& site : fam.spec.sites) {
    const Mat w = random_unitary_2x2(rng);
    site.twist = w * w.transpose();
    twists.push_back(w);
  }
  fam.spec.stabilizer = false;
  fam.spec.plus_paulis.clear();
  fam.spec.cross_paulis.clear();
  auto conjugate = [&](InteractionSpec::Term& term) {
    Mat w = Mat::Identity(1, 1);
    for (int s : term.sites) w = kron(w, twists[s]);
    term.op = w * term.op * w.adjoint();
  };
  for (auto& term : fam.spec.plus_terms) conjugate(term);
  for (auto& term : fam.spec.cross_terms) conjugate(term);
  validate_interaction_spec(fam.spec);
  fam.regions.push_back({"pair", {0, 1}});
  fam.regions.push_back({"full", {0, 1, 2, 3}});
  return fam;
}

InteractionSpec interaction_spec_from_json(const nlohmann::json& j) {
  InteractionSpec spec;
  try {
    for (const auto& sj : j.at("sites")) {
      InteractionSpec::Site site;
      site.dim = sj.at("dim").get<Index>();
      site.distance = sj.value("distance", 1);
      if (sj.contains("twist")) site.twist = matrix_from_json(sj.at("twist"));
      spec.sites.push_back(std::move(site));
    }
    auto read_terms = [&](const char* key,
                          std::vector<InteractionSpec::Term>& out) {
      if (!j.contains(key)) return;
      for (const auto& tj : j.at(key)) {
        InteractionSpec::Term term;
        term.sites = tj.at("sites").get<std::vector<int>>();
        term.op = matrix_from_json(tj.at("op"));
        out.push_back(std::move(term));
      }
    };
    read_terms("plus_terms", spec.plus_terms);
    read_terms("cross_terms", spec.cross_terms);
    spec.range = j.value("range", 1);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("interaction spec: ") + e.what());
  }
  validate_interaction_spec(spec);
  return spec;
}

std::vector<Region> regions_from_json(const nlohmann::json& j) {
  std::vector<Region> out;
  try {
    for (const auto& rj : j) {
      Region r;
      r.name = rj.at("name").get<std::string>();
      r.sites = rj.at("sites").get<std::vector<int>>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("region list: ") + e.what());
  }
  return out;
}

}  // namespace rpkit
