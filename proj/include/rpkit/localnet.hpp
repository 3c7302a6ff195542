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

#ifndef RPKIT_LOCALNET_HPP_
#define RPKIT_LOCALNET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpkit/bipartition.hpp"
#include "rpkit/models.hpp"
#include "rpkit/pauli.hpp"
#include "rpkit/staralg.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

// Mirror-symmetric interaction over a fixed universe of plus-side sites.
// Every one-sided term is stored for the plus half and mirrored onto the
// minus half through Theta; crossing terms enter as -Theta(O) (x) O.  A
// region picks up exactly the terms whose support it contains, which keeps
// nested regions frustration-free relative to each other.
struct InteractionSpec {
  struct Site {
    Index dim = 2;
    int distance = 1;  // rows away from the reflection axis
    Mat twist;         // on-site unitary applied before conjugation; empty = none
  };
  struct Term {
    std::vector<int> sites;  // sorted global site indices
    Mat op;                  // dense operator on those sites, row-major order
  };

  std::vector<Site> sites;
  std::vector<Term> plus_terms;
  std::vector<Term> cross_terms;
  int range = 1;

  // Pauli fast path, set when every site is a qubit, all twists are trivial
  // and all terms are signed Pauli strings (bits = positions in Term::sites).
  bool stabilizer = false;
  std::vector<PauliString> plus_paulis;
  std::vector<PauliString> cross_paulis;
};

struct Region {
  std::string name;
  std::vector<int> sites;  // sorted global site indices
};

// Everything derived for one region; computed once and cached.
struct RegionData {
  Bipartition b;
  FactorShape plus_shape;
  Mat pi_hat;           // support projection of the reduced ground projection
  Mat reduced_pi;       // Tr over the minus half of the ground projection
  double trace_pi = 0;  // trace of the ambient ground projection
  Mat xi;               // positive ground-state matrix on the plus factor
  MatrixStarAlgebra alg;  // boundary field algebra, unit pi_hat
  std::vector<Index> signature;
};

struct RegionFamily {
  InteractionSpec spec;
  std::vector<Region> regions;
  mutable std::map<std::string, RegionData> cache;
};

// Hermiticity, support bounds and reflection pairing of all terms.
void validate_interaction_spec(const InteractionSpec& spec);

const Region& find_region(const RegionFamily& family, const std::string& name);
bool region_subset(const Region& x, const Region& y);

// Cached accessor; computes ground and boundary data on first use.  Dense
// ambient route for small regions, stabilizer enumeration for large ones.
const RegionData& region_data(const RegionFamily& family,
                              const std::string& name);

// Modular flow unitary exp(2 i t log xi) + (I - pi_hat) of one region.
Mat region_flow_unitary(const RegionData& d, double t);

struct InclusionData {
  std::string x_name, y_name;
  std::vector<Mat> images;  // basis images (a (x) I) pi_hat(Y)
  double commutation_residual = 0;
  double hom_residual = 0;  // star, unit and multiplicativity deviations
  bool injective = false;
  bool extendable = false;
};

InclusionData inclusion(const RegionFamily& family, const std::string& x_name,
                        const std::string& y_name);

struct ExtendabilityData {
  bool ok = false;
  Index rank_expected = 0;
  Index rank_found = 0;
  double residual = 0;
};

ExtendabilityData extendability_data(const RegionFamily& family,
                                     const std::string& x_name,
                                     const std::string& y_name);
bool extendability_check(const RegionFamily& family, const std::string& x_name,
                         const std::string& y_name);

struct NetAxiomsReport {
  double max_composition_residual = 0;
  double max_commutation_residual = 0;
  Index chains_checked = 0;
  Index disjoint_pairs_checked = 0;
  std::vector<std::string> violations;
  bool pass = false;
};

NetAxiomsReport net_axioms_check(const RegionFamily& family);

struct ModularConsistencyReport {
  double max_residual = 0;
  Index pairs_checked = 0;
  std::vector<std::string> violations;
  bool pass = false;
};

ModularConsistencyReport modular_consistency_check(const RegionFamily& family);

struct BoundaryPairReport {
  std::string x_name, y_name;
  bool qualifying = false;  // all added sites farther than `range` from the axis
  bool signatures_equal = false;
  bool surjective = false;
  Index dim_x = 0;
  Index dim_y = 0;
};

struct BoundaryReductionReport {
  std::vector<BoundaryPairReport> pairs;
  bool pass = false;  // every qualifying pair is a signature-preserving iso
};

BoundaryReductionReport boundary_reduction_check(const RegionFamily& family,
                                                 int range);

// Built-in families.
RegionFamily toric_nested_family();       // slab windows {e2,e3} in {e1..e4} in all
RegionFamily toric_axis_growth_family();  // axis windows of length 3 and 5
// Toric pair with random on-site unitary twists; stays extendable.
RegionFamily twisted_pair_family(std::uint64_t seed);

// File formats for the net tool; see README for the schema.
InteractionSpec interaction_spec_from_json(const nlohmann::json& j);
std::vector<Region> regions_from_json(const nlohmann::json& j);

}  // namespace rpkit

#endif  // RPKIT_LOCALNET_HPP_
