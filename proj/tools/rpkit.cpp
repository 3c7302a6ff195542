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

// Command-line frontend.  Every subcommand assembles a Report whose body is
// deterministic for a fixed seed; the process exits 0 exactly when all
// verdicts pass.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "rpkit/fusion.hpp"
#include "rpkit/groundstate.hpp"
#include "rpkit/json_io.hpp"
#include "rpkit/localnet.hpp"
#include "rpkit/models.hpp"
#include "rpkit/osrecon.hpp"
#include "rpkit/pfengine.hpp"
#include "rpkit/report.hpp"
#include "rpkit/rpcore.hpp"
#include "rpkit/tensorlab.hpp"

namespace {

using rpkit::Index;
using rpkit::Mat;

struct GlobalOpts {
  double tol = 1e-9;
  double rank_tol = 1e-10;
  std::uint64_t seed = 20260823;
  std::string out;
  bool json_stdout = false;
  int threads = 1;
};

void add_global_flags(CLI::App* sub, GlobalOpts& g) {
  sub->add_option("--tol", g.tol, "residual tolerance")->capture_default_str();
  sub->add_option("--rank-tol", g.rank_tol, "rank cutoff relative to the top singular value")
      ->capture_default_str();
  sub->add_option("--seed", g.seed, "seed for all randomized internals")
      ->capture_default_str();
  sub->add_option("--out", g.out, "path of the JSON report to write");
  sub->add_flag("--json", g.json_stdout, "print the report body to stdout");
}

std::string side_file(const GlobalOpts& g, const std::string& name) {
  if (g.out.empty()) return name;
  const std::filesystem::path dir = std::filesystem::path(g.out).parent_path();
  return dir.empty() ? name : (dir / name).string();
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  for (const std::string& tok : split_list(csv)) out.push_back(std::stod(tok));
  return out;
}

nlohmann::json signature_json(const std::vector<Index>& sig) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index s : sig) arr.push_back(s);
  return arr;
}

int finalize(rpkit::Report& report, const GlobalOpts& g,
             const std::string& subcommand,
             std::chrono::steady_clock::time_point started) {
  report.config["subcommand"] = subcommand;
  report.config["tol"] = g.tol;
  report.config["rank_tol"] = g.rank_tol;
  report.config["seed"] = g.seed;
  report.config["threads"] = g.threads;
  report.config["region_windows"] = "rectangular";
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  if (!g.out.empty()) rpkit::write_report(report, g.out);
  if (g.json_stdout) {
    std::cout << report.body_string() << "\n";
  } else {
    for (const auto& e : report.entries) {
      std::cout << (e.pass ? "[PASS] " : "[FAIL] ") << e.name << "\n";
    }
  }
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_rp_check(const GlobalOpts& g, const std::string& h_file,
                 const std::string& b_file, const std::string& tau_csv,
                 std::chrono::steady_clock::time_point started) {
  const Mat h = rpkit::load_matrix(h_file);
  const rpkit::Bipartition b = rpkit::load_bipartition(b_file);
  const std::vector<double> taus = parse_doubles(tau_csv);

  bool all_rp = true;
  nlohmann::json mins = nlohmann::json::array();
  for (double tau : taus) {
    const rpkit::Verdict v =
        rpkit::is_rp_operator(rpkit::hermitian_exp(h, -tau), b, g.tol);
    all_rp = all_rp && v.yes;
    mins.push_back(v.min_eigenvalue);
  }

  rpkit::Report report;
  nlohmann::json details;
  details["rp"] = all_rp;
  details["taus"] = taus;
  details["min_choi_eigenvalue_per_tau"] = mins;
  report.add("rp-check", all_rp, details);
  return finalize(report, g, "rp-check", started);
}

int run_pf(const GlobalOpts& g, const std::string& kraus_csv,
           const std::string& truncate_file,
           std::chrono::steady_clock::time_point started) {
  std::vector<Mat> kraus;
  for (const std::string& f : split_list(kraus_csv)) {
    kraus.push_back(rpkit::load_matrix(f));
  }
  rpkit::SymmetricCPMap psi = rpkit::make_symmetric_cp_map(kraus, g.tol);
  if (!truncate_file.empty()) {
    psi = rpkit::truncate(psi, rpkit::load_matrix(truncate_file));
  }
  const rpkit::PFResult pf = rpkit::canonical_pf(psi);
  const rpkit::MatrixStarAlgebra bim_alg = rpkit::bim(psi);
  const auto eigenspace = rpkit::pf_eigenspace(psi);
  const rpkit::EigenspaceStructure structure =
      rpkit::verify_eigenspace_structure(psi);

  const std::string xi_path = side_file(g, "pf_xi.json");
  rpkit::save_matrix(pf.xi, xi_path);

  rpkit::Report report;
  nlohmann::json details;
  details["rho"] = pf.rho;
  details["xi_file"] = xi_path;
  details["p_max_rank"] =
      static_cast<Index>(std::llround(pf.p_max.real().trace()));
  details["bim_dimension"] = bim_alg.dim();
  details["eigenspace_dimension"] = static_cast<Index>(eigenspace.size());
  details["structure_residual"] = structure.max_residual;
  report.add("pf", structure.yes && structure.dims_match, details);
  return finalize(report, g, "pf", started);
}

int run_ground(const GlobalOpts& g, const std::string& model, Index lx,
               Index ly, std::chrono::steady_clock::time_point started) {
  if (model != "toric") throw rpkit::ParseError("unknown model: " + model);
  const rpkit::ToricRegion region = rpkit::toric_slab(lx, ly);
  const Mat h = rpkit::toric_full_hamiltonian(region);
  rpkit::GroundData ground = rpkit::ground_projection(h);
  ground = rpkit::canonical_pf_ground_state(std::move(ground),
                                            region.bipartition, true, g.tol);

  rpkit::Report report;
  nlohmann::json details;
  details["model"] = model;
  details["lx"] = lx;
  details["ly"] = ly;
  details["ambient_dim"] = region.bipartition.ambient_dim();
  details["energy"] = ground.energy_e0;
  details["degeneracy"] = ground.degeneracy;
  details["gap"] = ground.gap;
  details["support_rank"] =
      static_cast<Index>(std::llround(ground.pi_hat.real().trace()));
  report.add("ground", true, details);
  return finalize(report, g, "ground", started);
}

int run_ltqo(const GlobalOpts& g, const std::string& hplus_file,
             const std::string& hminus_file, const std::string& cross_csv,
             const std::string& b_file,
             std::chrono::steady_clock::time_point started) {
  const rpkit::Bipartition b = rpkit::load_bipartition(b_file);
  const Mat h_plus = rpkit::load_matrix(hplus_file);
  const Mat h_minus = hminus_file.empty() ? rpkit::Theta(h_plus, b)
                                          : rpkit::load_matrix(hminus_file);
  std::vector<Mat> cross;
  for (const std::string& f : split_list(cross_csv)) {
    cross.push_back(rpkit::load_matrix(f));
  }
  const rpkit::LtqoReport rep =
      rpkit::ltqo_check(h_minus, h_plus, cross, b, g.tol);

  rpkit::Report report;
  nlohmann::json details;
  details["nondegenerate"] = rep.nondegenerate;
  details["ltqo"] = rep.ltqo;
  details["agree"] = rep.agree;
  details["degeneracy"] = rep.degeneracy;
  details["cross_degeneracy"] = rep.cross_degeneracy;
  details["max_offdiag"] = rep.max_offdiag;
  details["max_diag_spread"] = rep.max_diag_spread;
  report.add("ltqo", rep.agree, details);
  return finalize(report, g, "ltqo", started);
}

int run_osr(const GlobalOpts& g, const std::string& pi_file,
            const std::string& b_file,
            std::chrono::steady_clock::time_point started) {
  const Mat pi = rpkit::load_matrix(pi_file);
  const rpkit::Bipartition b = rpkit::load_bipartition(b_file);
  const rpkit::OSRResult osr =
      rpkit::field_algebra(pi, b, true, g.tol * 10.0, g.rank_tol);
  const auto blocks = rpkit::center_and_blocks(osr.field_algebra, g.seed);

  const std::string xi_path = side_file(g, "osr_xi.json");
  const std::string f_path = side_file(g, "osr_f.json");
  rpkit::save_matrix(osr.xi, xi_path);
  rpkit::save_matrix(osr.f_central, f_path);

  rpkit::Report report;
  nlohmann::json details;
  details["phys_dim"] = osr.phys_dim();
  details["block_signature"] = signature_json(blocks.block_signature);
  details["xi_file"] = xi_path;
  details["f_file"] = f_path;
  details["modular_trivial"] = rpkit::modular_trivial(osr);
  details["verification_residual"] = osr.verification_residual;
  report.add("osr", osr.verification_residual < g.tol * 10.0, details);
  return finalize(report, g, "osr", started);
}

int run_net(const GlobalOpts& g, const std::string& builtin,
            const std::string& interaction_file, const std::string& regions_file,
            const std::string& checks_csv, int range,
            std::chrono::steady_clock::time_point started) {
  rpkit::RegionFamily family;
  if (!builtin.empty()) {
    if (builtin == "nested") {
      family = rpkit::toric_nested_family();
    } else if (builtin == "growth") {
      family = rpkit::toric_axis_growth_family();
    } else if (builtin == "twisted") {
      family = rpkit::twisted_pair_family(g.seed);
    } else {
      throw rpkit::ParseError("unknown builtin family: " + builtin);
    }
  } else {
    if (interaction_file.empty() || regions_file.empty()) {
      throw rpkit::ParseError(
          "net needs --interaction and --regions, or --builtin");
    }
    family.spec =
        rpkit::interaction_spec_from_json(rpkit::load_json_file(interaction_file));
    family.regions = rpkit::regions_from_json(rpkit::load_json_file(regions_file));
  }

  rpkit::Report report;
  for (const std::string& check : split_list(checks_csv)) {
    if (check == "axioms") {
      const rpkit::NetAxiomsReport rep = rpkit::net_axioms_check(family);
      nlohmann::json details;
      details["max_composition_residual"] = rep.max_composition_residual;
      details["max_commutation_residual"] = rep.max_commutation_residual;
      details["chains_checked"] = rep.chains_checked;
      details["disjoint_pairs_checked"] = rep.disjoint_pairs_checked;
      details["violations"] = rep.violations;
      report.add("axioms", rep.pass, details);
    } else if (check == "modular") {
      const rpkit::ModularConsistencyReport rep =
          rpkit::modular_consistency_check(family);
      nlohmann::json details;
      details["max_residual"] = rep.max_residual;
      details["pairs_checked"] = rep.pairs_checked;
      details["violations"] = rep.violations;
      report.add("modular", rep.pass, details);
    } else if (check == "boundary") {
      const rpkit::BoundaryReductionReport rep =
          rpkit::boundary_reduction_check(family, range);
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& p : rep.pairs) {
        nlohmann::json pj;
        pj["x"] = p.x_name;
        pj["y"] = p.y_name;
        pj["qualifying"] = p.qualifying;
        pj["signatures_equal"] = p.signatures_equal;
        pj["surjective"] = p.surjective;
        pj["dim_x"] = p.dim_x;
        pj["dim_y"] = p.dim_y;
        pairs.push_back(std::move(pj));
      }
      nlohmann::json details;
      details["pairs"] = std::move(pairs);
      report.add("boundary", rep.pass, details);
    } else {
      throw rpkit::ParseError("unknown net check: " + check);
    }
  }
  return finalize(report, g, "net", started);
}

int run_toric(const GlobalOpts& g, Index l, Index depth, bool full_pipeline,
              std::chrono::steady_clock::time_point started) {
  rpkit::Report report;

  const rpkit::PauliSpanInfo info = rpkit::toric_boundary_algebra(l);
  {
    nlohmann::json details;
    details["L"] = l;
    details["dim"] = Index(1) << info.rank_k;
    details["signature"] = signature_json(info.block_signature);
    details["center_dim"] = Index(1) << static_cast<Index>(info.center_basis.size());
    bool pass = (Index(1) << info.rank_k) == (Index(1) << (l - 1));
    if (l <= 6) {
      const rpkit::MatrixStarAlgebra dense = rpkit::toric_boundary_algebra_dense(l);
      const auto dense_sig =
          rpkit::center_and_blocks(dense, g.seed).block_signature;
      details["dense_dim"] = dense.dim();
      details["dense_signature"] = signature_json(dense_sig);
      pass = pass && dense.dim() == (Index(1) << (l - 1)) &&
             dense_sig == info.block_signature;
    }
    report.add("boundary_algebra", pass, details);
  }

  {
    const rpkit::JonesReport jones = rpkit::toric_jones_tower_check(l);
    nlohmann::json details;
    details["dim_previous"] = jones.dim_lm1;
    details["dim_current"] = jones.dim_l;
    details["dim_next"] = jones.dim_lp1;
    details["tower_relation"] = jones.tower_relation;
    details["dim_growth"] = jones.dim_growth;
    details["dense_checked"] = jones.dense_checked;
    details["seed_residual"] = jones.seed_residual;
    details["witness_residual"] = jones.witness_residual;
    const bool pass = jones.tower_relation && jones.dim_growth &&
                      jones.seed_residual < 1e-12 &&
                      jones.witness_residual < 1e-12;
    report.add("jones_tower", pass, details);
  }

  if (full_pipeline) {
    const rpkit::ToricRegion region = rpkit::toric_slab(l, depth);
    const Mat h = rpkit::toric_full_hamiltonian(region);
    const rpkit::GroundData ground = rpkit::ground_projection(h);
    const rpkit::OSRResult osr = rpkit::field_algebra(
        ground.projection_pi, region.bipartition, true, g.tol * 10.0, g.rank_tol);
    const auto blocks = rpkit::center_and_blocks(osr.field_algebra, g.seed);
    const Index dp = region.bipartition.dim_plus;
    nlohmann::json details;
    details["signature"] = signature_json(blocks.block_signature);
    details["modular_trivial"] = rpkit::modular_trivial(osr);
    details["xi_identity_residual"] =
        (osr.xi - Mat::Identity(dp, dp)).norm() / std::sqrt(double(dp));
    details["support_identity_residual"] =
        (osr.pi_hat - Mat::Identity(dp, dp)).norm() / std::sqrt(double(dp));
    details["phys_dim"] = osr.phys_dim();
    details["verification_residual"] = osr.verification_residual;
    report.add("full_pipeline", osr.verification_residual < g.tol * 10.0,
               details);
  }
  return finalize(report, g, "toric", started);
}

int run_fusion(const GlobalOpts& g, const std::string& category,
               const std::vector<Index>& hom, Index charges,
               const std::string& spectrum_file,
               std::chrono::steady_clock::time_point started) {
  const rpkit::FusionData data = rpkit::builtin_fusion(category);
  rpkit::Report report;

  if (!hom.empty()) {
    const Index m = hom[0];
    const Index n = hom.size() > 1 ? hom[1] : hom[0];
    nlohmann::json details;
    details["category"] = category;
    details["m"] = m;
    details["n"] = n;
    details["hom_dim"] = rpkit::fusion_hom_dims(data, m, n);
    details["signature_m"] =
        signature_json(rpkit::fusion_block_signature(data, m));
    report.add("hom", true, details);
  }
  if (charges > 0) {
    nlohmann::json details;
    details["category"] = category;
    details["m"] = charges;
    details["multiplicities"] = rpkit::fusion_charge_multiplicities(data, charges);
    report.add("charges", true, details);
  }
  if (!spectrum_file.empty()) {
    const nlohmann::json j = rpkit::load_json_file(spectrum_file);
    rpkit::TubeLabels labels;
    try {
      for (const auto& e : j.at("edges")) {
        labels.edges.push_back({e.at(0).get<Index>(), e.at(1).get<Index>(),
                                e.at(2).get<Index>(), e.at(3).get<Index>()});
      }
    } catch (const nlohmann::json::exception& ex) {
      throw rpkit::ParseError(std::string("tube label file: ") + ex.what());
    }
    nlohmann::json details;
    details["category"] = category;
    details["exponent"] = rpkit::stringnet_modular_spectrum(data, labels);
    report.add("modular_spectrum", true, details);
  }
  return finalize(report, g, "fusion", started);
}

}  // namespace

int main(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();
  GlobalOpts g;
  if (const char* env = std::getenv("RPKIT_THREADS")) {
    g.threads = std::max(1, std::atoi(env));
  }
  Eigen::setNbThreads(g.threads);

  CLI::App app{"reflection-positivity toolkit"};
  app.require_subcommand(1);

  // rp-check
  std::string h_file, b_file, tau_csv = "0.1,0.5,1,2";
  CLI::App* rp = app.add_subcommand("rp-check",
                                    "reflection positivity of e^{-tau H}");
  rp->add_option("--hamiltonian", h_file, "ambient Hamiltonian matrix file")
      ->required();
  rp->add_option("--bipartition", b_file, "bipartition descriptor file")
      ->required();
  rp->add_option("--tau", tau_csv, "comma-separated tau grid")
      ->capture_default_str();
  add_global_flags(rp, g);

  // pf
  std::string kraus_csv, truncate_file;
  CLI::App* pf = app.add_subcommand("pf",
                                    "canonical Perron-Frobenius data of a "
                                    "symmetric CP map");
  pf->add_option("--kraus", kraus_csv, "comma-separated Kraus matrix files")
      ->required();
  pf->add_option("--truncate", truncate_file, "projection file for truncation");
  add_global_flags(pf, g);

  // ground
  std::string model = "toric";
  Index lx = 2, ly = 1;
  CLI::App* ground = app.add_subcommand("ground", "ground-space data of a model");
  ground->add_option("--model", model, "model name")->capture_default_str();
  ground->add_option("--lx", lx, "sites along the reflection axis")->required();
  ground->add_option("--ly", ly, "rows away from the axis")->capture_default_str();
  ground->add_option("--report", g.out, "path of the JSON report to write");
  add_global_flags(ground, g);

  // ltqo
  std::string hplus_file, hminus_file, cross_csv, ltqo_b_file;
  CLI::App* ltqo = app.add_subcommand("ltqo",
                                      "uniqueness vs local indistinguishability");
  ltqo->add_option("--hplus", hplus_file, "upper one-sided term file")->required();
  ltqo->add_option("--hminus", hminus_file,
                   "lower one-sided term file (default: reflection of --hplus)");
  ltqo->add_option("--cross", cross_csv, "comma-separated crossing factor files");
  ltqo->add_option("--bipartition", ltqo_b_file, "bipartition descriptor file")
      ->required();
  add_global_flags(ltqo, g);

  // osr
  std::string pi_file, osr_b_file;
  CLI::App* osr = app.add_subcommand("osr",
                                     "physical space reconstruction from a "
                                     "ground projection");
  osr->add_option("--pi", pi_file, "ground projection matrix file")->required();
  osr->add_option("--bipartition", osr_b_file, "bipartition descriptor file")
      ->required();
  add_global_flags(osr, g);

  // net
  std::string builtin, interaction_file, regions_file;
  std::string checks_csv = "axioms,modular,boundary";
  int range = 1;
  CLI::App* net = app.add_subcommand("net", "region-family consistency checks");
  net->add_option("--interaction", interaction_file, "interaction spec file");
  net->add_option("--regions", regions_file, "region list file");
  net->add_option("--builtin", builtin,
                  "builtin family: nested, growth, or twisted");
  net->add_option("--checks", checks_csv, "comma-separated checks to run")
      ->capture_default_str();
  net->add_option("--range", range, "interaction range for boundary reduction")
      ->capture_default_str();
  add_global_flags(net, g);

  // toric
  Index toric_l = 4, toric_depth = 1;
  bool full_pipeline = false;
  CLI::App* toric = app.add_subcommand("toric", "toric-code slab checks");
  toric->add_option("--L", toric_l, "sites along the reflection axis")
      ->capture_default_str();
  toric->add_option("--depth", toric_depth, "rows away from the axis")
      ->capture_default_str();
  toric->add_flag("--full-pipeline", full_pipeline,
                  "run the dense reconstruction on the slab");
  add_global_flags(toric, g);

  // fusion
  std::string category;
  std::vector<Index> hom;
  Index charges = 0;
  std::string spectrum_file;
  CLI::App* fusion = app.add_subcommand("fusion", "fusion-category computations");
  fusion->add_option("--category", category, "builtin category name")->required();
  fusion->add_option("--hom", hom, "path lengths m n")->expected(1, 2);
  fusion->add_option("--charges", charges, "path length for charge multiplicities");
  fusion->add_option("--modular-spectrum", spectrum_file,
                     "tube label file for the modular exponent");
  add_global_flags(fusion, g);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rp->parsed()) return run_rp_check(g, h_file, b_file, tau_csv, started);
    if (pf->parsed()) return run_pf(g, kraus_csv, truncate_file, started);
    if (ground->parsed()) return run_ground(g, model, lx, ly, started);
    if (ltqo->parsed()) {
      return run_ltqo(g, hplus_file, hminus_file, cross_csv, ltqo_b_file, started);
    }
    if (osr->parsed()) return run_osr(g, pi_file, osr_b_file, started);
    if (net->parsed()) {
      return run_net(g, builtin, interaction_file, regions_file, checks_csv,
                     range, started);
    }
    if (toric->parsed()) {
      return run_toric(g, toric_l, toric_depth, full_pipeline, started);
    }
    if (fusion->parsed()) {
      return run_fusion(g, category, hom, charges, spectrum_file, started);
    }
  } catch (const rpkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
