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

#include "rpkit/json_io.hpp"

#include <fstream>

namespace rpkit {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  require_finite(m, "matrix_to_json");
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Mat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw ParseError("matrix: expected {rows, cols, entries}");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  if (rows <= 0 || cols <= 0) throw ParseError("matrix: dimensions must be positive");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols)
    throw ParseError("matrix: entries length must equal rows*cols");
  Mat m(rows, cols);
  Index k = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("matrix: each entry must be [re, im]");
    m(k / cols, k % cols) = cplx(e[0].get<double>(), e[1].get<double>());
    ++k;
  }
  require_finite(m, "matrix_from_json");
  return m;
}

void save_matrix(const Mat& m, const std::string& path) {
  save_json_file(matrix_to_json(m), path);
}

Mat load_matrix(const std::string& path) {
  return matrix_from_json(load_json_file(path));
}

json bipartition_to_json(const Bipartition& b) {
  json sites = json::array();
  for (size_t k = 0; k < b.plus_shape.size(); ++k)
    sites.push_back({{"dim", b.plus_shape[k]}, {"mirror_of", b.site_map[k]}});
  return json{{"plus_sites", sites}, {"theta_unitary", matrix_to_json(b.theta_unitary)}};
}

Bipartition bipartition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("plus_sites"))
    throw ParseError("bipartition: expected {plus_sites, ...}");
  FactorShape shape;
  std::vector<int> site_map;
  std::vector<Mat> twists;
  bool any_twist = false;
  for (const auto& s : j.at("plus_sites")) {
    shape.push_back(s.at("dim").get<Index>());
    site_map.push_back(s.value("mirror_of", static_cast<int>(site_map.size())));
    if (s.contains("twist")) {
      twists.push_back(matrix_from_json(s.at("twist")));
      any_twist = true;
    } else {
      const Index d = shape.back();
      twists.push_back(Mat::Identity(d, d));
    }
  }
  if (j.contains("theta_unitary")) {
    // An explicit unitary wins over site data when both are present.
    Bipartition b = make_bipartition(shape, matrix_from_json(j.at("theta_unitary")));
    b.site_map = site_map;
    return b;
  }
  return make_bipartition_from_sites(shape, site_map, any_twist ? twists
                                                                : std::vector<Mat>{});
}

Bipartition load_bipartition(const std::string& path) {
  return bipartition_from_json(load_json_file(path));
}

void save_bipartition(const Bipartition& b, const std::string& path) {
  save_json_file(bipartition_to_json(b), path);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void save_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace rpkit
