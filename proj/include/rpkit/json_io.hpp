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

// Shared file formats. Matrices: {"rows": n, "cols": m, "entries": [[re, im],
// ...]} row-major, full double round-trip. Bipartition descriptors: site list
// with per-site dimensions, mirror pairs, optional twist matrices.

#include <json.hpp>

#include "rpkit/bipartition.hpp"
#include "rpkit/types.hpp"

namespace rpkit {

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

void save_matrix(const Mat& m, const std::string& path);
Mat load_matrix(const std::string& path);

nlohmann::json bipartition_to_json(const Bipartition& b);
Bipartition bipartition_from_json(const nlohmann::json& j);
Bipartition load_bipartition(const std::string& path);
void save_bipartition(const Bipartition& b, const std::string& path);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace rpkit
