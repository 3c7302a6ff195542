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

// Structured check reports.  The report body (tool version, configuration
// echo, and per-check entries) is fully deterministic for a fixed seed; wall
// clock timings are attached next to the body so byte-level comparison of
// bodies stays meaningful.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rpkit/types.hpp"

namespace rpkit {

struct ReportEntry {
  std::string name;
  bool pass = false;
  nlohmann::json details;  // residuals, dimensions, signatures, ...
};

struct Report {
  std::string tool = "rpkit 0.1.0";
  nlohmann::json config;  // echo of the effective configuration
  std::vector<ReportEntry> entries;
  double elapsed_seconds = 0.0;

  void add(const std::string& name, bool pass,
           nlohmann::json details = nlohmann::json::object());
  bool all_pass() const;

  // Deterministic part of the report (no timings).
  nlohmann::json body() const;
  std::string body_string() const;

  // Body plus timing block, as written to disk.
  nlohmann::json full() const;
};

void write_report(const Report& report, const std::string& path);

}  // namespace rpkit
