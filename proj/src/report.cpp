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

#include "rpkit/report.hpp"

#include <algorithm>
#include <fstream>

namespace rpkit {

void Report::add(const std::string& name, bool pass, nlohmann::json details) {
  entries.push_back({name, pass, std::move(details)});
}

bool Report::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

nlohmann::json Report::body() const {
  std::vector<const ReportEntry*> ordered;
  for (const auto& e : entries) ordered.push_back(&e);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ReportEntry* a, const ReportEntry* b) {
                     return a->name < b->name;
                   });
  nlohmann::json checks = nlohmann::json::array();
  for (const ReportEntry* ep : ordered) {
    const auto& e = *ep;
    nlohmann::json entry;
    entry["name"] = e.name;
    entry["verdict"] = e.pass ? "pass" : "fail";
    entry["details"] = e.details.is_null() ? nlohmann::json::object() : e.details;
    checks.push_back(std::move(entry));
  }
  nlohmann::json b;
  b["tool"] = tool;
  b["config"] = config.is_null() ? nlohmann::json::object() : config;
  b["checks"] = std::move(checks);
  b["all_pass"] = all_pass();
  return b;
}

std::string Report::body_string() const { return body().dump(2); }

nlohmann::json Report::full() const {
  nlohmann::json out;
  out["body"] = body();
  out["timings"]["elapsed_seconds"] = elapsed_seconds;
  return out;
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open report file for writing: " + path);
  out << report.full().dump(2) << "\n";
}

}  // namespace rpkit
