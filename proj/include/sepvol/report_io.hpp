// Copyright 2026 The sepvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sepvol/experiments.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace sepvol {

namespace detail {
inline nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}
}  // namespace detail

/// JSON object with keys inputs, estimates, bounds, checks, notes, pass, seed.
/// Wall time is only emitted on request so that reports stay comparable.
inline nlohmann::json to_json(const TheoremReport& r, bool with_timing = false) {
  nlohmann::json j;
  j["theorem"] = r.theorem;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  in["seed"] = r.seed;
  j["inputs"] = in;
  nlohmann::json est = nlohmann::json::object();
  for (const auto& e : r.estimates) {
    est[e.key] = {{"mean", detail::num(e.value)},
                  {"std_error", detail::num(e.std_error)},
                  {"samples", e.samples},
                  {"kind", e.kind}};
  }
  j["estimates"] = est;
  nlohmann::json b = nlohmann::json::object();
  for (const auto& [k, v] : r.bounds) b[k] = detail::num(v);
  j["bounds"] = b;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", detail::num(c.lhs)},
                      {"relation", c.relation},
                      {"rhs", detail::num(c.rhs)},
                      {"slack", detail::num(c.slack)},
                      {"pass", c.pass},
                      {"retried", c.retried}});
  }
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["pass"] = r.pass();
  j["seed"] = r.seed;
  if (with_timing) j["wall_time_s"] = r.wall_time_s;
  return j;
}

/// Flat table: section,key,value,std_error,extra.
inline std::string to_csv(const TheoremReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "section,key,value,std_error,extra\n";
  for (const auto& [k, v] : r.inputs) os << "input," << k << ',' << v << ",,\n";
  os << "input,seed," << r.seed << ",,\n";
  for (const auto& e : r.estimates)
    os << "estimate," << e.key << ',' << e.value << ',' << e.std_error << ',' << e.kind << '\n';
  for (const auto& [k, v] : r.bounds) os << "bound," << k << ',' << v << ",,\n";
  for (const auto& c : r.checks) {
    os << "check," << c.name << ',' << (c.pass ? 1 : 0) << ",,"
       << c.lhs << ' ' << c.relation << ' ' << c.rhs << (c.retried ? " retried" : "") << '\n';
  }
  os << "result,pass," << (r.pass() ? 1 : 0) << ",,\n";
  return os.str();
}

inline void write_csv(const TheoremReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << to_csv(r);
}

}  // namespace sepvol
