// Copyright 2026 The risfas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risfas/config_json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <string_view>

#include "risfas/errors.hpp"

namespace risfas {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 18> kKeys = {
    "N",  "M",  "m1", "m2", "omega1",     "omega2",       "L1",          "L2",     "K1",
    "K2", "d1", "d2", "wavelength", "gamma_bar_db", "gamma_th_db", "R_bits", "B_hz", "T_th_s"};

const json& require(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(key, "missing required key");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !(v.is_number() && v.get<double>() == std::floor(v.get<double>()))) {
    throw ConfigError(path, "expected an integer");
  }
  const double d = v.get<double>();
  if (d < 1.0) throw ConfigError(path, "must be >= 1");
  return static_cast<std::size_t>(d);
}

std::vector<double> per_ris(const json& doc, const char* key, std::size_t n) {
  const json& v = require(doc, key);
  if (v.is_array()) {
    if (v.size() != n) {
      throw ConfigError(key, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(as_number(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
    return out;
  }
  return std::vector<double>(n, as_number(v, key));
}

// Returns values at index k * n + j.
std::vector<double> per_port_ris(const json& doc, const char* key, std::size_t ports, std::size_t n) {
  const json& v = require(doc, key);
  std::vector<double> out(ports * n);
  if (!v.is_array()) {
    std::fill(out.begin(), out.end(), as_number(v, key));
    return out;
  }
  if (!v.empty() && v[0].is_array()) {
    if (v.size() != ports) {
      throw ConfigError(key, "expected " + std::to_string(ports) + " rows (one per port), got " +
                                 std::to_string(v.size()));
    }
    for (std::size_t k = 0; k < ports; ++k) {
      const std::string row = std::string(key) + "[" + std::to_string(k) + "]";
      if (!v[k].is_array() || v[k].size() != n) {
        throw ConfigError(row, "expected " + std::to_string(n) + " entries (one per RIS)");
      }
      for (std::size_t j = 0; j < n; ++j) {
        out[k * n + j] = as_number(v[k][j], row + "[" + std::to_string(j) + "]");
      }
    }
    return out;
  }
  const std::vector<double> row = per_ris(doc, key, n);
  for (std::size_t k = 0; k < ports; ++k) std::copy(row.begin(), row.end(), out.begin() + k * n);
  return out;
}

}  // namespace

SystemConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  for (const auto& [k, _] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) throw ConfigError(k, "unknown key");
  }
  SystemConfig cfg;
  cfg.N = as_count(require(doc, "N"), "N");
  cfg.grid.K1 = as_count(require(doc, "K1"), "K1");
  cfg.grid.K2 = as_count(require(doc, "K2"), "K2");
  cfg.grid.d1 = as_number(require(doc, "d1"), "d1");
  cfg.grid.d2 = as_number(require(doc, "d2"), "d2");
  cfg.grid.wavelength = as_number(require(doc, "wavelength"), "wavelength");

  const json& m = require(doc, "M");
  if (m.is_array()) {
    if (m.size() != cfg.N) throw ConfigError("M", "expected " + std::to_string(cfg.N) + " entries");
    for (std::size_t i = 0; i < cfg.N; ++i) cfg.M.push_back(as_count(m[i], "M[" + std::to_string(i) + "]"));
  } else {
    cfg.M.assign(cfg.N, as_count(m, "M"));
  }
  cfg.m1 = per_ris(doc, "m1", cfg.N);
  cfg.omega1 = per_ris(doc, "omega1", cfg.N);
  cfg.L1 = per_ris(doc, "L1", cfg.N);
  cfg.L2 = per_ris(doc, "L2", cfg.N);
  cfg.m2 = per_port_ris(doc, "m2", cfg.K(), cfg.N);
  cfg.omega2 = per_port_ris(doc, "omega2", cfg.K(), cfg.N);
  cfg.gamma_bar_db = as_number(require(doc, "gamma_bar_db"), "gamma_bar_db");
  cfg.gamma_th_db = as_number(require(doc, "gamma_th_db"), "gamma_th_db");
  cfg.R_bits = as_number(require(doc, "R_bits"), "R_bits");
  cfg.B_hz = as_number(require(doc, "B_hz"), "B_hz");
  cfg.T_th_s = as_number(require(doc, "T_th_s"), "T_th_s");
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const SystemConfig& cfg) {
  json out;
  out["N"] = cfg.N;
  out["M"] = cfg.M;
  out["m1"] = cfg.m1;
  out["omega1"] = cfg.omega1;
  out["L1"] = cfg.L1;
  out["L2"] = cfg.L2;
  json m2 = json::array();
  json omega2 = json::array();
  for (std::size_t k = 0; k < cfg.K(); ++k) {
    m2.push_back(std::vector<double>(cfg.m2.begin() + k * cfg.N, cfg.m2.begin() + (k + 1) * cfg.N));
    omega2.push_back(
        std::vector<double>(cfg.omega2.begin() + k * cfg.N, cfg.omega2.begin() + (k + 1) * cfg.N));
  }
  out["m2"] = m2;
  out["omega2"] = omega2;
  out["K1"] = cfg.grid.K1;
  out["K2"] = cfg.grid.K2;
  out["d1"] = cfg.grid.d1;
  out["d2"] = cfg.grid.d2;
  out["wavelength"] = cfg.grid.wavelength;
  out["gamma_bar_db"] = cfg.gamma_bar_db;
  out["gamma_th_db"] = cfg.gamma_th_db;
  out["R_bits"] = cfg.R_bits;
  out["B_hz"] = cfg.B_hz;
  out["T_th_s"] = cfg.T_th_s;
  return out;
}

}  // namespace risfas
