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

#ifndef RISFAS_CONFIG_JSON_HPP
#define RISFAS_CONFIG_JSON_HPP

#include <string>

#include <json.hpp>

#include "risfas/system_model.hpp"

namespace risfas {

// JSON schema: exactly the keys
//   N, M, m1, m2, omega1, omega2, L1, L2, K1, K2, d1, d2, wavelength,
//   gamma_bar_db, gamma_th_db, R_bits, B_hz, T_th_s
// M, m1, omega1, L1, L2 take a scalar or a length-N array. m2 and omega2 take
// a scalar, a length-N array (same for every port) or a K x N nested array
// indexed [k][n]. Errors are ConfigError with the key path.
SystemConfig parse_config(const nlohmann::json& doc);
SystemConfig load_config(const std::string& path);

nlohmann::json config_to_json(const SystemConfig& cfg);

}  // namespace risfas

#endif  // RISFAS_CONFIG_JSON_HPP
