/*
 * Copyright 2026 The chaos-sampler Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Front end for `chaos_sampler run | sweep | validate`.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaos/oracles.hpp"
#include "chaos/report_io.hpp"

namespace chaos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidateFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

/// Sets a dot-path key from "a.b=value". The value is parsed as JSON when
/// possible and kept as a string otherwise. Throws InvalidConfig.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Config file (or defaults), then the CHAOS_SAMPLER_SEED value `env_seed`,
/// then each --set assignment in order.
RunConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides,
                      const char* env_seed);

/// Parses argv and dispatches. `hooks` replaces the evaluators checked by
/// `validate` (tests only).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             const oracles::Hooks* hooks = nullptr);

}  // namespace chaos::cli
