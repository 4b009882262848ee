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

// Independent reference computations used by `chaos_sampler validate` and the
// test suite. They share no code path with the production evaluators they
// check.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chaos/linalg.hpp"

namespace chaos::oracles {

/// exp(-i H t) by [6/6] Pade approximation with scaling and squaring.
ComplexMatrix expm_minus_iht(const RealMatrix& h, double t);

/// Sum over permutations enumerated with std::next_permutation.
Complex permanent_by_permutations(const ComplexMatrix& a);

struct OracleResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Replaceable evaluators, so a deliberately broken implementation can be fed
/// through the suite.
struct Hooks {
    std::function<Complex(const ComplexMatrix&)> permanent;
};

Hooks default_hooks();

/// permanent, expm, goe_moments, density_normalization, haar_entropy, kernels
std::vector<std::string> oracle_names();

/// Runs the named oracles (all when `only` is empty). Throws InvalidArgument
/// for an unknown name.
std::vector<OracleResult> run_oracles(std::span<const std::string> only, const Hooks& hooks);

}  // namespace chaos::oracles
