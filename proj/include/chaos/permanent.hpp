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

#include "chaos/linalg.hpp"

namespace chaos {

/// Largest matrix order accepted by the permanent evaluators.
inline constexpr int kMaxPermanentOrder = 30;

/// Per(A) = sum over permutations s of prod_i A(i, s(i)). Uses the direct
/// expansion for n <= 5 and Gray-code Ryser above that.
/// Throws InvalidArgument for a non-square or empty matrix and
/// UnsupportedSize above kMaxPermanentOrder.
Complex permanent(const ComplexMatrix& a);

/// Ryser inclusion-exclusion over column subsets, visited in Gray-code order
/// so each step adds or removes a single column from the row sums.
Complex permanent_ryser(const ComplexMatrix& a);

/// Glynn's formula with the sign vector walked in Gray-code order.
Complex permanent_glynn(const ComplexMatrix& a);

/// Sum over all n! permutations. Capped at n = 10.
Complex permanent_brute_force(const ComplexMatrix& a);

}  // namespace chaos
