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

#include <cstdint>
#include <random>
#include <string_view>

namespace chaos {

/// 64-bit key for a substream: mixes the master seed, a stream label and an index.
/// Identical inputs always give the same key, independent of call order.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view label,
                                 std::uint64_t index) noexcept;

/// Per-realization random stream. Uniforms use the top 53 bits of a
/// std::mt19937_64 draw and normals use Box-Muller, so the sequence does not
/// depend on the standard library's distribution implementations.
class RngStream {
public:
    using engine_type = std::mt19937_64;

    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream substream(std::uint64_t master_seed, std::string_view label,
                               std::uint64_t index) {
        return RngStream(derive_stream_seed(master_seed, label, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform();

    /// Standard normal N(0, 1).
    double normal();

    engine_type& engine() noexcept { return engine_; }

private:
    engine_type engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace chaos
