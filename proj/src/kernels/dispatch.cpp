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

#include "chaos/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace chaos::kernels {

const KernelTable* avx2_table_if_compiled() noexcept;

namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* select_from_environment() noexcept {
    const char* env = std::getenv("CHAOS_SAMPLER_KERNELS");
    const std::string_view request = env ? env : "auto";
    if (request == "scalar") return &scalar_table();
    const KernelTable* simd = avx2_table();
    return simd ? simd : &scalar_table();
}

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{select_from_environment()};
    return slot;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
    static const KernelTable* table = cpu_has_avx2_fma() ? avx2_table_if_compiled() : nullptr;
    return table;
}

const KernelTable& active() noexcept {
    return *active_slot().load(std::memory_order_relaxed);
}

void set_active(const KernelTable& table) noexcept {
    active_slot().store(&table, std::memory_order_relaxed);
}

}  // namespace chaos::kernels
