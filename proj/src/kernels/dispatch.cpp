// Copyright 2026 The Cascade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "cascade/kernels/kernels.hpp"

namespace cascade::kernels {

#ifdef CASCADE_HAVE_AVX2
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#ifdef CASCADE_HAVE_AVX2
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* resolve(std::string_view variant) {
  if (variant == "scalar") return &scalar_table();
  if (variant == "avx2") return avx2_table();
  if (variant == "auto" || variant.empty()) {
    if (const auto* t = avx2_table()) return t;
    return &scalar_table();
  }
  return nullptr;
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{[] {
    const char* env = std::getenv("CASCADE_SIMD");
    const KernelTable* t = resolve(env ? std::string_view(env) : std::string_view("auto"));
    return t ? t : resolve("auto");
  }()};
  return table;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view variant) {
  const KernelTable* t = resolve(variant);
  if (!t) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

}  // namespace cascade::kernels
