// Copyright 2025-2026 The lgtc Authors.
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

#include "lgtc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lgtc::kern {

const Kernels* avx2_table_impl();  // defined in kernels_avx2.cpp

const Kernels* avx2_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return avx2_table_impl();
    }
#endif
    return nullptr;
}

namespace {

const Kernels& select() {
    const char* forced = std::getenv("LGTC_KERNEL");
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(forced, "avx2") == 0) {
            const Kernels* t = avx2_kernels();
            if (t != nullptr) return *t;
            // Fall through: forcing an unsupported ISA degrades to scalar.
            return scalar_kernels();
        }
    }
    const Kernels* t = avx2_kernels();
    return t != nullptr ? *t : scalar_kernels();
}

}  // namespace

const Kernels& active() {
    static const Kernels& chosen = select();
    return chosen;
}

}  // namespace lgtc::kern
