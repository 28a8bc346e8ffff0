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

#ifndef RISFAS_KERNELS_IMPL_HPP
#define RISFAS_KERNELS_IMPL_HPP

#include "risfas/kernels.hpp"

namespace risfas::kernels {

namespace scalar {
extern const Table kTable;
}

namespace avx2 {
// Null entries when the AVX2 translation unit was not built.
extern const Table kTable;
bool compiled();
}  // namespace avx2

}  // namespace risfas::kernels

#endif  // RISFAS_KERNELS_IMPL_HPP
