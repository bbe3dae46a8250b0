// Copyright 2026 The percolight Authors
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

#include "percolight/permanent.h"

#include <atomic>

namespace percolight {

namespace {
std::atomic<int> g_permanent_fault{0};
}  // namespace

bool internal::permanent_fault_enabled() {
    return g_permanent_fault.load(std::memory_order_relaxed) > 0;
}

ScopedPermanentFault::ScopedPermanentFault() {
    g_permanent_fault++;
}

ScopedPermanentFault::~ScopedPermanentFault() {
    g_permanent_fault--;
}

Complex permanent(const ComplexMatrix &a) {
    return ryser_permanent(a);
}

}  // namespace percolight
