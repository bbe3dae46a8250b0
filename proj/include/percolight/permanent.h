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

#ifndef PERCOLIGHT_PERMANENT_H
#define PERCOLIGHT_PERMANENT_H

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "percolight/circuit.h"
#include "percolight/errors.h"

namespace percolight {

namespace internal {
bool permanent_fault_enabled();
}  // namespace internal

/// Ryser's formula with Gray-code subset iteration, O(k·2^k).
///
///   Per(A) = (-1)^k Σ_{S ⊆ [k]} (-1)^{|S|} Π_i Σ_{j ∈ S} a_ij
///
/// Exact for integer scalar types. Throws StructuralError when A is not
/// square and ResourceError when k > 30.
template <typename Derived>
typename Derived::Scalar ryser_permanent(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) {
        throw StructuralError("permanent of a non-square matrix");
    }
    const auto k = static_cast<size_t>(a.rows());
    if (k == 0) {
        return Scalar(1);
    }
    if (k > 30) {
        throw ResourceError("permanent size exceeds the 30x30 cap");
    }
    const bool fault = internal::permanent_fault_enabled();
    std::vector<Scalar> row_sums(k, Scalar(0));
    Scalar total(0);
    uint64_t gray = 0;
    const uint64_t count = uint64_t{1} << k;
    for (uint64_t step = 1; step < count; ++step) {
        // Column entering or leaving S is the lowest set bit of `step`.
        auto col = static_cast<size_t>(__builtin_ctzll(step));
        uint64_t bit = uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (size_t i = 0; i < k; ++i) row_sums[i] += a(i, col);
        } else {
            for (size_t i = 0; i < k; ++i) row_sums[i] -= a(i, col);
        }
        Scalar prod = row_sums[0];
        for (size_t i = 1; i < k; ++i) prod *= row_sums[i];
        bool odd = (__builtin_popcountll(gray) & 1) != 0;
        if (fault && odd) {
            // Test hook: sign of odd-cardinality subsets flipped.
            odd = false;
        }
        if (odd) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return (k & 1) ? Scalar(-total) : total;
}

/// Permanent of a complex square matrix (Ryser).
Complex permanent(const ComplexMatrix &a);

/// Reference permanent by summing all k! permutation products. Independent
/// of Ryser; used as an oracle by tests and the verification suite.
template <typename Derived>
typename Derived::Scalar permanent_by_permutations(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) {
        throw StructuralError("permanent of a non-square matrix");
    }
    const auto k = static_cast<size_t>(a.rows());
    std::vector<size_t> perm(k);
    std::iota(perm.begin(), perm.end(), size_t{0});
    Scalar total(0);
    do {
        Scalar prod(1);
        for (size_t i = 0; i < k; ++i) prod *= a(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Fault injection for the verification suite: while alive, the Ryser sum
/// flips the sign of odd-cardinality subset terms. Not thread-safe with
/// concurrent permanent evaluations on other threads.
class ScopedPermanentFault {
   public:
    ScopedPermanentFault();
    ~ScopedPermanentFault();
    ScopedPermanentFault(const ScopedPermanentFault &) = delete;
    ScopedPermanentFault &operator=(const ScopedPermanentFault &) = delete;
};

}  // namespace percolight

#endif
