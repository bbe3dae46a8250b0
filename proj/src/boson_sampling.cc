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

#include "percolight/boson_sampling.h"

#include <cmath>
#include <numeric>

#include "percolight/errors.h"
#include "percolight/permanent.h"

namespace percolight {

namespace {

double factorial(uint32_t n) {
    return std::tgamma(static_cast<double>(n) + 1);
}

void patterns_rec(
    uint32_t remaining, size_t pos, OutcomePattern &current, const std::function<void(const OutcomePattern &)> &visit) {
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        visit(current);
        return;
    }
    for (uint32_t c = remaining + 1; c-- > 0;) {
        current[pos] = c;
        patterns_rec(remaining - c, pos + 1, current, visit);
    }
    current[pos] = 0;
}

}  // namespace

void for_each_pattern(uint32_t total, size_t num_modes, const std::function<void(const OutcomePattern &)> &visit) {
    if (num_modes == 0) {
        if (total == 0) visit(OutcomePattern{});
        return;
    }
    OutcomePattern current(num_modes, 0);
    patterns_rec(total, 0, current, visit);
}

uint64_t binomial_saturating(uint64_t n, uint64_t k, bool *saturated) {
    if (saturated) *saturated = false;
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (uint64_t i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
        if (c > UINT64_MAX) {
            if (saturated) *saturated = true;
            return UINT64_MAX;
        }
    }
    return static_cast<uint64_t>(c);
}

uint64_t count_patterns(uint32_t total, size_t num_modes) {
    if (num_modes == 0) return total == 0 ? 1 : 0;
    return binomial_saturating(total + num_modes - 1, total);
}

ComplexMatrix repeated_submatrix(const ComplexMatrix &u, std::span<const uint32_t> inputs, std::span<const uint32_t> outcome) {
    if (inputs.size() != static_cast<size_t>(u.rows()) || outcome.size() != static_cast<size_t>(u.cols())) {
        throw StructuralError("occupation vectors do not match the matrix shape");
    }
    std::vector<Eigen::Index> rows, cols;
    for (size_t r = 0; r < inputs.size(); ++r) {
        for (uint32_t t = 0; t < inputs[r]; ++t) rows.push_back(static_cast<Eigen::Index>(r));
    }
    for (size_t c = 0; c < outcome.size(); ++c) {
        for (uint32_t t = 0; t < outcome[c]; ++t) cols.push_back(static_cast<Eigen::Index>(c));
    }
    ComplexMatrix sub(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < cols.size(); ++j) {
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = u(rows[i], cols[j]);
        }
    }
    return sub;
}

double outcome_probability(const ComplexMatrix &u, std::span<const uint32_t> inputs, std::span<const uint32_t> outcome) {
    const uint32_t n_in = std::accumulate(inputs.begin(), inputs.end(), 0u);
    const uint32_t n_out = std::accumulate(outcome.begin(), outcome.end(), 0u);
    if (n_in != n_out) {
        throw DomainError(
            "photon number mismatch: " + std::to_string(n_in) + " in, " + std::to_string(n_out) + " out");
    }
    ComplexMatrix sub = repeated_submatrix(u, inputs, outcome);
    double norm = 1;
    for (uint32_t s : inputs) norm *= factorial(s);
    for (uint32_t m : outcome) norm *= factorial(m);
    return std::norm(permanent(sub)) / norm;
}

Distribution exact_component_distribution(const ComplexMatrix &u, std::span<const uint32_t> inputs, size_t cap) {
    const uint32_t n = std::accumulate(inputs.begin(), inputs.end(), 0u);
    const auto cols = static_cast<size_t>(u.cols());
    const uint64_t count = count_patterns(n, cols);
    if (count > cap) {
        throw ResourceError(
            "component has " + std::to_string(count) + " outcome patterns, above the enumeration cap " +
            std::to_string(cap) + "; use sample_component");
    }
    Distribution out;
    for_each_pattern(n, cols, [&](const OutcomePattern &m) {
        double p = outcome_probability(u, inputs, m);
        if (p > 0) out.emplace(m, p);
    });
    return out;
}

OutcomePattern sample_component(const ComplexMatrix &u, std::span<const uint32_t> inputs, Rng &rng) {
    if (inputs.size() != static_cast<size_t>(u.rows())) {
        throw StructuralError("occupation vector does not match the matrix rows");
    }
    const auto cols = u.cols();
    std::vector<Eigen::Index> rows;
    for (size_t r = 0; r < inputs.size(); ++r) {
        for (uint32_t t = 0; t < inputs[r]; ++t) rows.push_back(static_cast<Eigen::Index>(r));
    }
    const size_t n = rows.size();
    for (size_t k = n; k > 1; --k) {
        std::swap(rows[k - 1], rows[uniform_below(rng, k)]);
    }
    ComplexMatrix a(static_cast<Eigen::Index>(n), cols);
    for (size_t i = 0; i < n; ++i) a.row(static_cast<Eigen::Index>(i)) = u.row(rows[i]);

    OutcomePattern outcome(static_cast<size_t>(cols), 0);
    std::vector<Eigen::Index> chosen;
    std::vector<double> weights(static_cast<size_t>(cols));
    std::vector<Complex> minors;
    for (size_t k = 1; k <= n; ++k) {
        // minors[l] = Per(A[rows 0..k minus l], chosen columns).
        minors.assign(k, Complex(1));
        if (k > 1) {
            ComplexMatrix block(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k - 1));
            for (size_t l = 0; l < k; ++l) {
                Eigen::Index out_row = 0;
                for (size_t r = 0; r < k; ++r) {
                    if (r == l) continue;
                    for (size_t c = 0; c + 1 < k; ++c) {
                        block(out_row, static_cast<Eigen::Index>(c)) = a(static_cast<Eigen::Index>(r), chosen[c]);
                    }
                    ++out_row;
                }
                minors[l] = permanent(block);
            }
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            Complex amp(0);
            for (size_t l = 0; l < k; ++l) amp += a(static_cast<Eigen::Index>(l), c) * minors[l];
            weights[static_cast<size_t>(c)] = std::norm(amp);
        }
        const size_t pick = sample_weighted(rng, weights);
        chosen.push_back(static_cast<Eigen::Index>(pick));
        outcome[pick]++;
    }
    return outcome;
}

size_t sample_distinguishable(const ComplexMatrix &u, size_t source_mode, Rng &rng) {
    if (source_mode >= static_cast<size_t>(u.rows())) {
        throw ParameterError("source mode outside the unitary");
    }
    std::vector<double> weights(static_cast<size_t>(u.cols()));
    for (Eigen::Index w = 0; w < u.cols(); ++w) {
        weights[static_cast<size_t>(w)] = std::norm(u(static_cast<Eigen::Index>(source_mode), w));
    }
    return sample_weighted(rng, weights);
}

Distribution convolve(const Distribution &p, const Distribution &q) {
    Distribution out;
    for (const auto &[mp, pp] : p) {
        for (const auto &[mq, pq] : q) {
            if (mp.size() != mq.size()) {
                throw StructuralError("convolving outcomes of different lengths");
            }
            OutcomePattern sum(mp.size());
            for (size_t i = 0; i < mp.size(); ++i) sum[i] = mp[i] + mq[i];
            out[sum] += pp * pq;
        }
    }
    return out;
}

Distribution distinguishable_distribution(const ComplexMatrix &u, std::span<const size_t> sources) {
    const auto cols = static_cast<size_t>(u.cols());
    Distribution out{{OutcomePattern(cols, 0), 1.0}};
    for (size_t v : sources) {
        Distribution single;
        for (size_t w = 0; w < cols; ++w) {
            double p = std::norm(u(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)));
            if (p > 0) {
                OutcomePattern m(cols, 0);
                m[w] = 1;
                single.emplace(std::move(m), p);
            }
        }
        out = convolve(out, single);
    }
    return out;
}

Distribution empirical_distribution(const std::vector<OutcomePattern> &samples) {
    Distribution out;
    if (samples.empty()) return out;
    const double w = 1.0 / static_cast<double>(samples.size());
    for (const auto &s : samples) out[s] += w;
    return out;
}

double tvd(const Distribution &p, const Distribution &q) {
    double sum = 0;
    auto ip = p.begin();
    auto iq = q.begin();
    while (ip != p.end() || iq != q.end()) {
        if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
            sum += std::abs(ip->second);
            ++ip;
        } else if (ip == p.end() || iq->first < ip->first) {
            sum += std::abs(iq->second);
            ++iq;
        } else {
            sum += std::abs(ip->second - iq->second);
            ++ip;
            ++iq;
        }
    }
    return 0.5 * sum;
}

double total_probability(const Distribution &p) {
    double sum = 0;
    for (const auto &[m, v] : p) sum += v;
    return sum;
}

HilbertDimBound hilbert_dim_bound(uint64_t y_star, uint64_t delta, uint64_t n_max) {
    if (y_star < 1 || delta < 1 || n_max < 1) {
        throw ParameterError("hilbert_dim_bound arguments must be >= 1");
    }
    HilbertDimBound out{};
    const uint64_t photons = n_max * y_star;
    out.exact = binomial_saturating(delta * y_star + photons - 1, photons, &out.saturated);
    out.relaxation = std::pow(std::exp(1.0) * static_cast<double>(delta + 1), static_cast<double>(y_star));
    return out;
}

}  // namespace percolight
