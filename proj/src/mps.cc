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

#include "percolight/mps.h"

#include <cmath>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <json.hpp>

#include "percolight/errors.h"
#include "percolight/permanent.h"

namespace percolight {

namespace {

double factorial(size_t n) {
    return std::tgamma(static_cast<double>(n) + 1);
}

double binom(size_t n, size_t k) {
    return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
}

Complex int_pow(Complex base, size_t exponent) {
    Complex out(1);
    for (size_t k = 0; k < exponent; ++k) out *= base;
    return out;
}

constexpr double kNumericalZero = 1e-12;

}  // namespace

GeneralInputState GeneralInputState::fock(uint32_t n) {
    GeneralInputState s;
    s.amplitudes.assign(n + 1, Complex(0));
    s.amplitudes[n] = 1;
    return s;
}

uint32_t GeneralInputState::max_photon() const {
    uint32_t best = 0;
    for (size_t n = 0; n < amplitudes.size(); ++n) {
        if (amplitudes[n] != Complex(0)) best = static_cast<uint32_t>(n);
    }
    return best;
}

ComplexMatrix fock_two_mode_gate(const Eigen::Matrix2cd &g, size_t d) {
    const auto dim = static_cast<Eigen::Index>(d * d);
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (size_t n1 = 0; n1 < d; ++n1) {
        for (size_t n2 = 0; n2 < d; ++n2) {
            const double in_norm = std::sqrt(factorial(n1) * factorial(n2));
            const auto col = static_cast<Eigen::Index>(n1 * d + n2);
            // (g00 x + g01 y)^n1 (g10 x + g11 y)^n2 with x, y the two creation operators.
            for (size_t a = 0; a <= n1; ++a) {
                const Complex first = binom(n1, a) * int_pow(g(0, 0), a) * int_pow(g(0, 1), n1 - a);
                for (size_t b = 0; b <= n2; ++b) {
                    const Complex second = binom(n2, b) * int_pow(g(1, 0), b) * int_pow(g(1, 1), n2 - b);
                    const size_t p = a + b;
                    const size_t q = n1 + n2 - p;
                    if (p >= d || q >= d) continue;
                    const auto row = static_cast<Eigen::Index>(p * d + q);
                    out(row, col) += first * second * std::sqrt(factorial(p) * factorial(q)) / in_norm;
                }
            }
        }
    }
    return out;
}

MpsState MpsState::from_input(std::span<const GeneralInputState> modes, size_t local_dim, MpsOptions options) {
    if (modes.empty()) {
        throw ParameterError("MPS needs at least one mode");
    }
    MpsState state;
    state.local_dim_ = local_dim;
    state.options_ = options;
    for (const auto &mode : modes) {
        if (mode.max_photon() >= local_dim) {
            throw ParameterError(
                "local dimension " + std::to_string(local_dim) + " too small for a mode with " +
                std::to_string(mode.max_photon()) + " photons");
        }
        double norm2 = 0;
        for (const auto &c : mode.amplitudes) norm2 += std::norm(c);
        if (std::abs(norm2 - 1) > 1e-12) {
            throw ParameterError("input mode amplitudes are not normalized");
        }
        Site site(local_dim, ComplexMatrix::Zero(1, 1));
        for (size_t n = 0; n < mode.amplitudes.size(); ++n) {
            site[n](0, 0) = mode.amplitudes[n];
        }
        state.sites_.push_back(std::move(site));
    }
    return state;
}

MpsState MpsState::from_fock(std::span<const uint32_t> occupations, size_t local_dim, MpsOptions options) {
    std::vector<GeneralInputState> modes;
    for (uint32_t n : occupations) modes.push_back(GeneralInputState::fock(n));
    return from_input(modes, local_dim, options);
}

void MpsState::move_center(size_t target) {
    const size_t d = local_dim_;
    while (center_ < target) {
        Site &site = sites_[center_];
        Site &next = sites_[center_ + 1];
        const Eigen::Index chi_l = site[0].rows();
        const Eigen::Index chi_r = site[0].cols();
        ComplexMatrix stacked(static_cast<Eigen::Index>(d) * chi_l, chi_r);
        for (size_t n = 0; n < d; ++n) stacked.middleRows(static_cast<Eigen::Index>(n) * chi_l, chi_l) = site[n];
        const Eigen::Index r = std::min(stacked.rows(), stacked.cols());
        Eigen::HouseholderQR<ComplexMatrix> qr(stacked);
        ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(stacked.rows(), r);
        ComplexMatrix rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
        for (size_t n = 0; n < d; ++n) {
            site[n] = q.middleRows(static_cast<Eigen::Index>(n) * chi_l, chi_l);
            next[n] = rmat * next[n];
        }
        ++center_;
    }
    while (center_ > target) {
        Site &site = sites_[center_];
        Site &prev = sites_[center_ - 1];
        const Eigen::Index chi_l = site[0].rows();
        const Eigen::Index chi_r = site[0].cols();
        ComplexMatrix wide(chi_l, static_cast<Eigen::Index>(d) * chi_r);
        for (size_t n = 0; n < d; ++n) wide.middleCols(static_cast<Eigen::Index>(n) * chi_r, chi_r) = site[n];
        ComplexMatrix tall = wide.adjoint();
        const Eigen::Index r = std::min(tall.rows(), tall.cols());
        Eigen::HouseholderQR<ComplexMatrix> qr(tall);
        ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(tall.rows(), r);
        ComplexMatrix rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
        ComplexMatrix qh = q.adjoint();
        ComplexMatrix rh = rmat.adjoint();
        for (size_t n = 0; n < d; ++n) {
            site[n] = qh.middleCols(static_cast<Eigen::Index>(n) * chi_r, chi_r);
            prev[n] = prev[n] * rh;
        }
        --center_;
    }
}

void MpsState::apply_two_site(const ComplexMatrix &gate, size_t left, double trunc_threshold) {
    move_center(left);
    const size_t d = local_dim_;
    Site &a = sites_[left];
    Site &b = sites_[left + 1];
    const Eigen::Index chi_l = a[0].rows();
    const Eigen::Index chi_r = b[0].cols();

    std::vector<ComplexMatrix> theta(d * d);
    for (size_t n1 = 0; n1 < d; ++n1) {
        for (size_t n2 = 0; n2 < d; ++n2) theta[n1 * d + n2] = a[n1] * b[n2];
    }
    ComplexMatrix big = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * chi_l, static_cast<Eigen::Index>(d) * chi_r);
    for (size_t out = 0; out < d * d; ++out) {
        ComplexMatrix block = ComplexMatrix::Zero(chi_l, chi_r);
        for (size_t in = 0; in < d * d; ++in) {
            const Complex g = gate(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
            if (g != Complex(0)) block += g * theta[in];
        }
        const auto p = static_cast<Eigen::Index>(out / d);
        const auto q = static_cast<Eigen::Index>(out % d);
        big.block(p * chi_l, q * chi_r, chi_l, chi_r) = block;
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(big, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &s = svd.singularValues();
    const double total = s.squaredNorm();
    Eigen::Index keep = 0;
    double kept_weight = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) > kNumericalZero * s(0) && s(k) >= trunc_threshold) {
            keep = k + 1;
            kept_weight += s(k) * s(k);
        } else {
            break;
        }
    }
    if (keep == 0) {
        keep = 1;
        kept_weight = s(0) * s(0);
    }
    if (static_cast<size_t>(keep) > options_.max_bond) {
        std::string profile;
        for (size_t chi : bond_dims()) profile += std::to_string(chi) + " ";
        throw ResourceError(
            "bond dimension " + std::to_string(keep) + " exceeds the cap " + std::to_string(options_.max_bond) +
            " (current bonds: " + profile + ")");
    }
    if (total > 0) {
        discarded_weight_ += (total - kept_weight) / total;
    }
    const double rescale = kept_weight > 0 ? std::sqrt(total / kept_weight) : 1.0;
    ComplexMatrix u = svd.matrixU().leftCols(keep);
    ComplexMatrix sv = (s.head(keep) * rescale).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    for (size_t n = 0; n < d; ++n) {
        a[n] = u.middleRows(static_cast<Eigen::Index>(n) * chi_l, chi_l);
        b[n] = sv.middleCols(static_cast<Eigen::Index>(n) * chi_r, chi_r);
    }
    center_ = left + 1;
    max_bond_seen_ = std::max(max_bond_seen_, static_cast<size_t>(keep));
}

void MpsState::apply_beamsplitter(const Eigen::Matrix2cd &gate, size_t i, size_t j, double trunc_threshold) {
    if (i >= sites_.size() || j >= sites_.size() || i == j) {
        throw StructuralError("beam splitter modes must be distinct and inside the MPS");
    }
    const size_t lo = std::min(i, j);
    const size_t hi = std::max(i, j);
    ComplexMatrix swap;
    if (hi > lo + 1) {
        Eigen::Matrix2cd s;
        s << 0, 1, 1, 0;
        swap = fock_two_mode_gate(s, local_dim_);
    }
    // Bring mode hi next to lo, apply, then unwind.
    for (size_t pos = hi - 1; pos > lo; --pos) apply_two_site(swap, pos, trunc_threshold);
    Eigen::Matrix2cd oriented = gate;
    if (i != lo) {
        oriented << gate(1, 1), gate(1, 0), gate(0, 1), gate(0, 0);
    }
    apply_two_site(fock_two_mode_gate(oriented, local_dim_), lo, trunc_threshold);
    for (size_t pos = lo + 1; pos < hi; ++pos) apply_two_site(swap, pos, trunc_threshold);
}

void MpsState::apply_circuit(const Circuit &circuit, double trunc_threshold) {
    if (circuit.num_modes() != sites_.size()) {
        throw StructuralError("circuit and MPS mode counts differ");
    }
    for (const auto &layer : circuit.layers()) {
        for (const auto &bs : layer) {
            apply_beamsplitter(bs_unitary(bs.theta, bs.phi), bs.i, bs.j, trunc_threshold);
        }
    }
}

std::vector<size_t> MpsState::bond_dims() const {
    std::vector<size_t> out;
    for (size_t k = 0; k + 1 < sites_.size(); ++k) out.push_back(static_cast<size_t>(sites_[k][0].cols()));
    return out;
}

double MpsState::norm() const {
    ComplexMatrix env = ComplexMatrix::Ones(1, 1);
    for (const auto &site : sites_) {
        ComplexMatrix next = ComplexMatrix::Zero(site[0].cols(), site[0].cols());
        for (const auto &a : site) next += a.adjoint() * env * a;
        env = std::move(next);
    }
    return std::sqrt(std::abs(env(0, 0)));
}

Eigen::VectorXcd MpsState::to_dense() const {
    const auto d = static_cast<Eigen::Index>(local_dim_);
    ComplexMatrix partial = ComplexMatrix::Ones(1, 1);
    for (const auto &site : sites_) {
        ComplexMatrix next(partial.rows() * d, site[0].cols());
        for (Eigen::Index idx = 0; idx < partial.rows(); ++idx) {
            for (Eigen::Index n = 0; n < d; ++n) {
                next.row(idx * d + n) = partial.row(idx) * site[static_cast<size_t>(n)];
            }
        }
        partial = std::move(next);
    }
    return partial.col(0);
}

OutcomePattern MpsState::sample(Rng &rng) const {
    MpsState work = *this;
    work.move_center(0);
    OutcomePattern outcome;
    ComplexMatrix left = ComplexMatrix::Ones(1, 1);
    left /= work.norm();
    std::vector<double> probs(local_dim_);
    std::vector<ComplexMatrix> candidates(local_dim_);
    for (const auto &site : work.sites_) {
        for (size_t n = 0; n < local_dim_; ++n) {
            candidates[n] = left * site[n];
            probs[n] = candidates[n].squaredNorm();
        }
        const size_t pick = sample_weighted(rng, probs);
        outcome.push_back(static_cast<uint32_t>(pick));
        left = candidates[pick] / std::sqrt(probs[pick]);
    }
    return outcome;
}

std::string MpsState::profile_json() const {
    nlohmann::json doc = {
        {"max_bond", max_bond_seen_},
        {"discarded_weight", discarded_weight_},
        {"bond_dims", bond_dims()},
    };
    return doc.dump();
}

Eigen::VectorXcd dense_output_state(const ComplexMatrix &u, std::span<const GeneralInputState> modes, size_t local_dim) {
    const size_t m = modes.size();
    if (static_cast<size_t>(u.rows()) != m || static_cast<size_t>(u.cols()) != m) {
        throw StructuralError("unitary size does not match the number of input modes");
    }
    size_t dim = 1;
    for (size_t k = 0; k < m; ++k) dim *= local_dim;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));

    // Walk every input Fock configuration s with nonzero product amplitude.
    std::vector<uint32_t> s(m, 0);
    while (true) {
        Complex coef(1);
        for (size_t k = 0; k < m && coef != Complex(0); ++k) {
            coef *= s[k] < modes[k].amplitudes.size() ? modes[k].amplitudes[s[k]] : Complex(0);
        }
        if (coef != Complex(0)) {
            const uint32_t n = std::accumulate(s.begin(), s.end(), 0u);
            double s_norm = 1;
            for (uint32_t v : s) s_norm *= factorial(v);
            for_each_pattern(n, m, [&](const OutcomePattern &out_pattern) {
                size_t index = 0;
                double m_norm = 1;
                for (uint32_t v : out_pattern) {
                    if (v >= local_dim) return;
                    index = index * local_dim + v;
                    m_norm *= factorial(v);
                }
                ComplexMatrix sub(n, n);
                size_t r = 0;
                for (size_t i = 0; i < m; ++i) {
                    for (uint32_t t = 0; t < s[i]; ++t, ++r) {
                        size_t c = 0;
                        for (size_t j = 0; j < m; ++j) {
                            for (uint32_t t2 = 0; t2 < out_pattern[j]; ++t2, ++c) {
                                sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                                    u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                            }
                        }
                    }
                }
                out(static_cast<Eigen::Index>(index)) += coef * permanent(sub) / std::sqrt(s_norm * m_norm);
            });
        }
        size_t pos = m;
        while (pos > 0) {
            --pos;
            if (s[pos] + 1 < modes[pos].amplitudes.size()) {
                s[pos]++;
                break;
            }
            s[pos] = 0;
            if (pos == 0) return out;
        }
        if (m == 0) return out;
    }
}

size_t schmidt_rank(const Eigen::VectorXcd &state, size_t num_modes, size_t local_dim, size_t cut, double tolerance) {
    if (cut > num_modes) {
        throw ParameterError("cut outside the mode range");
    }
    Eigen::Index rows = 1;
    for (size_t k = 0; k < cut; ++k) rows *= static_cast<Eigen::Index>(local_dim);
    if (rows == 0 || state.size() % rows != 0) {
        throw StructuralError("state size does not match the mode layout");
    }
    const Eigen::Index cols = state.size() / rows;
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    ComplexMatrix mat = Eigen::Map<const RowMajor>(state.data(), rows, cols);
    Eigen::JacobiSVD<ComplexMatrix> svd(mat);
    size_t rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) > tolerance) ++rank;
    }
    return rank;
}

SchmidtCheck schmidt_rank_check(
    const Eigen::VectorXcd &state, size_t num_modes, size_t local_dim, size_t cut, uint64_t bound) {
    SchmidtCheck out{};
    out.rank = schmidt_rank(state, num_modes, local_dim, cut);
    out.bound = bound;
    out.within_bound = out.rank <= bound;
    return out;
}

uint64_t single_photon_rank_bound(size_t photons) {
    return photons >= 64 ? UINT64_MAX : uint64_t{1} << photons;
}

uint64_t general_input_rank_bound(size_t n_max, size_t num_inputs) {
    const uint64_t base = (n_max + 1) * (n_max + 2) / 2;
    unsigned __int128 out = 1;
    for (size_t k = 0; k < num_inputs; ++k) {
        out *= base;
        if (out > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<uint64_t>(out);
}

double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    const double scale = a.norm() * b.norm();
    if (!(scale > 0)) {
        return 0;
    }
    return std::abs(a.dot(b)) / scale;
}

}  // namespace percolight
