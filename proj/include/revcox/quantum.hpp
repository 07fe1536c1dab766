// Copyright 2026 The revcox Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revcox/lifting.hpp"
#include "revcox/perm.hpp"
#include "revcox/permgroup.hpp"

namespace revcox {

class PermUnitary;

using Amplitude = std::complex<double>;

/// Tolerance for norms and amplitude comparisons.
inline constexpr double kAmplitudeTolerance = 1e-12;
/// Amplitudes smaller than this are dropped.
inline constexpr double kPruneThreshold = 1e-15;

/// A normalized state over the 2^W computational basis, stored sparsely by basis index.
class QState {
   public:
    QState(unsigned total_width, std::map<uint64_t, Amplitude> amplitudes)
        : width_(total_width), amps_(std::move(amplitudes)) {
        if (width_ > kDefaultWidthCap) {
            throw ValidationError("QState: width exceeds cap");
        }
        for (auto it = amps_.begin(); it != amps_.end();) {
            if ((it->first >> width_) != 0) {
                throw DomainError("QState: basis index " + std::to_string(it->first) + " out of range");
            }
            if (std::abs(it->second) < kPruneThreshold) {
                it = amps_.erase(it);
            } else {
                ++it;
            }
        }
        if (std::abs(norm() - 1.0) > kAmplitudeTolerance) {
            throw ValidationError("QState: state is not normalized (norm " + std::to_string(norm()) + ")");
        }
    }

    /// Rescales `amplitudes` to unit norm.
    static QState normalized(unsigned total_width, std::map<uint64_t, Amplitude> amplitudes) {
        double total = 0;
        for (const auto &[k, a] : amplitudes) {
            total += std::norm(a);
        }
        if (total == 0) {
            throw ValidationError("QState: cannot normalize the zero vector");
        }
        double scale = 1.0 / std::sqrt(total);
        for (auto &[k, a] : amplitudes) {
            a *= scale;
        }
        return QState(total_width, std::move(amplitudes));
    }

    unsigned total_width() const {
        return width_;
    }
    const std::map<uint64_t, Amplitude> &amplitudes() const {
        return amps_;
    }
    Amplitude amplitude(uint64_t index) const {
        auto it = amps_.find(index);
        return it == amps_.end() ? Amplitude{} : it->second;
    }
    /// Euclidean norm.
    double norm() const {
        double total = 0;
        for (const auto &[k, a] : amps_) {
            total += std::norm(a);
        }
        return std::sqrt(total);
    }

   private:
    friend QState apply(const PermUnitary &, const QState &);
    struct Trusted {};
    QState(Trusted, unsigned total_width, std::map<uint64_t, Amplitude> amplitudes)
        : width_(total_width), amps_(std::move(amplitudes)) {
    }

    unsigned width_;
    std::map<uint64_t, Amplitude> amps_;
};

/// Largest amplitude difference over the union of both supports.
inline double max_distance(const QState &a, const QState &b) {
    double worst = 0;
    for (const auto &[k, v] : a.amplitudes()) {
        worst = std::max(worst, std::abs(v - b.amplitude(k)));
    }
    for (const auto &[k, v] : b.amplitudes()) {
        worst = std::max(worst, std::abs(v - a.amplitude(k)));
    }
    return worst;
}

/// Linear extension of a basis permutation.
class PermUnitary {
   public:
    explicit PermUnitary(Perm perm) : perm_(std::move(perm)) {
    }
    const Perm &perm() const {
        return perm_;
    }
    unsigned total_width() const {
        return perm_.total_width();
    }
    PermUnitary adjoint() const {
        return PermUnitary(perm_inverse(perm_));
    }
    /// Matrix product: (this * other) acts as other first.
    PermUnitary operator*(const PermUnitary &other) const {
        return PermUnitary(perm_compose(perm_, other.perm_));
    }

   private:
    Perm perm_;
};

/// Moves the amplitude of |i> to |perm(i)>. Exact: no arithmetic on amplitudes.
inline QState apply(const PermUnitary &u, const QState &s) {
    if (u.total_width() != s.total_width()) {
        throw ValidationError(
            "apply: unitary acts on " + std::to_string(u.total_width()) + " qubits, state has " +
            std::to_string(s.total_width()));
    }
    std::map<uint64_t, Amplitude> out;
    const auto &m = u.perm().mapping();
    for (const auto &[k, a] : s.amplitudes()) {
        out.emplace(m[k], a);
    }
    return QState(QState::Trusted{}, s.total_width(), std::move(out));
}

inline QState basis_state(const RegisterLayout &lay, const std::vector<uint64_t> &values) {
    return QState(lay.total_width, {{lay.pack(values), Amplitude{1.0}}});
}

/// Equal superposition over every value of register `reg`, starting from a basis state in
/// which that register is zero.
inline QState uniform_superposition(const RegisterLayout &lay, size_t reg, const QState &base) {
    if (reg >= lay.register_count()) {
        throw DomainError("uniform_superposition: register " + std::to_string(reg) + " out of range");
    }
    if (base.total_width() != lay.total_width || base.amplitudes().size() != 1) {
        throw ValidationError("uniform_superposition: base must be a single basis state of the layout");
    }
    auto [index, amp] = *base.amplitudes().begin();
    if (lay.extract(index, reg) != 0) {
        throw ValidationError("uniform_superposition: register " + std::to_string(reg) + " of the base is not 0");
    }
    uint64_t count = uint64_t{1} << lay.widths[reg];
    Amplitude scaled = amp / std::sqrt(static_cast<double>(count));
    std::map<uint64_t, Amplitude> out;
    for (uint64_t v = 0; v < count; v++) {
        out.emplace(index | (v << lay.offsets[reg]), scaled);
    }
    return QState(lay.total_width, std::move(out));
}

/// Uniform double in [0, 1) from the top 53 bits of one generator output.
inline double unit_interval(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct MeasurementResult {
    size_t register_index = 0;
    std::map<uint64_t, uint64_t> counts;
    uint64_t seed = 0;
    uint64_t shots = 0;
    /// Exact marginal distribution the shots were drawn from.
    std::map<uint64_t, double> probabilities;
};

inline std::map<uint64_t, double> marginal(const QState &s, const RegisterLayout &lay, size_t reg) {
    if (reg >= lay.register_count()) {
        throw DomainError("measure: register " + std::to_string(reg) + " out of range");
    }
    std::map<uint64_t, double> probs;
    for (const auto &[k, a] : s.amplitudes()) {
        probs[lay.extract(k, reg)] += std::norm(a);
    }
    return probs;
}

/// Samples register `reg` `shots` times without collapsing the state.
///
/// Each shot draws u = unit_interval(rng) from std::mt19937_64(seed) and returns the first
/// outcome, in increasing value order, whose cumulative probability exceeds u.
inline MeasurementResult measure(const QState &s, const RegisterLayout &lay, size_t reg, uint64_t seed, uint64_t shots) {
    if (shots == 0) {
        throw ValidationError("measure: shots must be positive");
    }
    if (s.total_width() != lay.total_width) {
        throw ValidationError("measure: state width does not match layout");
    }
    MeasurementResult result{reg, {}, seed, shots, marginal(s, lay, reg)};
    std::vector<std::pair<uint64_t, double>> cumulative;
    double running = 0;
    for (const auto &[v, p] : result.probabilities) {
        running += p;
        cumulative.emplace_back(v, running);
    }
    std::mt19937_64 rng(seed);
    for (uint64_t k = 0; k < shots; k++) {
        double u = unit_interval(rng);
        uint64_t outcome = cumulative.back().first;
        for (const auto &[v, c] : cumulative) {
            if (u < c) {
                outcome = v;
                break;
            }
        }
        result.counts[outcome]++;
    }
    return result;
}

/// Random normalized state with `support` distinct basis indices (capped at 2^W) and complex
/// amplitudes whose parts are uniform in [-1, 1) before normalization.
inline QState random_state(unsigned total_width, size_t support, uint64_t seed) {
    std::mt19937_64 rng(seed);
    uint64_t dim = uint64_t{1} << total_width;
    std::map<uint64_t, Amplitude> amps;
    if (support >= dim) {
        for (uint64_t k = 0; k < dim; k++) {
            amps[k] = {};
        }
    } else {
        while (amps.size() < support) {
            amps[rng() % dim] = {};
        }
    }
    for (auto &[k, a] : amps) {
        double re = 2 * unit_interval(rng) - 1;
        double im = 2 * unit_interval(rng) - 1;
        a = {re, im};
        if (std::abs(a) < 1e-6) {
            a = {1.0, 0.0};
        }
    }
    return QState::normalized(total_width, std::move(amps));
}

struct RepresentationReport {
    size_t pairs_checked = 0;
    bool exhaustive = false;
    size_t states_per_pair = 0;
    /// Pairs (a, b) with U_{a o b} != U_a U_b on some trial state.
    std::vector<std::pair<size_t, size_t>> homomorphism_failures;
    /// Elements whose unitary changed the norm of some trial state.
    std::vector<size_t> unitarity_failures;
    /// Pairs of distinct elements acting identically on the basis.
    std::vector<std::pair<size_t, size_t>> injectivity_failures;
    bool identity_acts_trivially = true;
    double max_deviation = 0;

    bool passed() const {
        return homomorphism_failures.empty() && unitarity_failures.empty() && injectivity_failures.empty() &&
               identity_acts_trivially;
    }
};

/// Groups up to this order are checked on every ordered pair.
inline constexpr size_t kExhaustivePairLimit = 64;
inline constexpr size_t kSampledPairs = 4096;

/// Checks that psi -> U_psi is a faithful unitary representation of `g`.
inline RepresentationReport representation_check(const GroupClosure &g, size_t trials, uint64_t seed) {
    if (trials == 0) {
        throw ValidationError("representation_check: trials must be positive");
    }
    RepresentationReport rep;
    rep.states_per_pair = trials;
    unsigned width = g.total_width();
    size_t support = 8;

    std::vector<QState> states;
    for (size_t t = 0; t < trials; t++) {
        states.push_back(random_state(width, support, seed + t));
    }
    std::vector<PermUnitary> units;
    for (const Perm &p : g.elements) {
        units.emplace_back(p);
    }

    for (size_t e = 0; e < units.size(); e++) {
        for (const QState &s : states) {
            QState out = apply(units[e], s);
            if (std::abs(out.norm() - 1.0) > kAmplitudeTolerance) {
                rep.unitarity_failures.push_back(e);
                break;
            }
            if (e == 0 && max_distance(out, s) > kAmplitudeTolerance) {
                rep.identity_acts_trivially = false;
            }
        }
    }

    std::unordered_map<Perm, size_t, PermHash> seen;
    for (size_t e = 0; e < units.size(); e++) {
        auto [it, inserted] = seen.try_emplace(units[e].perm(), e);
        if (!inserted) {
            rep.injectivity_failures.emplace_back(it->second, e);
        }
    }

    auto check_pair = [&](size_t a, size_t b) {
        const PermUnitary &ab = units[g.product(a, b)];
        bool ok = true;
        for (const QState &s : states) {
            double d = max_distance(apply(ab, s), apply(units[a], apply(units[b], s)));
            rep.max_deviation = std::max(rep.max_deviation, d);
            ok = ok && d <= kAmplitudeTolerance;
        }
        if (!ok) {
            rep.homomorphism_failures.emplace_back(a, b);
        }
        rep.pairs_checked++;
    };

    if (g.order() <= kExhaustivePairLimit) {
        rep.exhaustive = true;
        for (size_t a = 0; a < g.order(); a++) {
            for (size_t b = 0; b < g.order(); b++) {
                check_pair(a, b);
            }
        }
    } else {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        for (size_t k = 0; k < kSampledPairs; k++) {
            size_t a = rng() % g.order();
            size_t b = rng() % g.order();
            check_pair(a, b);
        }
    }
    return rep;
}

}  // namespace revcox
