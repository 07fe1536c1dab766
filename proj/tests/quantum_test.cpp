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

#include "revcox/quantum.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace revcox;

namespace {

PipelineSpec p1(BoolFunc f = identity_fn(1), BoolFunc g = identity_fn(1)) {
    return PipelineSpec({1, 1, 1}, {std::move(f), std::move(g)});
}

PermUnitary gamma_phi(const PipelineSpec &p) {
    return PermUnitary(extend(p, 2)) * PermUnitary(extend(p, 1));
}

}  // namespace

TEST(quantum, qstate_invariants) {
    ASSERT_THROW(QState(2, {{0, 1.0}, {1, 1.0}}), ValidationError);
    ASSERT_THROW(QState(2, {{4, 1.0}}), DomainError);
    QState s(2, {{0, 1.0}, {3, 1e-16}});
    ASSERT_EQ(s.amplitudes().size(), 1u);
    QState n = QState::normalized(2, {{0, 1.0}, {1, {0.0, 1.0}}});
    ASSERT_NEAR(n.norm(), 1.0, 1e-12);
    ASSERT_THROW(QState::normalized(2, {}), ValidationError);
}

TEST(quantum, basis_state) {
    RegisterLayout lay = layout(p1());
    QState s = basis_state(lay, {1, 0, 0});
    ASSERT_EQ(s.amplitudes().size(), 1u);
    ASSERT_EQ(s.amplitude(1), Amplitude(1.0));
    ASSERT_EQ(basis_state(lay, {0, 0, 0}).amplitudes().begin()->first, 0u);
    ASSERT_EQ(basis_state(lay, {1, 1, 1}).amplitudes().begin()->first, 7u);
    ASSERT_THROW(basis_state(lay, {2, 0, 0}), DomainError);
}

TEST(quantum, uniform_superposition) {
    RegisterLayout lay = layout(p1());
    QState s = uniform_superposition(lay, 0, basis_state(lay, {0, 0, 0}));
    ASSERT_EQ(s.amplitudes().size(), 2u);
    ASSERT_NEAR(std::abs(s.amplitude(0) - 1 / std::sqrt(2.0)), 0, 1e-15);
    ASSERT_NEAR(std::abs(s.amplitude(1) - 1 / std::sqrt(2.0)), 0, 1e-15);
    ASSERT_NEAR(s.norm(), 1.0, 1e-12);

    PipelineSpec wide({2, 1, 1}, {random_fn(2, 1, 3), identity_fn(1)});
    RegisterLayout wl = layout(wide);
    QState w = uniform_superposition(wl, 0, basis_state(wl, {0, 1, 0}));
    ASSERT_EQ(w.amplitudes().size(), 4u);
    for (const auto &[k, a] : w.amplitudes()) {
        ASSERT_NEAR(std::abs(a - 0.5), 0, 1e-15);
        ASSERT_EQ(wl.extract(k, 1), 1u);
    }
    ASSERT_NEAR(w.norm(), 1.0, 1e-12);

    ASSERT_THROW(uniform_superposition(lay, 0, basis_state(lay, {1, 0, 0})), ValidationError);
    ASSERT_THROW(uniform_superposition(lay, 0, s), ValidationError);
    ASSERT_THROW(uniform_superposition(lay, 3, basis_state(lay, {0, 0, 0})), DomainError);
}

TEST(quantum, apply) {
    PipelineSpec p = p1();
    RegisterLayout lay = layout(p);
    PermUnitary u = gamma_phi(p);
    for (uint64_t x = 0; x < 2; x++) {
        QState out = apply(u, basis_state(lay, {x, 0, 0}));
        ASSERT_EQ(max_distance(out, basis_state(lay, {x, x, x})), 0.0);
    }
    QState r = random_state(3, 5, 9);
    ASSERT_EQ(max_distance(apply(PermUnitary(Perm::identity(3)), r), r), 0.0);

    QState sup = uniform_superposition(lay, 0, basis_state(lay, {0, 0, 0}));
    QState expected = QState::normalized(3, {{lay.pack({0, 0, 0}), 1.0}, {lay.pack({1, 1, 1}), 1.0}});
    ASSERT_LE(max_distance(apply(u, sup), expected), 1e-12);

    ASSERT_THROW(apply(PermUnitary(Perm::identity(2)), r), ValidationError);
}

TEST(quantum, norm_preservation_and_inverse) {
    for (const PipelineSpec &p : oracle::random_two_step(20, 2, 3)) {
        GroupClosure g = closure(generators(p));
        for (uint64_t k = 0; k < 20; k++) {
            QState s = random_state(p.total_width(), 6, 1000 + k);
            for (const Perm &e : g.elements) {
                PermUnitary u(e);
                QState out = apply(u, s);
                ASSERT_NEAR(out.norm(), 1.0, 1e-12);
                QState back = apply(u.adjoint(), out);
                ASSERT_EQ(back.amplitudes().size(), s.amplitudes().size());
                for (const auto &[idx, a] : s.amplitudes()) {
                    ASSERT_EQ(back.amplitudes().count(idx), 1u);
                    ASSERT_LE(std::abs(back.amplitude(idx) - a), 1e-12);
                }
            }
        }
    }
}

TEST(quantum, measure) {
    RegisterLayout lay = layout(p1());
    MeasurementResult m = measure(basis_state(lay, {1, 1, 1}), lay, 2, 42, 100);
    ASSERT_EQ(m.counts, (std::map<uint64_t, uint64_t>{{1, 100}}));
    ASSERT_EQ(m.shots, 100u);
    ASSERT_EQ(m.seed, 42u);

    QState bell = QState::normalized(3, {{0, 1.0}, {7, 1.0}});
    MeasurementResult b = measure(bell, lay, 2, 7, 10000);
    ASSERT_NEAR(b.probabilities.at(0), 0.5, 1e-12);
    ASSERT_NEAR(b.probabilities.at(1), 0.5, 1e-12);
    uint64_t total = 0;
    for (const auto &[v, c] : b.counts) {
        total += c;
        ASSERT_LT(v, 2u);
        ASSERT_NEAR(static_cast<double>(c) / 10000, 0.5, 0.03);
    }
    ASSERT_EQ(total, 10000u);

    MeasurementResult again = measure(bell, lay, 2, 7, 10000);
    ASSERT_EQ(again.counts, b.counts);
    ASSERT_THROW(measure(bell, lay, 2, 7, 0), ValidationError);
    ASSERT_THROW(measure(bell, lay, 3, 7, 10), DomainError);
}

TEST(quantum, measure_multibit_register) {
    PipelineSpec p({2, 2, 1}, {identity_fn(2), random_fn(2, 1, 4)});
    RegisterLayout lay = layout(p);
    QState s = uniform_superposition(lay, 0, basis_state(lay, {0, 0, 0}));
    QState out = apply(PermUnitary(forward_perm(p)), s);
    MeasurementResult m = measure(out, lay, 1, 3, 4000);
    for (uint64_t v = 0; v < 4; v++) {
        ASSERT_NEAR(m.probabilities.at(v), 0.25, 1e-12);
        ASSERT_NEAR(static_cast<double>(m.counts.at(v)) / 4000, 0.25, 0.03);
    }
}

TEST(quantum, random_state) {
    QState a = random_state(4, 6, 1);
    QState b = random_state(4, 6, 1);
    ASSERT_EQ(a.amplitudes(), b.amplitudes());
    ASSERT_EQ(a.amplitudes().size(), 6u);
    ASSERT_NEAR(a.norm(), 1.0, 1e-12);
    ASSERT_EQ(random_state(2, 100, 1).amplitudes().size(), 4u);
}

TEST(quantum, representation_check) {
    PipelineSpec p = p1();
    GroupClosure g = closure(generators(p));
    RepresentationReport r = representation_check(g, 5, 17);
    ASSERT_TRUE(r.passed());
    ASSERT_TRUE(r.exhaustive);
    ASSERT_EQ(r.pairs_checked, 64u);
    ASSERT_LE(r.max_deviation, 1e-12);

    // U_gamma U_phi = U_{gamma o phi}.
    PermUnitary ug(extend(p, 2)), uf(extend(p, 1));
    for (uint64_t k = 0; k < 5; k++) {
        QState s = random_state(3, 8, k);
        ASSERT_LE(max_distance(apply(ug, apply(uf, s)), apply(gamma_phi(p), s)), 1e-12);
        ASSERT_LE(max_distance(apply(PermUnitary(g.elements[0]), s), s), 1e-12);
    }

    // The three-step group of order 64 is still checked exhaustively; larger groups are sampled.
    PipelineSpec q({1, 1, 1, 1}, {identity_fn(1), identity_fn(1), identity_fn(1)});
    RepresentationReport r3 = representation_check(closure(generators(q)), 2, 5);
    ASSERT_TRUE(r3.passed());
    ASSERT_TRUE(r3.exhaustive);
    ASSERT_EQ(r3.pairs_checked, 64u * 64u);

    PipelineSpec big({2, 1, 1, 1}, {random_fn(2, 1, 8), identity_fn(1), identity_fn(1)});
    GroupClosure gb = closure(generators(big));
    if (gb.order() > kExhaustivePairLimit) {
        RepresentationReport rb = representation_check(gb, 1, 5);
        ASSERT_TRUE(rb.passed());
        ASSERT_FALSE(rb.exhaustive);
        ASSERT_EQ(rb.pairs_checked, kSampledPairs);
    }
}

TEST(quantum, classical_embedding) {
    for (const PipelineSpec &p : oracle::random_two_step(27, 3, 77)) {
        RegisterLayout lay = layout(p);
        PermUnitary u(evaluate_word(generators(p), forward_word(p.step_count()), lay.total_width));
        for (uint64_t x = 0; x <= lay.mask(0); x++) {
            QState out = apply(u, basis_state(lay, {x, 0, 0}));
            MeasurementResult m = measure(out, lay, 2, x, 20);
            uint64_t expected = p.step(2)(p.step(1)(x));
            ASSERT_EQ(m.counts, (std::map<uint64_t, uint64_t>{{expected, 20}}));
        }
    }
}
