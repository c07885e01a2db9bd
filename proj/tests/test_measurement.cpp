// Copyright 2026 The qnetsim Authors
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

#include <gtest/gtest.h>

#include "qnetsim/measurement.hpp"
#include "qnetsim/oracle.hpp"
#include "qnetsim/state_prep.hpp"
#include "test_support.hpp"

using namespace qnetsim;

namespace {

cplx direct(const StateVector &psi, const ref::Mat &u, const ref::Mat &v) {
    const ref::Vec x = ref::vec(psi);
    return x.dot(u.adjoint() * v * x);
}

ref::Mat power(const ref::Mat &m, std::size_t k) {
    ref::Mat out = ref::Mat::Identity(m.rows(), m.cols());
    for (std::size_t i = 0; i < k; ++i) out = m * out;
    return out;
}

HubbardSpec small() { return HubbardSpec{2, 1, 1.0, 1.0, 3.0}; }

StateVector half_filled(const HubbardSpec &s) {
    const auto mf = mean_field_solve(s);
    return exact_slater_state(mf.orbitals, mf.occupied_modes, s.num_modes());
}

} // namespace

TEST(HadamardTest, RandomPairsMatchDirectExpectation) {
    std::mt19937_64 rng(71);
    double worst = 0.0;
    for (int k = 0; k < 60; ++k) {
        const int l = 1 + k % 4;
        const auto psi = ref::random_state(l, rng);
        const auto u = ref::random_circuit(l, 6, rng), v = ref::random_circuit(l, 6, rng);
        const cplx want = direct(psi, ref::circuit(u, l), ref::circuit(v, l));
        for (auto style : {ControlStyle::Flags, ControlStyle::Conjugation}) {
            worst = std::max(worst, std::abs(hadamard_test(psi, u, v, style).value - want));
        }
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(HadamardTest, ConjugationControlEqualsControlledBlock) {
    std::mt19937_64 rng(72);
    for (int state : {0, 1}) {
        const auto c = ref::random_circuit(3, 10, rng);
        Circuit block;
        block.controlled({{4, state}}, c);
        EXPECT_LT(ref::max_abs(ref::circuit(control_by_conjugation(c, 4, state), 4) - ref::circuit(block, 4)), 1e-12);
    }
    Circuit touches;
    touches.rotation(2, Axis::X, 0.1);
    EXPECT_THROW(control_by_conjugation(touches, 2, 1), std::domain_error);
}

TEST(SpectrumCircuit, ReducedEqualsTwoSidedForBothOrders) {
    const auto s = small();
    const auto phi = half_filled(s);
    for (int order : {1, 2}) {
        Evolution evo{partition_bonds(s), 0.1, order, Engine::Pauli};
        const auto series = spectrum_series(phi, evo, 8, 1);
        for (std::size_t j : {1U, 3U, 7U}) {
            for (auto style : {ControlStyle::Flags, ControlStyle::Conjugation}) {
                EXPECT_NEAR(std::abs(series.values[j] - spectrum_two_sided(phi, evo, j, style).value), 0.0, 1e-12);
            }
        }
    }
}

TEST(SpectrumCircuit, SymmetricSplittingEqualsForwardHalfSteps) {
    // For the symmetric product, exp(iH Z_a tau/2) Trotterized equals the
    // controlled S(tau/2)^2 against the identity.
    const auto s = small();
    const auto phi = half_filled(s);
    Evolution evo{partition_bonds(s), 0.1, 2, Engine::Pauli};
    const auto series = spectrum_series(phi, evo, 4, 1);
    const ref::Mat half = ref::circuit(trotter_step(s, 0.05, 2), 4);
    for (std::size_t j = 1; j < 4; ++j) {
        const cplx want = direct(phi, ref::identity(4), power(half, 2 * j));
        EXPECT_NEAR(std::abs(series.values[j] - want), 0.0, 1e-12);
    }
}

TEST(SpectrumCircuit, ApproachesExactLoschmidt) {
    const auto s = small();
    const auto phi = half_filled(s);
    Evolution evo{partition_bonds(s), 0.01, 2, Engine::Pauli};
    const auto series = spectrum_series(phi, evo, 16, 10);
    const auto exact = exact_loschmidt(phi, s, 0.1, 16);
    for (std::size_t j = 0; j < 16; ++j) {
        EXPECT_NEAR(std::abs(series.values[j] - exact.values[j]), 0.0, 1e-3);
    }
    Evolution gates = evo;
    gates.engine = Engine::Gates;
    const auto g = spectrum_series(phi, gates, 4, 10);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(std::abs(g.values[j] - series.values[j]), 0.0, 1e-12);
    }
}

TEST(SpectrumCircuit, CommutingOperatorIsExact) {
    PauliSum q;
    q.add(PauliString::parse("Z1 Z2"), 0.8);
    q.add(PauliString::parse("X1 X2"), 0.3);
    std::mt19937_64 rng(73);
    const auto psi = ref::random_state(2, rng);
    const cplx want = direct(psi, ref::identity(2), ref::expi(ref::sum(q, 2), -1.7));
    EXPECT_NEAR(std::abs(spectrum_expectation(psi, q, 1.7, 0.1).value - want), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(spectrum_expectation(psi, q, -1.7, 0.1).value - std::conj(want)), 0.0, 1e-12);
}

TEST(MultiAncilla, LoadAmplitudesProducesTheWeights) {
    const std::vector<double> w{0.1, 0.4, 0.0, 0.5, 0.2, 0.3, 0.25, 0.25};
    double total = 0.0;
    for (double x : w) total += x;
    StateVector s(3);
    for (int q = 1; q <= 3; ++q) apply_rotation(s, q, Axis::X, std::numbers::pi); // all ancillas to |0>
    apply(s, load_amplitudes(w, {1, 2, 3}));
    for (std::size_t i = 0; i < 8; ++i) {
        // index bits: first ancilla most significant, value 1 <-> |1>
        std::uint64_t idx = 0;
        for (int b = 0; b < 3; ++b) {
            const bool one = (i >> (2 - b)) & 1U;
            if (!one) idx |= qubit_bit(b + 1);
        }
        EXPECT_NEAR(std::norm(s[idx]), w[i] / total, 1e-12) << i;
    }
}

TEST(MultiAncilla, WeightedSumOfExpectations) {
    std::mt19937_64 rng(74);
    const auto psi = ref::random_state(2, rng);
    std::vector<std::pair<Circuit, Circuit>> pairs;
    std::vector<double> w{0.5, 1.5, 0.25};
    cplx want{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        pairs.emplace_back(ref::random_circuit(2, 5, rng), ref::random_circuit(2, 5, rng));
        want += w[i] * direct(psi, ref::circuit(pairs[i].first, 2), ref::circuit(pairs[i].second, 2));
    }
    EXPECT_NEAR(std::abs(l_ancilla_measure(psi, w, pairs) - want), 0.0, 1e-12);
    EXPECT_THROW(l_ancilla_measure(psi, {1.0}, pairs), std::domain_error);
}

TEST(Correlations, MergedAndUnmergedAgree) {
    std::mt19937_64 rng(75);
    const auto psi = ref::random_state(3, rng);
    const auto t = ref::random_circuit(3, 8, rng), a = ref::random_circuit(3, 4, rng), b = ref::random_circuit(3, 4, rng);
    const ref::Mat mt = ref::circuit(t, 3), ma = ref::circuit(a, 3), mb = ref::circuit(b, 3);
    const ref::Vec x = ref::vec(psi);
    const cplx want = x.dot(mt.adjoint() * ma * mt * mb * x);
    EXPECT_NEAR(std::abs(correlation_function(psi, t, a, b) - want), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(correlation_function(psi, t, a, b, ControlStyle::Conjugation) - want), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(correlation_function_unmerged(psi, t, a, b) - want), 0.0, 1e-12);
}

TEST(Estimators, MixedAndExactSeriesMatchDense) {
    const auto s = small();
    std::mt19937_64 rng(76);
    const auto psi = ref::random_state(4, rng);
    Evolution evo{partition_bonds(s), 0.1, 2, Engine::Pauli};
    Circuit o;
    o.rotation(1, Axis::Z, 0.4).zz(2, 3, 0.3);
    const ref::Mat step = ref::circuit(evo.step(), 4), mo = ref::circuit(o, 4);
    const ref::Vec x = ref::vec(psi);
    const auto mixed = mixed_estimator_series(psi, o, evo, 4, 2);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(std::abs(mixed.values[j] - x.dot(power(step, 2 * j) * mo * x)), 0.0, 1e-12);
    }
    const auto grid = exact_estimator_series(psi, o, evo, 4, 2, 1);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const cplx want = x.dot(power(step, a) * mo * power(step.adjoint(), b) * x);
            EXPECT_NEAR(std::abs(grid.at(a, b) - want), 0.0, 1e-12);
        }
    }
}

TEST(Sampling, ReproducibleAndUnbiased) {
    const cplx exact{0.3, -0.6};
    const auto a = sampled_expectation(exact, 20000, 99), b = sampled_expectation(exact, 20000, 99);
    EXPECT_EQ(a.value, b.value);
    EXPECT_TRUE(a.sampled);
    EXPECT_LT(std::abs(a.value - exact), 5.0 * a.std_error);
    EXPECT_NEAR(a.std_error, std::sqrt((1 - 0.09 + 1 - 0.36) / 20000.0), 1e-15);
    EXPECT_NE(sampled_expectation(exact, 20000, 100).value, a.value);
    EXPECT_THROW(sampled_expectation(exact, 0, 1), std::domain_error);
}
