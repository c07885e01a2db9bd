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

#include <numbers>

#include "qnetsim/linalg.hpp"
#include "qnetsim/state_prep.hpp"
#include "test_support.hpp"

using namespace qnetsim;

namespace {

ref::Mat random_hermitian(int n, std::mt19937_64 &rng, double scale = 1.0) {
    std::normal_distribution<double> g;
    ref::Mat a(n, n);
    for (auto &x : a.reshaped()) {
        x = {g(rng), g(rng)};
    }
    return scale * (a + a.adjoint()) / 2.0;
}

// exp(i a^dag M a) |boot> by dense exponentiation of the many-body generator.
ref::Vec thouless_dense(const ref::Mat &m, const StateVector &boot) {
    const int l = boot.num_qubits();
    const auto n = static_cast<int>(m.rows());
    ref::Mat h = ref::Mat::Zero(Eigen::Index{1} << l, Eigen::Index{1} << l);
    for (int j = 1; j <= n; ++j) {
        const ref::Mat aj = ref::sum(lower_operator(j), l);
        for (int k = 1; k <= n; ++k) {
            h += m(j - 1, k - 1) * aj.adjoint() * ref::sum(lower_operator(k), l);
        }
    }
    return ref::expi(h, 1.0) * ref::vec(boot);
}

// b^dag_{o_1} ... b^dag_{o_n} |vac> with dense creation operators.
ref::Vec slater_dense(const ref::Mat &b, const std::vector<int> &occ, int l) {
    ref::Vec v = ref::vec(StateVector(l));
    for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
        ref::Mat bd = ref::Mat::Zero(v.size(), v.size());
        for (int p = 1; p <= b.rows(); ++p) {
            bd += b(p - 1, *it - 1) * ref::Mat(ref::sum(lower_operator(p), l).adjoint());
        }
        v = bd * v;
    }
    return v;
}

double abs_overlap(const ref::Vec &a, const ref::Vec &b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); }

} // namespace

TEST(Logm, WorkedExampleGenerator) {
    const double q = std::numbers::pi / 4.0;
    MatrixXc want(4, 4);
    want << 1, -1, -1, -1, -1, 2, 1, 0, -1, 1, 1, 1, -1, 0, 1, 2;
    want *= q;
    EXPECT_LT(max_abs(logm_unitary(plane_wave_basis4()) - want), 1e-9);
}

TEST(Logm, InvertsExpOnRandomUnitaries) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 20; ++k) {
        const ref::Mat u = ref::expi(random_hermitian(5, rng), 1.0);
        const auto m = logm_unitary(u);
        EXPECT_LT(max_abs(m - m.adjoint()), 1e-12);
        EXPECT_LT(max_abs(ref::expi(m, 1.0) - u), 1e-10);
    }
    MatrixXc bad = MatrixXc::Identity(2, 2) * 2.0;
    EXPECT_THROW(logm_unitary(bad), std::domain_error);
}

TEST(Slater, DeterminantAmplitudesMatchCreationOperators) {
    std::mt19937_64 rng(42);
    const ref::Mat b = ref::expi(random_hermitian(4, rng), 1.0);
    for (const auto &occ : {std::vector<int>{1, 2}, std::vector<int>{3, 1}, std::vector<int>{2, 3, 4}}) {
        const auto s = exact_slater_state(b, occ, 4);
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        EXPECT_NEAR(abs_overlap(ref::vec(s), slater_dense(b, occ, 4)), 1.0, 1e-12);
    }
}

TEST(Thouless, TheoremHoldsForRandomGenerators) {
    std::mt19937_64 rng(43);
    const ref::Mat m = random_hermitian(4, rng, 0.6);
    const auto boot = occupied_state(4, {1, 2});
    const ref::Vec rotated = thouless_dense(m, boot);
    const auto exact = exact_slater_state(ref::expi(m, 1.0), {1, 2}, 4);
    EXPECT_NEAR(abs_overlap(rotated, ref::vec(exact)), 1.0, 1e-12);
}

TEST(Thouless, SingleStepPerTermIsExactWhenTermsCommute) {
    MatrixXc m = MatrixXc::Zero(3, 3);
    m(0, 0) = 0.4;
    m(1, 1) = -1.2;
    m(0, 2) = m(2, 0) = 0.0;
    const auto boot = occupied_state(3, {1, 2});
    const auto s = thouless_prepare(boot, m, 1);
    EXPECT_NEAR(abs_overlap(ref::vec(s), thouless_dense(m, boot)), 1.0, 1e-13);
    m(0, 1) = cplx{0.3, 0.4};
    m(1, 0) = std::conj(m(0, 1));
    MatrixXc hop = MatrixXc::Zero(3, 3);
    hop(0, 1) = m(0, 1);
    hop(1, 0) = m(1, 0);
    const auto boot2 = occupied_state(3, {1});
    EXPECT_NEAR(abs_overlap(ref::vec(thouless_prepare(boot2, hop, 1)), thouless_dense(hop, boot2)), 1.0, 1e-13);
}

TEST(Thouless, TrotterizedPreparationConverges) {
    const auto b = plane_wave_basis4();
    const auto m = logm_unitary(b);
    const auto boot = occupied_state(4, {1, 2});
    const auto exact = exact_slater_state(b, {1, 2}, 4);
    double prev = 1.0;
    for (double dt : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        const auto s = thouless_prepare(boot, m, steps_for(dt));
        const double deficit = 1.0 - std::abs(inner_product(exact, s));
        EXPECT_LT(deficit, prev);
        prev = deficit;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Thouless, GateEngineMatchesPauliEngine) {
    std::mt19937_64 rng(44);
    const ref::Mat m = random_hermitian(4, rng, 0.5);
    const auto boot = occupied_state(4, {2, 4});
    const auto a = thouless_prepare(boot, m, 3, Engine::Pauli);
    const auto b = thouless_prepare(boot, m, 3, Engine::Gates);
    EXPECT_LT((ref::vec(a) - ref::vec(b)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Thouless, StepCountFromSliceWidth) {
    EXPECT_EQ(steps_for(0.05), 20);
    EXPECT_EQ(steps_for(0.01), 100);
    EXPECT_EQ(steps_for(5.0), 1);
    EXPECT_THROW(steps_for(0.0), std::domain_error);
    EXPECT_EQ(thouless_prepare(occupied_state(2, {1}), MatrixXc::Identity(2, 2), 0)[1], cplx(1.0));
}
