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

#include "qnetsim/fermion.hpp"
#include "test_support.hpp"

using namespace qnetsim;

class JordanWigner : public ::testing::TestWithParam<int> {};

TEST_P(JordanWigner, CanonicalAnticommutators) {
    const int n = GetParam();
    for (int j = 1; j <= n; ++j) {
        const ref::Mat aj = ref::sum(lower_operator(j), n);
        for (int k = 1; k <= n; ++k) {
            const ref::Mat ak = ref::sum(lower_operator(k), n);
            const ref::Mat ad = aj.adjoint();
            const ref::Mat delta = j == k ? ref::identity(n) : ref::Mat::Zero(aj.rows(), aj.cols());
            EXPECT_LT(ref::max_abs(ad * ak + ak * ad - delta), 1e-12) << j << "," << k;
            EXPECT_LT(ref::max_abs(aj * ak + ak * aj), 1e-12) << j << "," << k;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, JordanWigner, ::testing::Values(1, 2, 3, 4));

TEST(JordanWignerMap, RaiseIsAdjointAndNumberIsProduct) {
    for (int s = 1; s <= 3; ++s) {
        const ref::Mat a = ref::sum(lower_operator(s), 3);
        EXPECT_LT(ref::max_abs(ref::sum(raise_operator(s), 3) - a.adjoint()), 1e-14);
        EXPECT_LT(ref::max_abs(ref::sum(number_operator(s), 3) - a.adjoint() * a), 1e-14);
    }
}

TEST(JordanWignerMap, SignCountsOccupiedModesBelow) {
    // a_S^dagger on an occupation basis state: amplitude = (-1)^{occupied below S}.
    for (std::uint64_t occ = 0; occ < 16; ++occ) {
        for (int s = 1; s <= 4; ++s) {
            if (occ & qubit_bit(s)) {
                continue;
            }
            auto st = StateVector::basis(4, occ);
            st = apply_sum(raise_operator(s), st);
            EXPECT_NEAR(st[occ | qubit_bit(s)].real(), fermion_sign(occ, s), 1e-14);
        }
    }
    EXPECT_EQ(fermion_sign(0b0101, 4), 1);
    EXPECT_EQ(fermion_sign(0b0001, 3), -1);
}

TEST(JordanWignerMap, QuadraticTerms) {
    const cplx c{0.3, -0.7};
    const ref::Mat a1 = ref::sum(lower_operator(1), 3), a3 = ref::sum(lower_operator(3), 3);
    const ref::Mat want = c * a1.adjoint() * a3 + std::conj(c) * a3.adjoint() * a1;
    const auto q = quadratic_to_pauli(1, 3, c);
    EXPECT_TRUE(q.is_hermitian());
    EXPECT_LT(ref::max_abs(ref::sum(q, 3) - want), 1e-14);
    EXPECT_LT(ref::max_abs(ref::sum(quadratic_to_pauli(2, 2, 1.5), 3) - 1.5 * ref::sum(number_operator(2), 3)), 1e-14);
    EXPECT_THROW(quadratic_to_pauli(2, 2, cplx{1.0, 0.5}), std::domain_error);
}

TEST(JordanWignerMap, FermionTermIsOrderedProduct) {
    const FermionTerm t{2.0, {{1, true}, {3, true}, {2, false}, {4, false}}};
    const auto m = [](int s, bool d) {
        ref::Mat a = ref::sum(lower_operator(s), 4);
        return d ? ref::Mat(a.adjoint()) : a;
    };
    const ref::Mat want = 2.0 * m(1, true) * m(3, true) * m(2, false) * m(4, false);
    EXPECT_LT(ref::max_abs(ref::sum(t.to_pauli(), 4) - want), 1e-14);
}

TEST(LatticeLabels, ChainIndexRoundTrip) {
    const int nx = 4, ny = 2;
    for (int s = 1; s <= 2 * nx * ny; ++s) {
        EXPECT_EQ(site_to_chain(chain_to_site(s, nx, ny), nx, ny), s);
    }
    EXPECT_EQ(site_to_chain({1, 1, Spin::Up}, nx, ny), 1);
    EXPECT_EQ(site_to_chain({2, 1, Spin::Up}, nx, ny), 2);
    EXPECT_EQ(site_to_chain({1, 2, Spin::Up}, nx, ny), 5);
    EXPECT_EQ(site_to_chain({1, 1, Spin::Down}, nx, ny), 9);
}

TEST(LatticeLabels, VacuumIsEmpty) {
    const auto v = vacuum_state(4);
    for (int s = 1; s <= 4; ++s) {
        EXPECT_NEAR(expectation(v, number_operator(s)).real(), 0.0, 1e-15);
    }
}
