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

#include "test_support.hpp"

using namespace qnetsim;

TEST(PauliString, ParseAndPrintRoundTrip) {
    for (const char *text : {"X1 Z2 X3", "-Y4", "+i Z1 Z2", "I", "-i X2"}) {
        const auto p = PauliString::parse(text);
        EXPECT_EQ(PauliString::parse(p.to_string()), p) << text;
    }
    EXPECT_EQ(PauliString::parse("X1 Z3").weight(), 2);
    EXPECT_TRUE(PauliString::parse("I").is_identity());
    EXPECT_THROW(PauliString::parse("X1 Y1"), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("Q2"), std::invalid_argument);
}

TEST(PauliString, SingleQubitProductTable) {
    const auto x = PauliString::single(1, Pauli::X), y = PauliString::single(1, Pauli::Y),
               z = PauliString::single(1, Pauli::Z);
    EXPECT_EQ(x * y, z.with_phase(1));
    EXPECT_EQ(y * z, x.with_phase(1));
    EXPECT_EQ(z * x, y.with_phase(1));
    EXPECT_EQ(y * x, z.with_phase(3));
    EXPECT_TRUE((x * x).is_identity());
    EXPECT_EQ((x * x).phase(), 0);
}

TEST(PauliString, ProductMatchesDenseMatrices) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 300; ++k) {
        auto a = ref::random_string(4, rng, false), b = ref::random_string(4, rng, false);
        EXPECT_LT(ref::max_abs(ref::pauli(a * b, 4) - ref::pauli(a, 4) * ref::pauli(b, 4)), 1e-14);
        const ref::Mat comm = ref::pauli(a, 4) * ref::pauli(b, 4) - ref::pauli(b, 4) * ref::pauli(a, 4);
        EXPECT_EQ(a.commutes_with(b), ref::max_abs(comm) < 1e-12);
    }
}

TEST(PauliString, HermiticityFollowsPhase) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        auto p = ref::random_string(3, rng, false);
        const ref::Mat m = ref::pauli(p, 3);
        EXPECT_EQ(p.is_hermitian(), ref::max_abs(m - m.adjoint()) < 1e-14);
    }
}

TEST(PauliSum, ArithmeticMatchesDense) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    auto random_sum = [&] {
        PauliSum s;
        for (int k = 0; k < 5; ++k) {
            s.add(ref::random_string(3, rng, false), {g(rng), g(rng)});
        }
        return s;
    };
    for (int k = 0; k < 50; ++k) {
        auto a = random_sum(), b = random_sum();
        const ref::Mat ma = ref::sum(a, 3), mb = ref::sum(b, 3);
        EXPECT_LT(ref::max_abs(ref::sum(a * b, 3) - ma * mb), 1e-12);
        EXPECT_LT(ref::max_abs(ref::sum(a + b, 3) - (ma + mb)), 1e-12);
        EXPECT_LT(ref::max_abs(ref::sum(a.adjoint(), 3) - ma.adjoint()), 1e-12);
        EXPECT_LT(ref::max_abs(ref::sum(commutator(a, b), 3) - (ma * mb - mb * ma)), 1e-12);
        EXPECT_TRUE((a + a.adjoint()).is_hermitian());
    }
}

TEST(PauliSum, LaddersAreTextbookSigmaPlusMinus) {
    ref::Mat2 sp;
    sp << 0, 1, 0, 0; // |0><1|
    EXPECT_LT(ref::max_abs(ref::sum(sigma_plus(2), 3) - ref::embed(sp, 2, 3)), 1e-15);
    EXPECT_LT(ref::max_abs(ref::sum(sigma_minus(2), 3) - ref::embed(sp.adjoint(), 2, 3)), 1e-15);
}

TEST(PauliSum, SimplifiedDropsCancelledTerms) {
    PauliSum s;
    s.add(PauliString::parse("X1"), 1.0);
    s.add(PauliString::parse("-X1"), 1.0);
    s.add(PauliString::parse("Z2"), 2.0);
    const auto t = s.simplified();
    EXPECT_EQ(t.size(), 1U);
    EXPECT_EQ(t.coefficient(PauliString::parse("Z2")), cplx(2.0));
}
