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

#pragma once

/// @file
/// Jordan-Wigner encoding of lattice fermions on a qubit chain.
///
/// Mode S is qubit S. An occupied mode is a set bit (qubit in |0>), so the
/// vacuum is I = 0 and a_S = (-1)^{S-1} Z_1 ... Z_{S-1} sigma_-^S.

#include <string>
#include <utility>
#include <vector>

#include "qnetsim/pauli.hpp"
#include "qnetsim/state_vector.hpp"

namespace qnetsim {

enum class Spin : std::uint8_t { Up, Down };

/// Site (j, k) with 1 <= j <= nx, 1 <= k <= ny, and a spin projection.
struct LatticeLabel {
    int j;
    int k;
    Spin spin;

    bool operator==(const LatticeLabel &) const = default;
};

/// S = j + (k-1) nx + (1/2 - sigma) nx ny; spin-up modes come first.
inline int site_to_chain(const LatticeLabel &l, int nx, int ny) {
    if (nx < 1 || ny < 1) {
        throw std::domain_error("lattice dimensions must be positive");
    }
    if (l.j < 1 || l.j > nx || l.k < 1 || l.k > ny) {
        throw std::domain_error("site (" + std::to_string(l.j) + "," + std::to_string(l.k) + ") outside the " +
                                std::to_string(nx) + "x" + std::to_string(ny) + " lattice");
    }
    return l.j + (l.k - 1) * nx + (l.spin == Spin::Down ? nx * ny : 0);
}

inline LatticeLabel chain_to_site(int s, int nx, int ny) {
    const int ns = nx * ny;
    if (s < 1 || s > 2 * ns) {
        throw std::domain_error("chain index " + std::to_string(s) + " outside 1.." + std::to_string(2 * ns));
    }
    Spin spin = s > ns ? Spin::Down : Spin::Up;
    int r = (s - 1) % ns;
    return {r % nx + 1, r / nx + 1, spin};
}

/// JW image of a_S.
inline PauliSum lower_operator(int s) {
    qubit_bit(s);
    PauliString string;
    for (int q = 1; q < s; ++q) {
        string.set(q, Pauli::Z);
    }
    const double sign = (s - 1) % 2 == 0 ? 1.0 : -1.0;
    PauliSum out;
    PauliString x = string, y = string;
    x.set(s, Pauli::X);
    y.set(s, Pauli::Y);
    out.add(x, 0.5 * sign);
    out.add(y, cplx{0.0, -0.5 * sign});
    return out;
}

/// JW image of a_S^dagger.
inline PauliSum raise_operator(int s) { return lower_operator(s).adjoint(); }

/// n_S = (1 + Z_S)/2.
inline PauliSum number_operator(int s) {
    PauliSum n = PauliSum::identity(0.5);
    n.add(PauliString::single(s, Pauli::Z), 0.5);
    return n;
}

/// c a_j^dagger a_k + conj(c) a_k^dagger a_j for j != k; c n_j for j == k,
/// where c must then be real for the result to be Hermitian.
inline PauliSum quadratic_to_pauli(int j, int k, cplx c) {
    if (j == k) {
        if (std::abs(c.imag()) > 1e-14) {
            throw std::domain_error("diagonal quadratic term needs a real coefficient");
        }
        return c.real() * number_operator(j);
    }
    PauliSum hop = raise_operator(j) * lower_operator(k);
    PauliSum out = c * hop + std::conj(c) * hop.adjoint();
    return out.simplified();
}

/// coefficient * f_1 f_2 ... f_n, with f = a_S or a_S^dagger.
struct FermionTerm {
    cplx coefficient{1.0};
    std::vector<std::pair<int, bool>> factors; // (S, dagger)

    PauliSum to_pauli() const {
        PauliSum out = PauliSum::identity(coefficient);
        for (const auto &[s, dagger] : factors) {
            out = out * (dagger ? raise_operator(s) : lower_operator(s));
        }
        return out.simplified();
    }
};

/// All qubits in |1>: the fermionic vacuum, I = 0.
inline StateVector vacuum_state(int modes) { return StateVector(modes); }

/// Sign (-1)^{number of occupied modes below S} picked up by a_S or a_S^dagger.
inline int fermion_sign(std::uint64_t occupation, int s) {
    return (std::popcount(occupation & (qubit_bit(s) - 1)) & 1) ? -1 : 1;
}

} // namespace qnetsim
