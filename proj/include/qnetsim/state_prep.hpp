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
/// Slater-determinant preparation through exp(i a^dag M a).
///
/// Orbital convention: exp(i a^dag M a) a^dag_p exp(-i a^dag M a)
/// = sum_q B_{qp} a^dag_q with B = exp(iM), so column j of B holds orbital j.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qnetsim/circuit.hpp"
#include "qnetsim/compile.hpp"
#include "qnetsim/fermion.hpp"
#include "qnetsim/hubbard.hpp"
#include "qnetsim/linalg.hpp"

namespace qnetsim {

/// Hermitian M with exp(iM) = B and eigenphases in (-pi, pi]; eigenvalue -1
/// maps to +pi.
inline MatrixXc logm_unitary(const MatrixXc &b, double tol = 1e-10) {
    if (b.rows() != b.cols()) {
        throw std::domain_error("logm_unitary needs a square matrix");
    }
    if (unitarity_residual(b) > tol) {
        throw std::domain_error("logm_unitary: matrix is not unitary");
    }
    Eigen::ComplexSchur<MatrixXc> schur(b);
    if (schur.info() != Eigen::Success) {
        throw std::runtime_error("Schur decomposition failed");
    }
    const MatrixXc &q = schur.matrixU();
    const MatrixXc &t = schur.matrixT();
    VectorXc phases(b.rows());
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const cplx lambda = t(i, i);
        phases[i] = std::abs(lambda + 1.0) < 1e-10 ? std::numbers::pi : std::arg(lambda);
    }
    MatrixXc m = q * phases.asDiagonal() * q.adjoint();
    return (m + m.adjoint()) / 2.0;
}

/// Appends exp(i angle S) for a sum S of mutually commuting Hermitian strings.
inline void append_commuting_exp(Circuit &c, const PauliSum &s, double angle) {
    const auto terms = s.terms();
    for (std::size_t a = 0; a < terms.size(); ++a) {
        if (std::abs(terms[a].second.imag()) > 1e-14) {
            throw std::domain_error("commuting exponential needs real coefficients");
        }
        for (std::size_t b = a + 1; b < terms.size(); ++b) {
            if (!terms[a].first.commutes_with(terms[b].first)) {
                throw std::domain_error("strings do not commute");
            }
        }
    }
    for (const auto &[p, w] : terms) {
        c.pauli_rotation(p, angle * w.real());
    }
}

/// Appends exp(i (c a^dag_j a_k + conj(c) a^dag_k a_j)), or exp(i c n_j) for
/// j == k. A complex c is handled exactly by conjugating the real hop with
/// exp(i arg(c) n_j).
inline void append_quadratic_exp(Circuit &circ, int j, int k, cplx c) {
    if (j == k) {
        append_commuting_exp(circ, quadratic_to_pauli(j, j, c.real()), 1.0);
        return;
    }
    const double mag = std::abs(c);
    if (mag == 0.0) {
        return;
    }
    const double phi = std::arg(c);
    if (phi != 0.0) {
        append_commuting_exp(circ, number_operator(j), -phi);
    }
    append_commuting_exp(circ, quadratic_to_pauli(j, k, mag), 1.0);
    if (phi != 0.0) {
        append_commuting_exp(circ, number_operator(j), phi);
    }
}

/// One first-order slice per step: diagonal terms, then pairs (j < k) in
/// lexicographic order, each with M / steps.
inline Circuit thouless_circuit(const MatrixXc &m, int steps, Engine engine = Engine::Pauli) {
    if (m.rows() != m.cols() || m.rows() > kMaxStateQubits) {
        throw std::domain_error("generator must be square with at most 30 modes");
    }
    if (max_abs(m - m.adjoint()) > 1e-12) {
        throw std::domain_error("generator is not Hermitian");
    }
    if (steps < 0) {
        throw std::domain_error("negative step count");
    }
    Circuit slice;
    const int n = static_cast<int>(m.rows());
    const double inv = steps > 0 ? 1.0 / steps : 0.0;
    for (int j = 1; j <= n; ++j) {
        if (m(j - 1, j - 1).real() != 0.0) {
            append_quadratic_exp(slice, j, j, m(j - 1, j - 1).real() * inv);
        }
    }
    for (int j = 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            append_quadratic_exp(slice, j, k, m(j - 1, k - 1) * inv);
        }
    }
    Circuit out;
    for (int s = 0; s < steps; ++s) {
        out.append(slice);
    }
    return engine == Engine::Gates ? compile(out) : out;
}

inline int steps_for(double dt1) {
    if (!(dt1 > 0.0)) {
        throw std::domain_error("preparation step must be positive");
    }
    return std::max(1, static_cast<int>(std::lround(1.0 / dt1)));
}

/// Basis state with the listed (1-based) modes occupied.
inline StateVector occupied_state(int modes, const std::vector<int> &occupied) {
    std::uint64_t index = 0;
    for (int s : occupied) {
        if (s < 1 || s > modes) {
            throw std::domain_error("occupied mode outside the register");
        }
        index |= qubit_bit(s);
    }
    return StateVector::basis(modes, index);
}

/// Trotterized exp(i a^dag M a) applied to `boot`; steps = 0 returns boot.
inline StateVector thouless_prepare(const StateVector &boot, const MatrixXc &m, int steps,
                                    Engine engine = Engine::Pauli) {
    if (m.rows() > boot.num_qubits()) {
        throw std::domain_error("generator has more modes than the register");
    }
    StateVector out = boot;
    if (steps == 0) {
        return out;
    }
    apply(out, thouless_circuit(m, steps, engine));
    return out;
}

/// prod_j b^dag_{o_j} |vac> with b^dag_o = sum_p B_{po} a^dag_p; each
/// configuration amplitude is a minor of B (ascending rows, listed columns).
inline StateVector exact_slater_state(const MatrixXc &b, const std::vector<int> &occupied, int modes) {
    if (b.rows() != b.cols() || b.rows() > modes) {
        throw std::domain_error("orbital matrix does not fit the register");
    }
    const int ne = static_cast<int>(occupied.size());
    if (ne > b.rows()) {
        throw std::domain_error("more particles than modes");
    }
    for (int o : occupied) {
        if (o < 1 || o > b.cols()) {
            throw std::domain_error("occupied orbital outside the matrix");
        }
    }
    StateVector out(modes);
    out[0] = 0.0;
    const std::size_t limit = std::size_t{1} << b.rows();
    MatrixXc sub(ne, ne);
    for (std::size_t i = 0; i < limit; ++i) {
        if (std::popcount(i) != ne) {
            continue;
        }
        int r = 0;
        for (int p = 0; p < b.rows(); ++p) {
            if (i & (std::size_t{1} << p)) {
                for (int c = 0; c < ne; ++c) {
                    sub(r, c) = b(p, occupied[static_cast<std::size_t>(c)] - 1);
                }
                ++r;
            }
        }
        out[i] = ne == 0 ? cplx{1.0} : sub.determinant();
    }
    out.normalize();
    return out;
}

/// The worked four-site example: plane-wave orbitals (1/2) e^{i k x_j}.
inline MatrixXc plane_wave_basis4() {
    MatrixXc b(4, 4);
    const cplx i{0.0, 1.0};
    b << 1, 1, 1, 1, 1, i, -1, -i, 1, -1, 1, -1, 1, -i, -1, i;
    return b / 2.0;
}

} // namespace qnetsim
