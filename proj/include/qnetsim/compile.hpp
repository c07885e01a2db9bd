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
/// Lowering of Pauli exponentials, controlled evolutions and a few named
/// gates onto {R_mu(theta), exp(i omega Z_j Z_k)} plus a tracked phase.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qnetsim/circuit.hpp"
#include "qnetsim/pauli.hpp"

namespace qnetsim {

namespace detail {

/// exp(i phi G) for a single-qubit or ZZ generator, as an elementary gate.
struct Conjugator {
    PauliString generator;
    double phi;
};

inline void append_conjugator(Circuit &c, const Conjugator &g) {
    auto sup = g.generator.support();
    if (sup.size() == 2) {
        c.zz(sup[0], sup[1], g.phi);
    } else {
        c.rotation(sup[0], Axis(static_cast<int>(g.generator.at(sup[0])) - 1), -2.0 * g.phi);
    }
}

} // namespace detail

/// Elementary circuit for exp(i theta P), P a Hermitian Pauli string.
///
/// Non-pivot X/Y factors are rotated to Z, the lowest qubit (pivot) is turned
/// to X or Y, and a ZZ ladder folds every remaining Z onto the pivot. The core
/// is a single rotation; the conjugating prefix is undone afterwards.
inline Circuit decompose_exponential(const PauliString &p, double theta) {
    if (!p.is_hermitian()) {
        throw std::domain_error("exp(i theta P) needs a Hermitian Pauli string");
    }
    Circuit out;
    if (p.is_identity()) {
        out.add_phase(p.phase() == 0 ? theta : -theta);
        return out;
    }
    auto sup = p.support();
    const int pivot = sup.front();
    const std::size_t m = sup.size();
    constexpr double q = std::numbers::pi / 4.0;

    std::vector<detail::Conjugator> prefix;
    for (std::size_t r = 1; r < m; ++r) {
        switch (p.at(sup[r])) {
        case Pauli::X: prefix.push_back({PauliString::single(sup[r], Pauli::Y), q}); break;
        case Pauli::Y: prefix.push_back({PauliString::single(sup[r], Pauli::X), -q}); break;
        default: break;
        }
    }
    if (m >= 2 && p.at(pivot) == Pauli::Z) {
        prefix.push_back({PauliString::single(pivot, Pauli::Y), -q});
    }
    for (std::size_t r = 1; r < m; ++r) {
        prefix.push_back({PauliString({{pivot, Pauli::Z}, {sup[r], Pauli::Z}}), q});
    }

    // Track O -> g O g^dagger; for anticommuting G and phi = +-pi/4 this is +-i G O.
    PauliString o = p;
    for (const auto &g : prefix) {
        if (g.generator.commutes_with(o)) {
            throw std::logic_error("conjugation ladder met a commuting generator");
        }
        o = PauliString::from_masks(0, 0, g.phi > 0 ? 1 : 3) * g.generator * o;
    }
    if (o.weight() != 1 || o.at(pivot) == Pauli::I || !o.is_hermitian()) {
        throw std::logic_error("conjugation ladder did not reduce to the pivot");
    }
    const double sign = o.phase() == 0 ? 1.0 : -1.0;
    const Axis core = Axis(static_cast<int>(o.at(pivot)) - 1);

    for (const auto &g : prefix) {
        detail::append_conjugator(out, g);
    }
    out.rotation(pivot, core, -2.0 * sign * theta);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        detail::append_conjugator(out, {it->generator, -it->phi});
    }
    return out;
}

/// Lowers every Pauli exponential (also inside controlled blocks).
inline Circuit compile(const Circuit &c) {
    Circuit out;
    out.add_phase(c.global_phase());
    for (const auto &g : c.gates()) {
        if (const auto *pr = std::get_if<PauliRotation>(&g)) {
            out.append(decompose_exponential(pr->pauli, pr->angle));
        } else if (const auto *cb = std::get_if<ControlledBlock>(&g)) {
            out.controlled(cb->controls, compile(*cb->body));
        } else {
            out.append(g);
        }
    }
    return out;
}

using Matrix2c = std::array<std::array<cplx, 2>, 2>;

struct EulerAngles {
    double alpha;
    double beta;
    double gamma;
    double delta;
};

/// V = e^{i alpha} R_z(beta) R_y(gamma) R_z(delta), matrices in the (|0>, |1>) basis.
inline EulerAngles euler_decompose(const Matrix2c &v, double tol = 1e-10) {
    const cplx a = v[0][0], b = v[0][1], c = v[1][0], d = v[1][1];
    const double r00 = std::norm(a) + std::norm(c) - 1.0;
    const double r11 = std::norm(b) + std::norm(d) - 1.0;
    const cplx r01 = std::conj(a) * b + std::conj(c) * d;
    if (std::abs(r00) > tol || std::abs(r11) > tol || std::abs(r01) > tol) {
        throw std::domain_error("euler_decompose: matrix is not unitary");
    }
    const double alpha = std::arg(a * d - b * c) / 2.0;
    const cplx ph = std::polar(1.0, -alpha);
    const cplx w00 = ph * a, w10 = ph * c, w11 = ph * d;
    const double gamma = 2.0 * std::atan2(std::abs(w10), std::abs(w00));
    double sum = 0.0, diff = 0.0;
    if (std::abs(w10) < 1e-14) {
        sum = 2.0 * std::arg(w11);
    } else if (std::abs(w00) < 1e-14) {
        diff = 2.0 * std::arg(w10);
    } else {
        sum = 2.0 * std::arg(w11);
        diff = 2.0 * std::arg(w10);
    }
    return {alpha, (sum + diff) / 2.0, gamma, (sum - diff) / 2.0};
}

inline Matrix2c euler_matrix(const EulerAngles &e) {
    const cplx g = std::polar(1.0, e.alpha);
    const double c = std::cos(e.gamma / 2.0), s = std::sin(e.gamma / 2.0);
    const double hs = (e.beta + e.delta) / 2.0, hd = (e.beta - e.delta) / 2.0;
    return {{{g * std::polar(c, -hs), -g * std::polar(s, -hd)}, {g * std::polar(s, hd), g * std::polar(c, hs)}}};
}

/// Applied order R_z(delta), R_y(gamma), R_z(beta), then the phase.
inline Circuit euler_circuit(int qubit, const Matrix2c &v) {
    auto e = euler_decompose(v);
    Circuit c;
    c.rotation(qubit, Axis::Z, e.delta).rotation(qubit, Axis::Y, e.gamma).rotation(qubit, Axis::Z, e.beta);
    c.add_phase(e.alpha);
    return c;
}

/// exp(-i Q t) on the system when `ancilla` is in `control_state`, identity
/// otherwise, through U(t/2) U(t/2)^{-+Z_a}. Each of `steps` slices applies,
/// term by term, exp(-i q P dt/2) exp(+-i q P Z_a dt/2). The result holds
/// Pauli exponentials; pass it through compile() for elementary gates.
inline Circuit controlled_exponential(const PauliSum &q, double t, int ancilla, int control_state, int steps = 1) {
    if (!q.is_hermitian()) {
        throw std::domain_error("controlled_exponential needs a Hermitian operator");
    }
    if (control_state != 0 && control_state != 1) {
        throw std::domain_error("control state must be 0 or 1");
    }
    if (steps < 1) {
        throw std::domain_error("controlled_exponential needs at least one step");
    }
    const std::uint64_t abit = qubit_bit(ancilla);
    if (q.support_mask() & abit) {
        throw std::domain_error("ancilla lies inside the operator support");
    }
    const double sz = control_state == 1 ? 1.0 : -1.0;
    const double dt = t / steps;
    const auto terms = q.terms();
    const PauliString za = PauliString::single(ancilla, Pauli::Z);
    Circuit c;
    for (int s = 0; s < steps; ++s) {
        for (const auto &[p, coef] : terms) {
            const double w = coef.real();
            c.pauli_rotation(p, -w * dt / 2.0);
            c.pauli_rotation(p * za, sz * w * dt / 2.0);
        }
    }
    return c;
}

/// C-NOT with `control` as control: R_y(pi/2), ZZ(-pi/4), R_y(-pi/2), R_x(pi/2)
/// on the target side, R_z(pi/2) on the control and a phase pi/4.
inline Circuit cnot_circuit(int control, int target) {
    if (control == target) {
        throw std::domain_error("C-NOT needs distinct control and target");
    }
    constexpr double pi = std::numbers::pi;
    Circuit c;
    c.rotation(target, Axis::Y, pi / 2.0)
        .zz(control, target, -pi / 4.0)
        .rotation(target, Axis::Y, -pi / 2.0)
        .rotation(target, Axis::X, pi / 2.0)
        .rotation(control, Axis::Z, pi / 2.0)
        .add_phase(pi / 4.0);
    return c;
}

/// H = i exp(-i pi/2 sigma_x) exp(-i pi/4 sigma_y).
inline Circuit hadamard_circuit(int qubit) {
    constexpr double pi = std::numbers::pi;
    Circuit c;
    c.rotation(qubit, Axis::Y, pi / 2.0).rotation(qubit, Axis::X, pi).add_phase(pi / 2.0);
    return c;
}

} // namespace qnetsim
