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
/// Ancilla interferometry. Every driver adjoins its ancillas after the system
/// register (qubit L+1 and up), prepares |+> with the Hadamard circuit and
/// reads <2 sigma_+> = <sigma_x> + i <sigma_y> from the amplitudes.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qnetsim/circuit.hpp"
#include "qnetsim/compile.hpp"
#include "qnetsim/hubbard.hpp"
#include "qnetsim/spectral.hpp"
#include "qnetsim/state_vector.hpp"

namespace qnetsim {

enum class ControlStyle : std::uint8_t {
    Flags,       // controlled blocks applied by masking amplitudes
    Conjugation, // every gate rewritten as exp(i a G/2) exp(-+i a G Z_c/2)
};

struct MeasurementResult {
    cplx value{};
    bool sampled = false;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    double std_error = 0.0;
};

/// Uncontrolled circuit equal to `c` when `control` is in `state` and to the
/// identity otherwise, built only from Pauli exponentials.
inline Circuit control_by_conjugation(const Circuit &c, int control, int state) {
    if (state != 0 && state != 1) {
        throw std::domain_error("control state must be 0 or 1");
    }
    if (c.support_mask() & qubit_bit(control)) {
        throw std::domain_error("circuit acts on its control qubit");
    }
    // Z_c = +1 for |0>; the active branch must see the full angle.
    const double s = state == 1 ? -1.0 : 1.0;
    const PauliString zc = PauliString::single(control, Pauli::Z);
    Circuit out;
    auto both = [&](const PauliString &g, double a) {
        out.pauli_rotation(g, a / 2.0);
        out.pauli_rotation(g * zc, s * a / 2.0);
    };
    for (const auto &g : c.gates()) {
        if (const auto *r = std::get_if<Rotation>(&g)) {
            both(PauliString::single(r->qubit, to_pauli(r->axis)), -r->angle / 2.0);
        } else if (const auto *z = std::get_if<ZZRotation>(&g)) {
            both(PauliString({{z->j, Pauli::Z}, {z->k, Pauli::Z}}), z->angle);
        } else if (const auto *p = std::get_if<PauliRotation>(&g)) {
            both(p->pauli, p->angle);
        } else {
            throw std::domain_error("conjugation control does not accept nested blocks");
        }
    }
    both(PauliString{}, c.global_phase());
    return out;
}

namespace detail {

inline void check_system_circuit(const Circuit &c, int system_qubits, const char *name) {
    if (c.max_qubit() > system_qubits) {
        throw std::domain_error(std::string(name) + " acts outside the system register");
    }
}

inline void apply_controlled(StateVector &s, const Circuit &c, int control, int state, ControlStyle style) {
    if (style == ControlStyle::Flags) {
        apply(s, c, ControlMask{}.with(control, state));
    } else {
        apply(s, control_by_conjugation(c, control, state));
    }
}

} // namespace detail

/// <psi|U^dag V|psi>: V controlled on the ancilla in |1>, U on |0>.
inline MeasurementResult hadamard_test(const StateVector &psi, const Circuit &u, const Circuit &v,
                                       ControlStyle style = ControlStyle::Flags) {
    const int l = psi.num_qubits();
    detail::check_system_circuit(u, l, "U");
    detail::check_system_circuit(v, l, "V");
    const int a = l + 1;
    StateVector s = psi.with_ancillas(1);
    apply(s, hadamard_circuit(a));
    detail::apply_controlled(s, v, a, 1, style);
    detail::apply_controlled(s, u, a, 0, style);
    return {ancilla_coherence(s, a)};
}

/// One group per string of a Hermitian sum, in canonical order.
inline std::vector<TermGroup> groups_from_sum(const PauliSum &q) {
    if (!q.is_hermitian()) {
        throw std::domain_error("operator is not Hermitian");
    }
    std::vector<TermGroup> groups;
    for (const auto &[p, c] : q.terms()) {
        groups.push_back({p.to_string(), {}, {PauliSum(p, c.real())}});
    }
    return groups;
}

/// Incremental reduced spectrum circuit: each step applies the Trotterized
/// exp(i H Z_a dt/2), so after j steps <2 sigma_+^a> = <phi|exp(-i H j dt)|phi>
/// up to splitting error. Samples every `stride` steps.
inline TimeSeries spectrum_series(const StateVector &phi, const Evolution &evo, std::size_t samples,
                                  std::size_t stride = 1) {
    if (samples == 0 || stride == 0) {
        throw std::domain_error("need at least one sample and a positive stride");
    }
    const int a = phi.num_qubits() + 1;
    const Circuit step = evo.step(PauliString::single(a, Pauli::Z), -0.5);
    StateVector s = phi.with_ancillas(1);
    apply(s, hadamard_circuit(a));
    TimeSeries out{evo.dt * static_cast<double>(stride), {}};
    out.values.reserve(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        if (j > 0) {
            for (std::size_t k = 0; k < stride; ++k) {
                apply(s, step);
            }
        }
        out.values.push_back(ancilla_coherence(s, a));
    }
    return out;
}

/// <phi|exp(-i Q t)|phi> from the reduced circuit with round(t/dt) steps.
inline MeasurementResult spectrum_expectation(const StateVector &phi, const PauliSum &q, double t, double dt,
                                              int order = 2, Engine engine = Engine::Pauli) {
    if (!(dt > 0.0)) {
        throw std::domain_error("Trotter slice must be positive");
    }
    const auto steps = static_cast<std::size_t>(std::llround(std::abs(t) / dt));
    Evolution evo{groups_from_sum(q), steps == 0 ? dt : t / static_cast<double>(steps), order, engine};
    if (steps == 0) {
        return {cplx{1.0}};
    }
    if (evo.dt < 0.0) {
        evo.dt = -evo.dt;
        evo.groups = groups_from_sum(-1.0 * q);
    }
    auto series = spectrum_series(phi, evo, 2, steps);
    return {series.values[1]};
}

/// The same quantity from two controlled evolutions: U = Trotterized
/// exp(+i Q t/2) on |0>, V = Trotterized exp(-i Q t/2) on |1>.
inline MeasurementResult spectrum_two_sided(const StateVector &phi, const Evolution &evo, std::size_t steps,
                                            ControlStyle style = ControlStyle::Flags) {
    Circuit u, v;
    const Circuit us = evo.step(PauliString{}, -0.5);
    const Circuit vs = evo.step(PauliString{}, 0.5);
    for (std::size_t k = 0; k < steps; ++k) {
        u.append(us);
        v.append(vs);
    }
    return hadamard_test(phi, u, v, style);
}

/// Squared-amplitude loading on index ancillas (first listed = most
/// significant bit) by a tree of R_y rotations, each controlled on the bits
/// above it. Amplitudes alpha_i = sqrt(w_i / sum w).
inline Circuit load_amplitudes(const std::vector<double> &weights, const std::vector<int> &ancillas) {
    const std::size_t m = std::size_t{1} << ancillas.size();
    if (weights.size() != m) {
        throw std::domain_error("weight count must be 2^(number of index ancillas)");
    }
    Circuit c;
    for (std::size_t level = 0; level < ancillas.size(); ++level) {
        const std::size_t block = m >> level;
        for (std::size_t prefix = 0; prefix < (std::size_t{1} << level); ++prefix) {
            double w0 = 0.0, w1 = 0.0;
            for (std::size_t i = 0; i < block / 2; ++i) {
                w0 += weights[prefix * block + i];
                w1 += weights[prefix * block + block / 2 + i];
            }
            if (w0 + w1 <= 0.0 || w1 == 0.0) {
                continue;
            }
            const double theta = 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0));
            Circuit rot;
            rot.rotation(ancillas[level], Axis::Y, theta);
            if (level == 0) {
                c.append(rot);
            } else {
                std::vector<Control> ctl;
                for (std::size_t b = 0; b < level; ++b) {
                    ctl.push_back({ancillas[b], static_cast<int>((prefix >> (level - 1 - b)) & 1U)});
                }
                c.controlled(ctl, rot);
            }
        }
    }
    return c;
}

/// sum_i a_i <U_i^dag V_i> from a single circuit with 1 + J ancillas.
inline cplx l_ancilla_measure(const StateVector &psi, std::vector<double> weights,
                              const std::vector<std::pair<Circuit, Circuit>> &pairs) {
    if (weights.size() != pairs.size() || pairs.empty()) {
        throw std::domain_error("need one weight per (U, V) pair");
    }
    double norm = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw std::domain_error("weights must be nonnegative");
        }
        norm += w;
    }
    if (norm == 0.0) {
        throw std::domain_error("all weights are zero");
    }
    const int l = psi.num_qubits();
    std::size_t j = 0;
    while ((std::size_t{1} << j) < pairs.size()) {
        ++j;
    }
    weights.resize(std::size_t{1} << j, 0.0);
    const int a1 = l + 1;
    std::vector<int> index;
    for (std::size_t b = 0; b < j; ++b) {
        index.push_back(l + 2 + static_cast<int>(b));
    }
    StateVector s = psi.with_ancillas(1 + static_cast<int>(j));
    apply(s, hadamard_circuit(a1));
    apply(s, load_amplitudes(weights, index));
    auto controls = [&](std::size_t i, int a1_state) {
        std::vector<Control> ctl{{a1, a1_state}};
        for (std::size_t b = 0; b < j; ++b) {
            ctl.push_back({index[b], static_cast<int>((i >> (j - 1 - b)) & 1U)});
        }
        return ctl;
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        detail::check_system_circuit(pairs[i].first, l, "U_i");
        detail::check_system_circuit(pairs[i].second, l, "V_i");
        Circuit c;
        c.controlled(controls(i, 1), pairs[i].second);
        c.controlled(controls(i, 0), pairs[i].first);
        apply(s, c);
    }
    return norm * ancilla_coherence(s, a1);
}

/// <T^dag A T B> with a single uncontrolled T between controlled B (|1>) and
/// controlled A^dag (|0>).
inline cplx correlation_function(const StateVector &psi, const Circuit &t, const Circuit &a, const Circuit &b,
                                 ControlStyle style = ControlStyle::Flags) {
    const int l = psi.num_qubits();
    detail::check_system_circuit(t, l, "T");
    detail::check_system_circuit(a, l, "A");
    detail::check_system_circuit(b, l, "B");
    const int anc = l + 1;
    StateVector s = psi.with_ancillas(1);
    apply(s, hadamard_circuit(anc));
    detail::apply_controlled(s, b, anc, 1, style);
    apply(s, t);
    detail::apply_controlled(s, a.inverse(), anc, 0, style);
    return ancilla_coherence(s, anc);
}

/// The same correlation through hadamard_test(U = A^dag T, V = T B).
inline cplx correlation_function_unmerged(const StateVector &psi, const Circuit &t, const Circuit &a,
                                          const Circuit &b) {
    Circuit u = t;
    u.append(a.inverse());
    Circuit v = b;
    v.append(t);
    return hadamard_test(psi, u, v).value;
}

/// F(t'_j) = <psi|U(t'_j) O|psi>, t'_j = j stride dt: O controlled on |1>,
/// then inverse Trotter steps accumulate on the |0> branch.
inline TimeSeries mixed_estimator_series(const StateVector &psi, const Circuit &o, const Evolution &evo,
                                         std::size_t samples, std::size_t stride = 1) {
    const int l = psi.num_qubits();
    detail::check_system_circuit(o, l, "O");
    const int a = l + 1;
    const Circuit back = evo.step().inverse();
    const ControlMask on0 = ControlMask{}.with(a, 0);
    StateVector s = psi.with_ancillas(1);
    apply(s, hadamard_circuit(a));
    apply(s, o, ControlMask{}.with(a, 1));
    TimeSeries out{evo.dt * static_cast<double>(stride), {}};
    for (std::size_t j = 0; j < samples; ++j) {
        if (j > 0) {
            for (std::size_t k = 0; k < stride; ++k) {
                apply(s, back, on0);
            }
        }
        out.values.push_back(ancilla_coherence(s, a));
    }
    return out;
}

/// G(t', t'') = <psi|U(t') O U^dag(t'')|psi> on a samples1 x samples2 grid.
inline Grid2 exact_estimator_series(const StateVector &psi, const Circuit &o, const Evolution &evo,
                                    std::size_t samples1, std::size_t samples2, std::size_t stride = 1) {
    const int l = psi.num_qubits();
    detail::check_system_circuit(o, l, "O");
    const int a = l + 1;
    const Circuit back = evo.step().inverse();
    const ControlMask on0 = ControlMask{}.with(a, 0), on1 = ControlMask{}.with(a, 1);
    const double tau = evo.dt * static_cast<double>(stride);
    Grid2 g{tau, tau, samples1, samples2, std::vector<cplx>(samples1 * samples2)};
    StateVector base = psi.with_ancillas(1);
    apply(base, hadamard_circuit(a));
    for (std::size_t b = 0; b < samples2; ++b) {
        if (b > 0) {
            for (std::size_t k = 0; k < stride; ++k) {
                apply(base, back, on1);
            }
        }
        StateVector s = base;
        apply(s, o, on1);
        for (std::size_t j = 0; j < samples1; ++j) {
            if (j > 0) {
                for (std::size_t k = 0; k < stride; ++k) {
                    apply(s, back, on0);
                }
            }
            g.at(j, b) = ancilla_coherence(s, a);
        }
    }
    return g;
}

/// Shot-noise model of reading <2 sigma_+>: independent +-1 outcomes for
/// sigma_x and sigma_y, `shots` each.
inline MeasurementResult sampled_expectation(cplx exact, std::size_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::domain_error("sampling needs at least one shot");
    }
    std::mt19937_64 rng(seed);
    auto draw = [&](double mean) {
        std::bernoulli_distribution up(std::clamp((1.0 + mean) / 2.0, 0.0, 1.0));
        long sum = 0;
        for (std::size_t k = 0; k < shots; ++k) {
            sum += up(rng) ? 1 : -1;
        }
        return static_cast<double>(sum) / static_cast<double>(shots);
    };
    const double x = draw(exact.real());
    const double y = draw(exact.imag());
    const double var = (1.0 - std::min(1.0, exact.real() * exact.real())) +
                       (1.0 - std::min(1.0, exact.imag() * exact.imag()));
    return {cplx{x, y}, true, shots, seed, std::sqrt(var / static_cast<double>(shots))};
}

} // namespace qnetsim
