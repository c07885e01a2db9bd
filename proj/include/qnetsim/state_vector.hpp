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
/// Dense state vector of an L-qubit register and the elementary gate kernels.
///
/// Basis convention (shared by every module):
///   * qubits carry labels 1..L and qubit q is bit q-1 of the basis index I,
///     so I = sum_q n(q) 2^{q-1};
///   * the occupancy n(q) is 1 when qubit q is in |0> ("up") and 0 when it is
///     in |1> ("down"). A SET bit therefore means the qubit is in |0>.
/// This inverts the usual computational-basis reading. The all-zero index I=0
/// is the spin vacuum |11...1>, and sigma_+ = |0><1| raises a bit from 0 to 1.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnetsim/pauli.hpp"

namespace qnetsim {

/// Rotation axis of R_mu(theta) = exp(-i theta/2 sigma_mu).
enum class Axis : std::uint8_t { X, Y, Z };

inline char axis_char(Axis a) { return "xyz"[static_cast<int>(a)]; }

inline Pauli to_pauli(Axis a) {
    switch (a) {
    case Axis::X: return Pauli::X;
    case Axis::Y: return Pauli::Y;
    default: return Pauli::Z;
    }
}

/// Largest register the dense representation accepts.
inline constexpr int kMaxStateQubits = 30;

/// Restricts a kernel to basis indices with (I & mask) == value. Built from
/// qubit states, so a control on |0> requires the bit to be set.
struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;

    bool accepts(std::uint64_t index) const { return (index & mask) == value; }

    /// Adds the requirement that `qubit` is in computational state `state` (0 or 1).
    ControlMask with(int qubit, int state) const {
        if (state != 0 && state != 1) {
            throw std::domain_error("control state must be 0 or 1");
        }
        auto b = qubit_bit(qubit);
        ControlMask out = *this;
        if ((mask & b) && ((value & b) != (state == 0 ? b : 0))) {
            throw std::domain_error("contradictory controls on qubit " + std::to_string(qubit));
        }
        out.mask |= b;
        out.value = (out.value & ~b) | (state == 0 ? b : 0);
        return out;
    }
};

class StateVector {
  public:
    /// The spin vacuum (all qubits in |1>, I = 0).
    explicit StateVector(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
            throw std::domain_error("qubit count " + std::to_string(num_qubits) + " outside 1.." +
                                    std::to_string(kMaxStateQubits));
        }
        amplitudes_.assign(std::size_t{1} << num_qubits, cplx{});
        amplitudes_[0] = 1.0;
    }

    StateVector(int num_qubits, std::vector<cplx> amplitudes) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
            throw std::domain_error("qubit count outside supported range");
        }
        if (amplitudes.size() != (std::size_t{1} << num_qubits)) {
            throw std::domain_error("amplitude count does not match 2^L");
        }
        amplitudes_ = std::move(amplitudes);
    }

    static StateVector basis(int num_qubits, std::uint64_t index) {
        StateVector s(num_qubits);
        if (index >= s.size()) {
            throw std::domain_error("basis index " + std::to_string(index) + " out of range for " +
                                    std::to_string(num_qubits) + " qubits");
        }
        s.amplitudes_[0] = 0.0;
        s.amplitudes_[index] = 1.0;
        return s;
    }

    /// Basis state from per-qubit occupancies n(1)..n(L) (1 = |0> = up).
    static StateVector from_occupancies(std::span<const int> occupancy) {
        return basis(static_cast<int>(occupancy.size()), index_from_occupancies(occupancy));
    }

    static std::uint64_t index_from_occupancies(std::span<const int> occupancy) {
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < occupancy.size(); ++i) {
            if (occupancy[i] != 0 && occupancy[i] != 1) {
                throw std::domain_error("occupancy must be 0 or 1");
            }
            index |= static_cast<std::uint64_t>(occupancy[i]) << i;
        }
        return index;
    }

    static std::vector<int> occupancies_from_index(std::uint64_t index, int num_qubits) {
        std::vector<int> n(static_cast<std::size_t>(num_qubits));
        for (int q = 0; q < num_qubits; ++q) {
            n[static_cast<std::size_t>(q)] = static_cast<int>((index >> q) & 1U);
        }
        return n;
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }

    std::span<const cplx> amplitudes() const { return amplitudes_; }
    std::span<cplx> amplitudes() { return amplitudes_; }

    cplx operator[](std::size_t i) const { return amplitudes_[i]; }
    cplx &operator[](std::size_t i) { return amplitudes_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    void normalize() {
        double n = norm();
        if (n == 0.0) {
            throw std::domain_error("cannot normalize the zero vector");
        }
        for (auto &a : amplitudes_) {
            a /= n;
        }
    }

    void check_qubit(int qubit) const {
        if (qubit < 1 || qubit > num_qubits_) {
            throw std::domain_error("qubit " + std::to_string(qubit) + " outside 1.." +
                                    std::to_string(num_qubits_));
        }
    }

    /// This state tensored with `count` extra qubits in |0>, labelled L+1...
    StateVector with_ancillas(int count) const {
        StateVector out(num_qubits_ + count);
        out.amplitudes_[0] = 0.0;
        std::uint64_t high = ((std::uint64_t{1} << count) - 1) << num_qubits_;
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            out.amplitudes_[i | high] = amplitudes_[i];
        }
        return out;
    }

  private:
    int num_qubits_;
    std::vector<cplx> amplitudes_;
};

namespace detail {

inline void check_control(const StateVector &s, const ControlMask &c) {
    if (c.mask >> s.num_qubits() != 0) {
        throw std::domain_error("control qubit outside the register");
    }
}

/// Coefficient c(I) with P|I> = c(I)|I ^ x> for the unphased string P.
inline cplx pauli_coefficient(std::uint64_t index, std::uint64_t z_mask, int num_y) {
    int negatives = std::popcount(z_mask & ~index);
    return i_pow(num_y + 2 * (negatives & 1));
}

} // namespace detail

/// Applies R_axis(theta) = exp(-i theta/2 sigma_axis) to qubit q.
inline void apply_rotation(StateVector &s, int qubit, Axis axis, double theta, ControlMask ctrl = {}) {
    s.check_qubit(qubit);
    detail::check_control(s, ctrl);
    if (ctrl.mask & qubit_bit(qubit)) {
        throw std::domain_error("rotation target is also a control");
    }
    const std::uint64_t bit = qubit_bit(qubit);
    const double c = std::cos(theta / 2.0);
    const double sn = std::sin(theta / 2.0);
    // Matrix in the (|0>, |1>) basis; |0> is the amplitude with the bit set.
    cplx m00, m01, m10, m11;
    switch (axis) {
    case Axis::X: m00 = c; m01 = {0.0, -sn}; m10 = {0.0, -sn}; m11 = c; break;
    case Axis::Y: m00 = c; m01 = -sn; m10 = sn; m11 = c; break;
    default: m00 = {c, -sn}; m01 = 0.0; m10 = 0.0; m11 = {c, sn}; break;
    }
    auto amps = s.amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) || !ctrl.accepts(i)) {
            continue;
        }
        cplx &a1 = amps[i];
        cplx &a0 = amps[i | bit];
        const cplx n0 = m00 * a0 + m01 * a1;
        const cplx n1 = m10 * a0 + m11 * a1;
        a0 = n0;
        a1 = n1;
    }
}

/// Applies exp(i omega sigma_z^j sigma_z^k).
inline void apply_zz(StateVector &s, int j, int k, double omega, ControlMask ctrl = {}) {
    s.check_qubit(j);
    s.check_qubit(k);
    if (j == k) {
        throw std::domain_error("zz interaction needs two distinct qubits");
    }
    detail::check_control(s, ctrl);
    const std::uint64_t bj = qubit_bit(j);
    const std::uint64_t bk = qubit_bit(k);
    const cplx same = std::polar(1.0, omega);
    const cplx differ = std::polar(1.0, -omega);
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!ctrl.accepts(i)) {
            continue;
        }
        amps[i] *= (((i & bj) != 0) == ((i & bk) != 0)) ? same : differ;
    }
}

/// Multiplies the (controlled) amplitudes by exp(i alpha).
inline void apply_phase(StateVector &s, double alpha, ControlMask ctrl = {}) {
    detail::check_control(s, ctrl);
    const cplx f = std::polar(1.0, alpha);
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (ctrl.accepts(i)) {
            amps[i] *= f;
        }
    }
}

/// Multiplies the state by the Pauli string (including its prefactor).
inline void apply_pauli(StateVector &s, const PauliString &p, ControlMask ctrl = {}) {
    if (p.max_qubit() > s.num_qubits()) {
        throw std::domain_error("Pauli string acts outside the register");
    }
    detail::check_control(s, ctrl);
    if (p.x_mask() & ctrl.mask) {
        throw std::domain_error("Pauli string flips a control qubit");
    }
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const int ny = std::popcount(x & z);
    const cplx pre = p.phase_factor();
    auto amps = s.amplitudes();
    std::vector<cplx> out(amps.begin(), amps.end());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (ctrl.accepts(i)) {
            out[i ^ x] = pre * detail::pauli_coefficient(i, z, ny) * amps[i];
        }
    }
    std::copy(out.begin(), out.end(), amps.begin());
}

/// Applies exp(i theta P) for a Hermitian Pauli string P, in place over
/// amplitude pairs (I, I ^ x).
inline void apply_pauli_exp(StateVector &s, const PauliString &p, double theta, ControlMask ctrl = {}) {
    if (!p.is_hermitian()) {
        throw std::domain_error("exp(i theta P) needs a Hermitian Pauli string");
    }
    if (p.max_qubit() > s.num_qubits()) {
        throw std::domain_error("Pauli string acts outside the register");
    }
    detail::check_control(s, ctrl);
    if (p.support_mask() & ctrl.mask) {
        throw std::domain_error("Pauli exponential overlaps a control qubit");
    }
    const double sign = p.phase() == 0 ? 1.0 : -1.0;
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const int ny = std::popcount(x & z);
    auto amps = s.amplitudes();
    const std::size_t dim = amps.size();
    if (x == 0) {
        const cplx plus = std::polar(1.0, sign * theta);
        const cplx minus = std::polar(1.0, -sign * theta);
        for (std::size_t i = 0; i < dim; ++i) {
            if (ctrl.accepts(i)) {
                amps[i] *= (std::popcount(z & ~i) & 1) ? minus : plus;
            }
        }
        return;
    }
    const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(x));
    const double c = std::cos(theta);
    const cplx is{0.0, sign * std::sin(theta)};
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & pivot) || !ctrl.accepts(i)) {
            continue;
        }
        const std::size_t j = i ^ x;
        const cplx a = amps[i];
        const cplx b = amps[j];
        amps[i] = c * a + is * detail::pauli_coefficient(j, z, ny) * b;
        amps[j] = c * b + is * detail::pauli_coefficient(i, z, ny) * a;
    }
}

/// <a|b>, conjugating a.
inline cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::domain_error("inner product of registers with different sizes");
    }
    cplx sum{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

inline cplx expectation(const StateVector &s, const PauliString &p) {
    if (p.max_qubit() > s.num_qubits()) {
        throw std::domain_error("Pauli string acts outside the register");
    }
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const int ny = std::popcount(x & z);
    cplx sum{};
    for (std::size_t i = 0; i < s.size(); ++i) {
        sum += std::conj(s[i ^ x]) * detail::pauli_coefficient(i, z, ny) * s[i];
    }
    return p.phase_factor() * sum;
}

/// <s|P|s> for a Pauli sum, summed in canonical term order.
inline cplx expectation(const StateVector &s, const PauliSum &op) {
    cplx sum{};
    for (const auto &[p, c] : op.terms()) {
        sum += c * expectation(s, p);
    }
    return sum;
}

/// op|s> as a new (unnormalized) vector.
inline StateVector apply_sum(const PauliSum &op, const StateVector &s) {
    std::vector<cplx> out(s.size(), cplx{});
    for (const auto &[p, c] : op.terms()) {
        if (p.max_qubit() > s.num_qubits()) {
            throw std::domain_error("Pauli sum acts outside the register");
        }
        const std::uint64_t x = p.x_mask();
        const std::uint64_t z = p.z_mask();
        const int ny = std::popcount(x & z);
        for (std::size_t i = 0; i < s.size(); ++i) {
            out[i ^ x] += c * detail::pauli_coefficient(i, z, ny) * s[i];
        }
    }
    return StateVector(s.num_qubits(), std::move(out));
}

/// <2 sigma_+^q> = <sigma_x^q> + i <sigma_y^q>, read directly from amplitudes.
inline cplx ancilla_coherence(const StateVector &s, int qubit) {
    s.check_qubit(qubit);
    const std::uint64_t bit = qubit_bit(qubit);
    cplx sum{};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(i & bit)) {
            sum += std::conj(s[i | bit]) * s[i];
        }
    }
    return 2.0 * sum;
}

} // namespace qnetsim
