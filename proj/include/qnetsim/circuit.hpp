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
/// Gate lists with an explicit global phase.
///
/// Gates are stored in application order: gates()[0] acts first. Besides the
/// elementary set {R_mu(theta), exp(i omega Z_j Z_k)} a circuit may hold
/// Pauli exponentials exp(i theta P), which compile() lowers to elementary
/// gates, and ancilla-controlled blocks (one level deep).

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qnetsim/pauli.hpp"
#include "qnetsim/state_vector.hpp"

namespace qnetsim {

class Circuit;

/// R_axis(angle) = exp(-i angle/2 sigma_axis) on `qubit`.
struct Rotation {
    int qubit;
    Axis axis;
    double angle;
};

/// exp(i angle Z_j Z_k).
struct ZZRotation {
    int j;
    int k;
    double angle;
};

/// exp(i angle P) for a Hermitian Pauli string P.
struct PauliRotation {
    PauliString pauli;
    double angle;
};

/// Requires `qubit` to be in computational state `state` (0 or 1).
struct Control {
    int qubit;
    int state;
};

struct ControlledBlock {
    std::vector<Control> controls;
    std::shared_ptr<const Circuit> body;
};

using Gate = std::variant<Rotation, ZZRotation, PauliRotation, ControlledBlock>;

struct GateCounts {
    std::size_t rotations = 0;
    std::size_t zz = 0;
    std::size_t pauli = 0;
    std::size_t blocks = 0;

    std::size_t total() const { return rotations + zz + pauli + blocks; }
};

class Circuit {
  public:
    Circuit() = default;

    const std::vector<Gate> &gates() const { return gates_; }
    double global_phase() const { return phase_; }
    bool empty() const { return gates_.empty(); }
    std::size_t size() const { return gates_.size(); }

    Circuit &rotation(int qubit, Axis axis, double angle) {
        qubit_bit(qubit);
        gates_.emplace_back(Rotation{qubit, axis, angle});
        return *this;
    }

    Circuit &zz(int j, int k, double angle) {
        qubit_bit(j);
        qubit_bit(k);
        if (j == k) {
            throw std::domain_error("zz interaction needs two distinct qubits");
        }
        gates_.emplace_back(ZZRotation{j, k, angle});
        return *this;
    }

    /// Appends exp(i angle P). A phased Hermitian string (-P) is normalized to
    /// +P with the angle negated; the identity string becomes a global phase.
    Circuit &pauli_rotation(const PauliString &p, double angle) {
        if (!p.is_hermitian()) {
            throw std::domain_error("exp(i theta P) needs a Hermitian Pauli string");
        }
        double a = p.phase() == 0 ? angle : -angle;
        if (p.is_identity()) {
            phase_ += a;
            return *this;
        }
        gates_.emplace_back(PauliRotation{p.unphased(), a});
        return *this;
    }

    Circuit &controlled(std::vector<Control> controls, const Circuit &body) {
        if (controls.empty()) {
            throw std::domain_error("controlled block without controls");
        }
        for (const auto &g : body.gates_) {
            if (std::holds_alternative<ControlledBlock>(g)) {
                throw std::domain_error("controlled blocks nest at most once");
            }
        }
        std::uint64_t cmask = 0;
        for (const auto &c : controls) {
            if (c.state != 0 && c.state != 1) {
                throw std::domain_error("control state must be 0 or 1");
            }
            if (cmask & qubit_bit(c.qubit)) {
                throw std::domain_error("repeated control qubit");
            }
            cmask |= qubit_bit(c.qubit);
        }
        if (body.support_mask() & cmask) {
            throw std::domain_error("controlled body acts on its own control qubit");
        }
        gates_.emplace_back(ControlledBlock{std::move(controls), std::make_shared<const Circuit>(body)});
        return *this;
    }

    Circuit &add_phase(double alpha) {
        phase_ += alpha;
        return *this;
    }

    Circuit &append(const Gate &g) {
        gates_.push_back(g);
        return *this;
    }

    /// Concatenation: `other` acts after the gates already present.
    Circuit &append(const Circuit &other) {
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        phase_ += other.phase_;
        return *this;
    }

    Circuit inverse() const {
        Circuit out;
        out.phase_ = -phase_;
        out.gates_.reserve(gates_.size());
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            std::visit(
                [&out](const auto &g) {
                    using T = std::decay_t<decltype(g)>;
                    if constexpr (std::is_same_v<T, Rotation>) {
                        out.gates_.emplace_back(Rotation{g.qubit, g.axis, -g.angle});
                    } else if constexpr (std::is_same_v<T, ZZRotation>) {
                        out.gates_.emplace_back(ZZRotation{g.j, g.k, -g.angle});
                    } else if constexpr (std::is_same_v<T, PauliRotation>) {
                        out.gates_.emplace_back(PauliRotation{g.pauli, -g.angle});
                    } else {
                        out.gates_.emplace_back(
                            ControlledBlock{g.controls, std::make_shared<const Circuit>(g.body->inverse())});
                    }
                },
                *it);
        }
        return out;
    }

    /// Counts top-level gates; controlled bodies contribute their own counts.
    GateCounts counts() const {
        GateCounts c;
        for (const auto &g : gates_) {
            if (std::holds_alternative<Rotation>(g)) {
                ++c.rotations;
            } else if (std::holds_alternative<ZZRotation>(g)) {
                ++c.zz;
            } else if (std::holds_alternative<PauliRotation>(g)) {
                ++c.pauli;
            } else {
                ++c.blocks;
                auto inner = std::get<ControlledBlock>(g).body->counts();
                c.rotations += inner.rotations;
                c.zz += inner.zz;
                c.pauli += inner.pauli;
            }
        }
        return c;
    }

    /// Bit mask of every qubit a gate acts on or is controlled by.
    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (const auto &g : gates_) {
            std::visit(
                [&m](const auto &x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, Rotation>) {
                        m |= qubit_bit(x.qubit);
                    } else if constexpr (std::is_same_v<T, ZZRotation>) {
                        m |= qubit_bit(x.j) | qubit_bit(x.k);
                    } else if constexpr (std::is_same_v<T, PauliRotation>) {
                        m |= x.pauli.support_mask();
                    } else {
                        for (const auto &c : x.controls) {
                            m |= qubit_bit(c.qubit);
                        }
                        m |= x.body->support_mask();
                    }
                },
                g);
        }
        return m;
    }

    int max_qubit() const {
        auto m = support_mask();
        return m == 0 ? 0 : 64 - std::countl_zero(m);
    }

    /// One gate per line; controlled bodies are indented between braces.
    std::string to_text() const {
        std::ostringstream os;
        write(os, "");
        return os.str();
    }

    static Circuit from_text(std::string_view text) {
        std::istringstream in{std::string(text)};
        int line_no = 0;
        Circuit c = read(in, line_no, false);
        return c;
    }

  private:
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    void write(std::ostream &os, const std::string &indent) const {
        if (phase_ != 0.0) {
            os << indent << "phase " << fmt(phase_) << '\n';
        }
        for (const auto &g : gates_) {
            std::visit(
                [&](const auto &x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, Rotation>) {
                        os << indent << "rot " << x.qubit << ' ' << axis_char(x.axis) << ' ' << fmt(x.angle)
                           << '\n';
                    } else if constexpr (std::is_same_v<T, ZZRotation>) {
                        os << indent << "zz " << x.j << ' ' << x.k << ' ' << fmt(x.angle) << '\n';
                    } else if constexpr (std::is_same_v<T, PauliRotation>) {
                        os << indent << "pexp " << fmt(x.angle) << ' ' << x.pauli.to_string() << '\n';
                    } else {
                        os << indent << "ctrl";
                        for (const auto &c : x.controls) {
                            os << ' ' << c.qubit << ':' << c.state;
                        }
                        os << " {\n";
                        x.body->write(os, indent + "  ");
                        os << indent << "}\n";
                    }
                },
                g);
        }
    }

    static double parse_double(const std::string &s, int line_no) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) {
                throw std::invalid_argument(s);
            }
            return v;
        } catch (const std::exception &) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": bad number '" + s + "'");
        }
    }

    static int parse_int(const std::string &s, int line_no) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) {
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": bad integer '" + s + "'");
        }
        return v;
    }

    static Circuit read(std::istream &in, int &line_no, bool nested) {
        Circuit c;
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ls(line);
            std::string kind;
            if (!(ls >> kind) || kind[0] == '#') {
                continue;
            }
            auto err = [&](const std::string &what) {
                return std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + what);
            };
            if (kind == "}") {
                if (!nested) {
                    throw err("unmatched '}'");
                }
                return c;
            }
            std::string a, b, d;
            if (kind == "phase") {
                if (!(ls >> a)) {
                    throw err("phase needs an angle");
                }
                c.phase_ += parse_double(a, line_no);
            } else if (kind == "rot") {
                if (!(ls >> a >> b >> d) || b.size() != 1 || b.find_first_of("xyz") != 0) {
                    throw err("expected 'rot <qubit> <x|y|z> <angle>'");
                }
                Axis ax = b == "x" ? Axis::X : (b == "y" ? Axis::Y : Axis::Z);
                c.rotation(parse_int(a, line_no), ax, parse_double(d, line_no));
            } else if (kind == "zz") {
                if (!(ls >> a >> b >> d)) {
                    throw err("expected 'zz <j> <k> <angle>'");
                }
                c.zz(parse_int(a, line_no), parse_int(b, line_no), parse_double(d, line_no));
            } else if (kind == "pexp") {
                if (!(ls >> a)) {
                    throw err("expected 'pexp <angle> <pauli string>'");
                }
                std::string rest;
                std::getline(ls, rest);
                c.pauli_rotation(PauliString::parse(rest), parse_double(a, line_no));
            } else if (kind == "ctrl") {
                if (nested) {
                    throw err("controlled blocks nest at most once");
                }
                std::vector<Control> controls;
                std::string tok;
                bool open = false;
                while (ls >> tok) {
                    if (tok == "{") {
                        open = true;
                        break;
                    }
                    auto colon = tok.find(':');
                    if (colon == std::string::npos) {
                        throw err("control must be written <qubit>:<state>");
                    }
                    controls.push_back(
                        {parse_int(tok.substr(0, colon), line_no), parse_int(tok.substr(colon + 1), line_no)});
                }
                if (!open) {
                    throw err("ctrl line must end with '{'");
                }
                Circuit body = read(in, line_no, true);
                c.controlled(std::move(controls), body);
            } else {
                throw err("unknown gate '" + kind + "'");
            }
        }
        if (nested) {
            throw std::invalid_argument("circuit text ends inside a controlled block");
        }
        return c;
    }

    std::vector<Gate> gates_;
    double phase_ = 0.0;
};

/// Runs the circuit on `s`; every gate (and the global phase) is restricted to
/// amplitudes accepted by `ctrl`.
inline void apply(StateVector &s, const Circuit &c, ControlMask ctrl = {}) {
    for (const auto &g : c.gates()) {
        std::visit(
            [&](const auto &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Rotation>) {
                    apply_rotation(s, x.qubit, x.axis, x.angle, ctrl);
                } else if constexpr (std::is_same_v<T, ZZRotation>) {
                    apply_zz(s, x.j, x.k, x.angle, ctrl);
                } else if constexpr (std::is_same_v<T, PauliRotation>) {
                    apply_pauli_exp(s, x.pauli, x.angle, ctrl);
                } else {
                    ControlMask inner = ctrl;
                    for (const auto &cq : x.controls) {
                        s.check_qubit(cq.qubit);
                        inner = inner.with(cq.qubit, cq.state);
                    }
                    apply(s, *x.body, inner);
                }
            },
            g);
    }
    if (c.global_phase() != 0.0) {
        apply_phase(s, c.global_phase(), ctrl);
    }
}

} // namespace qnetsim
