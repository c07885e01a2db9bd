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

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnetsim {

using cplx = std::complex<double>;

/// Largest qubit label a PauliString can address (labels are 1-based).
inline constexpr int kMaxQubits = 64;

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline std::uint64_t qubit_bit(int qubit) {
    if (qubit < 1 || qubit > kMaxQubits) {
        throw std::domain_error("qubit label " + std::to_string(qubit) +
                                " outside 1.." + std::to_string(kMaxQubits));
    }
    return std::uint64_t{1} << (qubit - 1);
}

/// i^k for k taken mod 4.
inline cplx i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

/// A phased tensor product i^k * (x) sigma_{mu_q}. Qubit q occupies bit q-1 of
/// the x/z masks; a Y factor has both bits set and denotes sigma_y itself.
class PauliString {
  public:
    PauliString() = default;

    PauliString(std::initializer_list<std::pair<int, Pauli>> factors, int phase = 0)
        : phase_(((phase % 4) + 4) % 4) {
        for (const auto &[q, p] : factors) {
            set(q, p);
        }
    }

    static PauliString single(int qubit, Pauli p) {
        PauliString s;
        s.set(qubit, p);
        return s;
    }

    static PauliString from_masks(std::uint64_t x, std::uint64_t z, int phase = 0) {
        PauliString s;
        s.x_ = x;
        s.z_ = z;
        s.phase_ = ((phase % 4) + 4) % 4;
        return s;
    }

    /// Parses strings such as "X1 Z2 X3", "-Y4", "+i Z1 Z2" or "I".
    static PauliString parse(std::string_view text) {
        PauliString s;
        std::string token;
        std::istringstream in{std::string(text)};
        int phase = 0;
        bool first = true;
        while (in >> token) {
            if (first) {
                first = false;
                std::size_t pos = 0;
                if (token[pos] == '+' || token[pos] == '-') {
                    if (token[pos] == '-') {
                        phase += 2;
                    }
                    ++pos;
                }
                if (pos < token.size() && token[pos] == 'i') {
                    phase += 1;
                    ++pos;
                }
                token = token.substr(pos);
                if (token.empty()) {
                    continue;
                }
            }
            if (token == "I") {
                continue;
            }
            Pauli p;
            switch (token[0]) {
            case 'X': p = Pauli::X; break;
            case 'Y': p = Pauli::Y; break;
            case 'Z': p = Pauli::Z; break;
            default: throw std::invalid_argument("bad Pauli factor '" + token + "'");
            }
            int q = std::stoi(token.substr(1));
            if (s.at(q) != Pauli::I) {
                throw std::invalid_argument("repeated qubit in Pauli string");
            }
            s.set(q, p);
        }
        s.phase_ = phase % 4;
        return s;
    }

    Pauli at(int qubit) const {
        auto b = qubit_bit(qubit);
        bool x = x_ & b;
        bool z = z_ & b;
        if (x && z) return Pauli::Y;
        if (x) return Pauli::X;
        if (z) return Pauli::Z;
        return Pauli::I;
    }

    void set(int qubit, Pauli p) {
        auto b = qubit_bit(qubit);
        x_ &= ~b;
        z_ &= ~b;
        if (p == Pauli::X || p == Pauli::Y) x_ |= b;
        if (p == Pauli::Z || p == Pauli::Y) z_ |= b;
    }

    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    std::uint64_t support_mask() const { return x_ | z_; }
    int weight() const { return std::popcount(support_mask()); }
    bool is_identity() const { return support_mask() == 0; }

    /// Exponent k of the i^k prefactor.
    int phase() const { return phase_; }
    cplx phase_factor() const { return i_pow(phase_); }
    bool is_hermitian() const { return phase_ % 2 == 0; }

    /// Same factors with unit prefactor.
    PauliString unphased() const { return from_masks(x_, z_, 0); }
    PauliString with_phase(int k) const { return from_masks(x_, z_, k); }
    PauliString operator-() const { return from_masks(x_, z_, phase_ + 2); }

    /// Qubit labels in the support, ascending.
    std::vector<int> support() const {
        std::vector<int> out;
        for (auto m = support_mask(); m != 0; m &= m - 1) {
            out.push_back(std::countr_zero(m) + 1);
        }
        return out;
    }

    std::map<int, Pauli> factors() const {
        std::map<int, Pauli> out;
        for (int q : support()) {
            out.emplace(q, at(q));
        }
        return out;
    }

    int max_qubit() const {
        auto m = support_mask();
        return m == 0 ? 0 : 64 - std::countl_zero(m);
    }

    bool commutes_with(const PauliString &other) const {
        return std::popcount((x_ & other.z_) ^ (z_ & other.x_)) % 2 == 0;
    }

    /// Exact product with tracked phase. Each factor is i^{xz} X^x Z^z, so the
    /// product phase collects the Y bookkeeping and one -1 per Z·X reordering.
    friend PauliString operator*(const PauliString &a, const PauliString &b) {
        std::uint64_t x = a.x_ ^ b.x_;
        std::uint64_t z = a.z_ ^ b.z_;
        int k = a.phase_ + b.phase_ + std::popcount(a.x_ & a.z_) + std::popcount(b.x_ & b.z_) +
                2 * std::popcount(a.z_ & b.x_) - std::popcount(x & z);
        return from_masks(x, z, k);
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

    std::string to_string() const {
        static constexpr const char *kPrefix[] = {"+", "+i", "-", "-i"};
        std::string out = kPrefix[phase_];
        if (is_identity()) {
            return out + "I";
        }
        bool first = true;
        for (int q : support()) {
            if (!first) out += ' ';
            first = false;
            out += pauli_char(at(q));
            out += std::to_string(q);
        }
        return out;
    }

  private:
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

inline std::ostream &operator<<(std::ostream &os, const PauliString &p) { return os << p.to_string(); }

/// A linear combination of Pauli strings. Strings are stored unphased; any
/// prefactor is folded into the coefficient, so equal strings always merge.
class PauliSum {
  public:
    using Key = std::pair<std::uint64_t, std::uint64_t>;

    PauliSum() = default;
    PauliSum(const PauliString &p, cplx coefficient = 1.0) { add(p, coefficient); }

    static PauliSum identity(cplx coefficient = 1.0) { return PauliSum(PauliString{}, coefficient); }

    void add(const PauliString &p, cplx coefficient) {
        if (coefficient == cplx{}) {
            return;
        }
        Key key{p.x_mask(), p.z_mask()};
        auto [it, inserted] = terms_.try_emplace(key, cplx{});
        it->second += coefficient * p.phase_factor();
        if (it->second == cplx{}) {
            terms_.erase(it);
        }
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    cplx coefficient(const PauliString &p) const {
        auto it = terms_.find({p.x_mask(), p.z_mask()});
        return it == terms_.end() ? cplx{} : it->second * std::conj(p.phase_factor());
    }

    /// (unphased string, coefficient) pairs in canonical (mask) order.
    std::vector<std::pair<PauliString, cplx>> terms() const {
        std::vector<std::pair<PauliString, cplx>> out;
        out.reserve(terms_.size());
        for (const auto &[key, c] : terms_) {
            out.emplace_back(PauliString::from_masks(key.first, key.second), c);
        }
        return out;
    }

    int max_qubit() const {
        int q = 0;
        for (const auto &[key, c] : terms_) {
            q = std::max(q, PauliString::from_masks(key.first, key.second).max_qubit());
        }
        return q;
    }

    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (const auto &[key, c] : terms_) {
            m |= key.first | key.second;
        }
        return m;
    }

    /// Drops coefficients with magnitude at or below tol.
    PauliSum simplified(double tol = 1e-14) const {
        PauliSum out;
        for (const auto &[key, c] : terms_) {
            if (std::abs(c) > tol) {
                out.terms_.emplace(key, c);
            }
        }
        return out;
    }

    PauliSum adjoint() const {
        PauliSum out;
        for (const auto &[key, c] : terms_) {
            out.terms_.emplace(key, std::conj(c));
        }
        return out;
    }

    /// Hermitian iff every coefficient is real (all stored strings are Hermitian).
    bool is_hermitian(double tol = 1e-12) const {
        for (const auto &[key, c] : terms_) {
            if (std::abs(c.imag()) > tol) {
                return false;
            }
        }
        return true;
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto &[key, c] : terms_) {
            m = std::max(m, std::abs(c));
        }
        return m;
    }

    PauliSum &operator+=(const PauliSum &other) {
        for (const auto &[key, c] : other.terms_) {
            add(PauliString::from_masks(key.first, key.second), c);
        }
        return *this;
    }

    PauliSum &operator-=(const PauliSum &other) {
        for (const auto &[key, c] : other.terms_) {
            add(PauliString::from_masks(key.first, key.second), -c);
        }
        return *this;
    }

    PauliSum &operator*=(cplx s) {
        if (s == cplx{}) {
            terms_.clear();
            return *this;
        }
        for (auto &[key, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
    friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
    friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

    friend PauliSum operator*(const PauliSum &a, const PauliSum &b) {
        PauliSum out;
        for (const auto &[ka, ca] : a.terms_) {
            auto pa = PauliString::from_masks(ka.first, ka.second);
            for (const auto &[kb, cb] : b.terms_) {
                out.add(pa * PauliString::from_masks(kb.first, kb.second), ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const PauliSum &, const PauliSum &) = default;

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (const auto &[p, c] : terms()) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i) "
               << p.to_string().substr(1);
        }
        return first ? "0" : os.str();
    }

  private:
    std::map<Key, cplx> terms_;
};

inline PauliSum commutator(const PauliSum &a, const PauliSum &b, double tol = 1e-12) {
    return (a * b - b * a).simplified(tol);
}

/// sigma_+ = (X + iY)/2 = |0><1| on one qubit.
inline PauliSum sigma_plus(int qubit) {
    PauliSum s(PauliString::single(qubit, Pauli::X), 0.5);
    s.add(PauliString::single(qubit, Pauli::Y), cplx{0.0, 0.5});
    return s;
}

/// sigma_- = (X - iY)/2 = |1><0| on one qubit.
inline PauliSum sigma_minus(int qubit) {
    PauliSum s(PauliString::single(qubit, Pauli::X), 0.5);
    s.add(PauliString::single(qubit, Pauli::Y), cplx{0.0, -0.5});
    return s;
}

} // namespace qnetsim
