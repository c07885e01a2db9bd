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
/// Periodic two-dimensional Hubbard model: bonds, Jordan-Wigner Hamiltonian,
/// even/odd term groups, Trotter circuits and the antiferromagnetic
/// mean-field solution.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "qnetsim/circuit.hpp"
#include "qnetsim/compile.hpp"
#include "qnetsim/fermion.hpp"
#include "qnetsim/linalg.hpp"

namespace qnetsim {

struct HubbardSpec {
    int nx = 4;
    int ny = 2;
    double tx = 1.0;
    double ty = 1.0;
    double u = 4.0;
    int ne = -1; // -1: half filling

    int num_sites() const { return nx * ny; }
    int num_modes() const { return 2 * nx * ny; }
    int particles() const { return ne < 0 ? nx * ny : ne; }
    int n_up() const { return (particles() + 1) / 2; }
    int n_down() const { return particles() / 2; }

    /// 1-based site index s = i + (j-1) nx.
    int site(int i, int j) const { return i + (j - 1) * nx; }
    int mode(int site, Spin s) const { return site + (s == Spin::Down ? num_sites() : 0); }

    void validate() const {
        if (nx < 1 || ny < 1) {
            throw std::domain_error("lattice dimensions must be positive");
        }
        if ((nx >= 3 && nx % 2 == 1) || (ny >= 3 && ny % 2 == 1)) {
            throw std::domain_error("odd lattice lengths above 2 break the even/odd bond split");
        }
        if (num_modes() > 30) {
            throw std::domain_error("lattice needs more qubits than the simulator supports");
        }
        if (particles() < 0 || particles() > num_modes()) {
            throw std::domain_error("particle count outside 0.." + std::to_string(num_modes()));
        }
    }
};

enum class BondGroup : std::uint8_t { XOdd, XEven, YOdd, YEven };

struct Bond {
    int a; // site
    int b; // site
    BondGroup group;
    double t;
};

/// Periodic nearest-neighbour bonds (i,j)->(i+1,j) and (i,j)->(i,j+1).
/// A length-1 direction has no bonds; length 2 keeps both wrap bonds.
inline std::vector<Bond> bonds(const HubbardSpec &spec) {
    spec.validate();
    std::vector<Bond> out;
    for (int j = 1; j <= spec.ny; ++j) {
        for (int i = 1; i <= spec.nx; ++i) {
            if (spec.nx > 1) {
                out.push_back({spec.site(i, j), spec.site(i % spec.nx + 1, j),
                               i % 2 == 1 ? BondGroup::XOdd : BondGroup::XEven, spec.tx});
            }
        }
    }
    for (int j = 1; j <= spec.ny; ++j) {
        for (int i = 1; i <= spec.nx; ++i) {
            if (spec.ny > 1) {
                out.push_back({spec.site(i, j), spec.site(i, j % spec.ny + 1),
                               j % 2 == 1 ? BondGroup::YOdd : BondGroup::YEven, spec.ty});
            }
        }
    }
    return out;
}

/// Single-particle hopping matrix (sites x sites), -t per bond and direction.
inline Eigen::MatrixXd hopping_matrix(const HubbardSpec &spec) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(spec.num_sites(), spec.num_sites());
    for (const auto &b : bonds(spec)) {
        h(b.a - 1, b.b - 1) -= b.t;
        h(b.b - 1, b.a - 1) -= b.t;
    }
    return h;
}

inline PauliSum hopping_term(const HubbardSpec &spec, const Bond &b, Spin s) {
    return quadratic_to_pauli(spec.mode(b.a, s), spec.mode(b.b, s), -b.t);
}

inline PauliSum interaction_term(const HubbardSpec &spec, int site) {
    return (spec.u * (number_operator(spec.mode(site, Spin::Up)) * number_operator(spec.mode(site, Spin::Down))))
        .simplified();
}

/// H = -sum t (a^dag a + h.c.) + U sum n_up n_down as a Pauli sum.
inline PauliSum build_hamiltonian(const HubbardSpec &spec) {
    PauliSum h;
    for (const auto &b : bonds(spec)) {
        for (Spin s : {Spin::Up, Spin::Down}) {
            h += quadratic_to_pauli(spec.mode(b.a, s), spec.mode(b.b, s), -b.t);
        }
    }
    for (int site = 1; site <= spec.num_sites(); ++site) {
        h += spec.u * number_operator(spec.mode(site, Spin::Up)) * number_operator(spec.mode(site, Spin::Down));
    }
    return h.simplified();
}

inline PauliSum total_number(int modes) {
    PauliSum n;
    for (int s = 1; s <= modes; ++s) {
        n += number_operator(s);
    }
    return n;
}

/// S_z = (N_up - N_down)/2.
inline PauliSum total_sz(const HubbardSpec &spec) {
    PauliSum sz;
    for (int site = 1; site <= spec.num_sites(); ++site) {
        sz += 0.5 * number_operator(spec.mode(site, Spin::Up));
        sz -= 0.5 * number_operator(spec.mode(site, Spin::Down));
    }
    return sz.simplified();
}

/// Mutually commuting terms; each term is a sum of mutually commuting strings.
struct TermGroup {
    std::string label;
    std::vector<FermionTerm> fermion_terms;
    std::vector<PauliSum> terms;

    PauliSum total() const {
        PauliSum s;
        for (const auto &t : terms) {
            s += t;
        }
        return s.simplified();
    }
};

/// Groups in the order K_x^o, K_x^e, K_y^o, K_y^e, V (both spins per group).
inline std::vector<TermGroup> partition_bonds(const HubbardSpec &spec) {
    std::vector<TermGroup> groups{{"Kx_odd", {}, {}}, {"Kx_even", {}, {}}, {"Ky_odd", {}, {}},
                                  {"Ky_even", {}, {}}, {"V", {}, {}}};
    for (Spin s : {Spin::Up, Spin::Down}) {
        for (const auto &b : bonds(spec)) {
            auto &g = groups[static_cast<std::size_t>(b.group)];
            const int ma = spec.mode(b.a, s), mb = spec.mode(b.b, s);
            g.fermion_terms.push_back({-b.t, {{ma, true}, {mb, false}}});
            g.fermion_terms.push_back({-b.t, {{mb, true}, {ma, false}}});
            g.terms.push_back(hopping_term(spec, b, s));
        }
    }
    for (int site = 1; site <= spec.num_sites(); ++site) {
        const int up = spec.mode(site, Spin::Up), dn = spec.mode(site, Spin::Down);
        groups[4].fermion_terms.push_back({spec.u, {{up, true}, {up, false}, {dn, true}, {dn, false}}});
        groups[4].terms.push_back(interaction_term(spec, site));
    }
    return groups;
}

enum class Engine : std::uint8_t { Pauli, Gates };

/// Trotter step for exp(-i sum_g G_g tau), as Pauli exponentials. Every
/// string P is replaced by P * tag and its angle scaled by `scale`, which
/// builds exp(i H Z_a tau/2) from tag = Z_a, scale = -1/2.
///
/// Order 1 applies V first, then K_y^e, K_y^o, K_x^e, K_x^o. Order 2 applies
/// the kinetic groups over tau/2, V over tau and the kinetic groups again in
/// reverse.
inline Circuit trotter_step(const std::vector<TermGroup> &groups, double tau, int order,
                            const PauliString &tag = PauliString{}, double scale = 1.0) {
    if (!(tau > 0.0)) {
        throw std::domain_error("Trotter step needs a positive time step");
    }
    Circuit c;
    auto emit = [&](const TermGroup &g, double t, bool reversed) {
        std::vector<std::pair<PauliString, double>> strings;
        for (const auto &term : g.terms) {
            for (const auto &[p, coef] : term.terms()) {
                strings.emplace_back(p * tag, coef.real());
            }
        }
        if (reversed) {
            std::reverse(strings.begin(), strings.end());
        }
        for (const auto &[p, w] : strings) {
            c.pauli_rotation(p, -scale * w * t);
        }
    };
    const std::size_t n = groups.size();
    if (order == 1) {
        for (std::size_t g = n; g-- > 0;) {
            emit(groups[g], tau, false);
        }
    } else if (order == 2) {
        if (n == 0) {
            return c;
        }
        for (std::size_t g = 0; g + 1 < n; ++g) {
            emit(groups[g], tau / 2.0, false);
        }
        emit(groups[n - 1], tau, false);
        for (std::size_t g = n - 1; g-- > 0;) {
            emit(groups[g], tau / 2.0, true);
        }
    } else {
        throw std::domain_error("unsupported Trotter order " + std::to_string(order));
    }
    return c;
}

inline Circuit trotter_step(const HubbardSpec &spec, double tau, int order) {
    return trotter_step(partition_bonds(spec), tau, order);
}

/// Time-evolution settings shared by the measurement drivers.
struct Evolution {
    std::vector<TermGroup> groups;
    double dt = 0.05;
    int order = 2;
    Engine engine = Engine::Pauli;

    Circuit step(const PauliString &tag = PauliString{}, double scale = 1.0) const {
        Circuit c = trotter_step(groups, dt, order, tag, scale);
        return engine == Engine::Gates ? compile(c) : c;
    }
};

/// Self-consistency stopped at the iteration cap; carries the last residual.
struct ConvergenceError : std::runtime_error {
    double residual;
    ConvergenceError(const std::string &what, double last) : std::runtime_error(what), residual(last) {}
};

struct MeanFieldResult {
    MatrixXc orbitals;               // 2Ns x 2Ns, blockdiag(B_up, B_down); occupied columns first per block
    std::vector<int> occupied_modes; // boot occupancy, 1-based chain indices
    std::vector<double> n_up;
    std::vector<double> n_down;
    std::vector<double> eps_up;
    std::vector<double> eps_down;
    double energy = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool degenerate_shell = false;
};

namespace detail {

/// Orthonormal eigenbasis of h with the lowest `count` orbitals first. A
/// partially filled degenerate shell is resolved by projecting plane waves,
/// in lexicographic (mx, my) order, onto the shell.
inline MatrixXc ordered_orbitals(const HubbardSpec &spec, const Eigen::MatrixXd &h, int count,
                                 std::vector<double> &eps, bool &degenerate) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("mean-field eigensolver failed");
    }
    const int n = static_cast<int>(h.rows());
    eps.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    MatrixXc v = es.eigenvectors().cast<cplx>();
    degenerate = false;
    if (count <= 0 || count >= n) {
        return v;
    }
    constexpr double tol = 1e-8;
    const double ef = eps[static_cast<std::size_t>(count - 1)];
    if (std::abs(eps[static_cast<std::size_t>(count)] - ef) > tol) {
        return v;
    }
    degenerate = true;
    int lo = count - 1, hi = count;
    while (lo > 0 && std::abs(eps[static_cast<std::size_t>(lo - 1)] - ef) <= tol) {
        --lo;
    }
    while (hi < n && std::abs(eps[static_cast<std::size_t>(hi)] - ef) <= tol) {
        ++hi;
    }
    const int dim = hi - lo;
    MatrixXc shell = v.middleCols(lo, dim);
    MatrixXc proj = shell * shell.adjoint();
    MatrixXc chosen(n, dim);
    int found = 0;
    for (int mx = 0; mx < spec.nx && found < dim; ++mx) {
        for (int my = 0; my < spec.ny && found < dim; ++my) {
            VectorXc w(n);
            for (int j = 1; j <= spec.ny; ++j) {
                for (int i = 1; i <= spec.nx; ++i) {
                    const double phase = 2.0 * std::numbers::pi *
                                         (static_cast<double>(mx * (i - 1)) / spec.nx +
                                          static_cast<double>(my * (j - 1)) / spec.ny);
                    w[spec.site(i, j) - 1] = std::polar(1.0, phase);
                }
            }
            VectorXc p = proj * w;
            for (int f = 0; f < found; ++f) {
                p -= chosen.col(f) * (chosen.col(f).adjoint() * p)(0);
            }
            const double norm = p.norm();
            if (norm > 1e-8) {
                chosen.col(found++) = p / norm;
            }
        }
    }
    if (found != dim) {
        throw std::logic_error("plane waves did not span the degenerate shell");
    }
    v.middleCols(lo, dim) = chosen;
    return v;
}

} // namespace detail

/// Self-consistent unrestricted mean field, h_s = T + U diag(n_{-s}), from a
/// Neel start with linear mixing 0.5.
inline MeanFieldResult mean_field_solve(const HubbardSpec &spec, double tol = 1e-10, int max_iterations = 100000) {
    spec.validate();
    const int ns = spec.num_sites();
    const Eigen::MatrixXd t = hopping_matrix(spec);
    MeanFieldResult r;
    r.n_up.resize(static_cast<std::size_t>(ns));
    r.n_down.resize(static_cast<std::size_t>(ns));
    for (int j = 1; j <= spec.ny; ++j) {
        for (int i = 1; i <= spec.nx; ++i) {
            const double stagger = ((i + j) % 2 == 0) ? 0.5 : -0.5;
            r.n_up[static_cast<std::size_t>(spec.site(i, j) - 1)] = 0.5 + stagger;
            r.n_down[static_cast<std::size_t>(spec.site(i, j) - 1)] = 0.5 - stagger;
        }
    }
    const int nu = spec.n_up(), nd = spec.n_down();
    MatrixXc bu, bd;
    bool deg_u = false, deg_d = false;
    auto solve = [&](const std::vector<double> &other, int count, std::vector<double> &eps, bool &deg) {
        Eigen::MatrixXd h = t;
        for (int s = 0; s < ns; ++s) {
            h(s, s) += spec.u * other[static_cast<std::size_t>(s)];
        }
        return detail::ordered_orbitals(spec, h, count, eps, deg);
    };
    auto density = [&](const MatrixXc &b, int count) {
        std::vector<double> n(static_cast<std::size_t>(ns), 0.0);
        for (int c = 0; c < count; ++c) {
            for (int s = 0; s < ns; ++s) {
                n[static_cast<std::size_t>(s)] += std::norm(b(s, c));
            }
        }
        return n;
    };
    for (int it = 1; it <= max_iterations; ++it) {
        bu = solve(r.n_down, nu, r.eps_up, deg_u);
        bd = solve(r.n_up, nd, r.eps_down, deg_d);
        auto new_up = density(bu, nu);
        auto new_down = density(bd, nd);
        double res = 0.0;
        for (int s = 0; s < ns; ++s) {
            const auto k = static_cast<std::size_t>(s);
            res = std::max({res, std::abs(new_up[k] - r.n_up[k]), std::abs(new_down[k] - r.n_down[k])});
        }
        r.residual = res;
        r.iterations = it;
        if (res < tol) {
            r.n_up = std::move(new_up);
            r.n_down = std::move(new_down);
            break;
        }
        if (it == max_iterations) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "mean field did not converge in %d iterations; last residual %.3e", it, res);
            throw ConvergenceError(buf, res);
        }
        for (int s = 0; s < ns; ++s) {
            const auto k = static_cast<std::size_t>(s);
            r.n_up[k] = 0.5 * r.n_up[k] + 0.5 * new_up[k];
            r.n_down[k] = 0.5 * r.n_down[k] + 0.5 * new_down[k];
        }
    }
    r.degenerate_shell = deg_u || deg_d;
    r.orbitals = MatrixXc::Zero(2 * ns, 2 * ns);
    r.orbitals.topLeftCorner(ns, ns) = bu;
    r.orbitals.bottomRightCorner(ns, ns) = bd;
    double e = 0.0;
    for (int c = 0; c < nu; ++c) {
        e += r.eps_up[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < nd; ++c) {
        e += r.eps_down[static_cast<std::size_t>(c)];
    }
    for (int s = 0; s < ns; ++s) {
        e -= spec.u * r.n_up[static_cast<std::size_t>(s)] * r.n_down[static_cast<std::size_t>(s)];
    }
    r.energy = e;
    for (int c = 1; c <= nu; ++c) {
        r.occupied_modes.push_back(c);
    }
    for (int c = 1; c <= nd; ++c) {
        r.occupied_modes.push_back(ns + c);
    }
    return r;
}

} // namespace qnetsim
