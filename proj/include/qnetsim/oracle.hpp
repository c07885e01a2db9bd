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
/// Brute-force Hubbard diagonalization in a fixed (N_up, N_down) sector.
/// Matrix elements come straight from second quantization on occupation
/// bit strings; only the bond list is shared with the circuit path.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qnetsim/hubbard.hpp"
#include "qnetsim/spectral.hpp"
#include "qnetsim/state_vector.hpp"

namespace qnetsim {

inline constexpr std::size_t kMaxSectorDim = 8192;

struct SectorBasis {
    int n_up = 0;
    int n_down = 0;
    int modes = 0;
    std::vector<std::uint64_t> configs; // ascending

    std::size_t size() const { return configs.size(); }

    /// Position of `config`, or size() when absent.
    std::size_t find(std::uint64_t config) const {
        auto it = std::lower_bound(configs.begin(), configs.end(), config);
        return (it != configs.end() && *it == config) ? static_cast<std::size_t>(it - configs.begin()) : size();
    }
};

/// C(ns, n_up) C(ns, n_down), without enumerating.
inline std::size_t sector_dimension(int ns, int n_up, int n_down) {
    auto choose = [](int n, int k) {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) {
            c = c * (n - k + i) / i;
        }
        return static_cast<std::size_t>(std::llround(c));
    };
    return choose(ns, n_up) * choose(ns, n_down);
}

inline SectorBasis sector_basis(const HubbardSpec &spec, int n_up, int n_down) {
    const int ns = spec.num_sites();
    if (n_up < 0 || n_down < 0 || n_up > ns || n_down > ns) {
        throw std::domain_error("sector particle counts outside 0.." + std::to_string(ns));
    }
    SectorBasis b{n_up, n_down, 2 * ns, {}};
    const std::uint64_t low = (std::uint64_t{1} << ns) - 1;
    const std::uint64_t limit = std::uint64_t{1} << (2 * ns);
    for (std::uint64_t i = 0; i < limit; ++i) {
        if (std::popcount(i & low) == n_up && std::popcount(i >> ns) == n_down) {
            b.configs.push_back(i);
        }
    }
    return b;
}

inline Eigen::MatrixXd dense_hamiltonian(const HubbardSpec &spec, const SectorBasis &basis) {
    if (basis.size() > kMaxSectorDim) {
        throw std::length_error("sector dimension " + std::to_string(basis.size()) + " exceeds the dense limit " +
                                std::to_string(kMaxSectorDim));
    }
    const int ns = spec.num_sites();
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    auto parity_below = [](std::uint64_t occ, int mode0) {
        return (std::popcount(occ & ((std::uint64_t{1} << mode0) - 1)) % 2 == 0) ? 1.0 : -1.0;
    };
    // -t a^dag_to a_from on one configuration; returns false when it vanishes.
    auto hop = [&](std::uint64_t occ, int to0, int from0, std::uint64_t &out, double &sign) {
        const std::uint64_t fb = std::uint64_t{1} << from0, tb = std::uint64_t{1} << to0;
        if (!(occ & fb)) {
            return false;
        }
        sign = parity_below(occ, from0);
        occ &= ~fb;
        if (occ & tb) {
            return false;
        }
        sign *= parity_below(occ, to0);
        out = occ | tb;
        return true;
    };
    const auto bond_list = bonds(spec);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const std::uint64_t occ = basis.configs[static_cast<std::size_t>(col)];
        double doubles = 0.0;
        for (int s = 0; s < ns; ++s) {
            if (((occ >> s) & 1U) && ((occ >> (s + ns)) & 1U)) {
                doubles += 1.0;
            }
        }
        h(col, col) += spec.u * doubles;
        for (const auto &b : bond_list) {
            for (int spin = 0; spin < 2; ++spin) {
                const int ma = b.a - 1 + spin * ns, mb = b.b - 1 + spin * ns;
                for (auto [to, from] : {std::pair{ma, mb}, std::pair{mb, ma}}) {
                    std::uint64_t next = 0;
                    double sign = 0.0;
                    if (hop(occ, to, from, next, sign)) {
                        const std::size_t row = basis.find(next);
                        if (row == basis.size()) {
                            throw std::logic_error("hopping left the sector");
                        }
                        h(static_cast<Eigen::Index>(row), col) += -b.t * sign;
                    }
                }
            }
        }
    }
    return h;
}

struct Eigensystem {
    Eigen::VectorXd values; // ascending
    Eigen::MatrixXd vectors;
};

inline Eigensystem eigensystem(const Eigen::MatrixXd &h) {
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
        throw std::domain_error("eigensystem needs a symmetric matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver did not converge");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

/// Restriction of a register state to the sector; throws if weight lies outside.
inline Eigen::VectorXcd sector_vector(const StateVector &phi, const SectorBasis &basis, double tol = 1e-10) {
    if (phi.num_qubits() != basis.modes) {
        throw std::domain_error("state register does not match the lattice");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
    double inside = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        v[static_cast<Eigen::Index>(k)] = phi[basis.configs[k]];
        inside += std::norm(phi[basis.configs[k]]);
    }
    double total = 0.0;
    for (const auto &a : phi.amplitudes()) {
        total += std::norm(a);
    }
    if (total - inside > tol) {
        throw std::domain_error("state has weight " + std::to_string(total - inside) + " outside the sector");
    }
    return v;
}

/// gamma_n = <Psi_n|phi> in the sector eigenbasis.
inline Eigen::VectorXcd overlaps(const Eigensystem &es, const Eigen::VectorXcd &phi) {
    return es.vectors.cast<cplx>().adjoint() * phi;
}

/// sum_n |gamma_n|^2 exp(-i lambda_n t_j), t_j = j dt, j < n.
inline TimeSeries exact_loschmidt(const Eigensystem &es, const Eigen::VectorXcd &phi, double dt, std::size_t n) {
    const Eigen::VectorXcd g = overlaps(es, phi);
    TimeSeries out{dt, std::vector<cplx>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        cplx sum{};
        for (Eigen::Index k = 0; k < g.size(); ++k) {
            sum += std::norm(g[k]) * std::polar(1.0, -es.values[k] * dt * static_cast<double>(j));
        }
        out.values[j] = sum;
    }
    return out;
}

/// Sector of the dominant configuration of phi, then exact_loschmidt.
inline TimeSeries exact_loschmidt(const StateVector &phi, const HubbardSpec &spec, double dt, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < phi.size(); ++i) {
        if (std::norm(phi[i]) > std::norm(phi[best])) {
            best = i;
        }
    }
    const int ns = spec.num_sites();
    const auto low = (std::uint64_t{1} << ns) - 1;
    auto basis = sector_basis(spec, std::popcount(best & low), std::popcount(best >> ns));
    auto es = eigensystem(dense_hamiltonian(spec, basis));
    return exact_loschmidt(es, sector_vector(phi, basis), dt, n);
}

} // namespace qnetsim
