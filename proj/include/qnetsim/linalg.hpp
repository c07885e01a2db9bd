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
/// Dense linear algebra helpers on top of Eigen. Dense operator matrices use
/// the same basis index I as StateVector.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qnetsim/circuit.hpp"
#include "qnetsim/pauli.hpp"
#include "qnetsim/state_vector.hpp"

namespace qnetsim {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline double max_abs(const MatrixXc &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double unitarity_residual(const MatrixXc &u) {
    return max_abs(u.adjoint() * u - MatrixXc::Identity(u.cols(), u.cols()));
}

/// exp(i a H) for Hermitian H.
inline MatrixXc expm_hermitian(const MatrixXc &h, double a = 1.0) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver failed in expm_hermitian");
    }
    VectorXc ph(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        ph[i] = std::polar(1.0, a * es.eigenvalues()[i]);
    }
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline VectorXc to_eigen(const StateVector &s) {
    VectorXc v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = s[i];
    }
    return v;
}

inline StateVector from_eigen(int num_qubits, const VectorXc &v) {
    return StateVector(num_qubits, std::vector<cplx>(v.data(), v.data() + v.size()));
}

/// Dense 2^L x 2^L matrix of a Pauli sum.
inline MatrixXc dense_matrix(const PauliSum &op, int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    MatrixXc m = MatrixXc::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &[p, c] : op.terms()) {
        if (p.max_qubit() > num_qubits) {
            throw std::domain_error("operator acts outside the register");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i ^ p.x_mask()), static_cast<Eigen::Index>(i)) +=
                c * detail::pauli_coefficient(i, p.z_mask(), std::popcount(p.x_mask() & p.z_mask()));
        }
    }
    return m;
}

/// Dense unitary of a circuit, column by column.
inline MatrixXc dense_matrix(const Circuit &c, int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    MatrixXc m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        auto s = StateVector::basis(num_qubits, j);
        apply(s, c);
        m.col(static_cast<Eigen::Index>(j)) = to_eigen(s);
    }
    return m;
}

} // namespace qnetsim
