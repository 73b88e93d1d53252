// Copyright 2026 The qgenbound Authors
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

// Dense reference implementations used only by tests. Everything here is
// built from explicit Kronecker products and textbook formulas, sharing no
// code with the library kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgb/circuit.hpp"
#include "qgb/simulator.hpp"
#include "qgb/state.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char c) {
    Mat m = Mat::Zero(2, 2);
    switch (c) {
    case 'I':
    case '_':
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        break;
    case 'X':
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case 'Y':
        m(0, 1) = cd(0, -1);
        m(1, 0) = cd(0, 1);
        break;
    case 'Z':
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    default:
        break;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Tensor product of letters, leftmost letter = qubit 0 = most significant.
inline Mat pauli_string(const std::string &s) {
    Mat m = Mat::Identity(1, 1);
    for (char c : s) {
        m = kron(m, pauli(c));
    }
    return m;
}

/// Single-qubit operator u on qubit q of n.
inline Mat embed(const Mat &u, int q, int n) {
    Mat m = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        m = kron(m, k == q ? u : pauli('I'));
    }
    return m;
}

inline Mat cnot(int control, int target, int n) {
    Mat p0 = Mat::Zero(2, 2);
    Mat p1 = Mat::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    Mat a = Mat::Identity(1, 1);
    Mat b = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        a = kron(a, k == control ? p0 : pauli('I'));
        b = kron(b, k == control ? p1 : (k == target ? pauli('X') : pauli('I')));
    }
    return a + b;
}

/// exp(-i a P) = cos(a) I - i sin(a) P for a Pauli P.
inline Mat pauli_rotation(char p, double a) {
    return std::cos(a) * pauli('I') - cd(0, 1) * std::sin(a) * pauli(p);
}

inline Mat hadamard() {
    Mat h(2, 2);
    const double r = 1.0 / std::numbers::sqrt2;
    h << r, r, r, -r;
    return h;
}

/// Dense matrix of one gate at the given bound angle.
inline Mat gate(const qgb::Gate &g, double angle, int n) {
    switch (g.kind) {
    case qgb::GateKind::RotY:
        return embed(pauli_rotation('Y', g.generator_scale * angle), g.qubits[0], n);
    case qgb::GateKind::RotZ:
        return embed(pauli_rotation('Z', g.generator_scale * angle), g.qubits[0], n);
    case qgb::GateKind::Hadamard:
        return embed(hadamard(), g.qubits[0], n);
    case qgb::GateKind::CNOT:
        return cnot(g.qubits[0], g.qubits[1], n);
    case qgb::GateKind::DiagExp: {
        Mat d = Mat::Zero(8, 8);
        for (int k = 0; k < 8; ++k) {
            d(k, k) = std::exp(cd(0, -angle * g.diag[static_cast<std::size_t>(k)]));
        }
        Mat m = Mat::Identity(1, 1);
        for (int k = 0; k < n; ++k) {
            if (k == g.qubits[0]) {
                m = kron(m, d);
                k += 2;
            } else {
                m = kron(m, pauli('I'));
            }
        }
        return m;
    }
    }
    return Mat::Identity(1 << n, 1 << n);
}

inline Mat circuit(const qgb::CircuitSpec &c, const std::vector<double> &theta) {
    const int n = c.n_qubits();
    Mat u = Mat::Identity(1 << n, 1 << n);
    for (const qgb::Gate &g : c.gates()) {
        const double a =
            g.trainable() ? theta[static_cast<std::size_t>(g.param_slot)] : g.fixed_value;
        u = gate(g, a, n) * u;
    }
    return u;
}

inline Eigen::VectorXcd vec(const qgb::StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

inline double expectation(const Eigen::VectorXcd &psi, const Mat &o) {
    return (psi.adjoint() * o * psi)(0, 0).real();
}

/// ANNNI Hamiltonian from Kronecker products, open chain.
inline Mat annni(int n, double kappa, double h) {
    const int dim = 1 << n;
    Mat hm = Mat::Zero(dim, dim);
    auto two_site = [n](int i, int j) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(i)] = 'X';
        s[static_cast<std::size_t>(j)] = 'X';
        return pauli_string(s);
    };
    for (int i = 0; i + 1 < n; ++i) {
        hm -= two_site(i, i + 1);
    }
    for (int i = 0; i + 2 < n; ++i) {
        hm += kappa * two_site(i, i + 2);
    }
    for (int i = 0; i < n; ++i) {
        hm -= h * embed(pauli('Z'), i, n);
    }
    return hm;
}

/// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix.
/// Returns ascending eigenvalues; `vectors` receives matching columns.
inline std::vector<double> jacobi_eigen(Eigen::MatrixXd a, Eigen::MatrixXd *vectors = nullptr) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        order[static_cast<std::size_t>(i)] = i;
    }
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
    std::vector<double> values;
    Eigen::MatrixXd sorted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        values.push_back(a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]));
        sorted.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    if (vectors != nullptr) {
        *vectors = sorted;
    }
    return values;
}

/// erf by composite Simpson quadrature of 2/sqrt(pi) exp(-t^2).
inline double erf_simpson(double x, int intervals = 20000) {
    const double h = x / intervals;
    double s = 1.0 + std::exp(-x * x);
    for (int i = 1; i < intervals; ++i) {
        const double t = i * h;
        s += (i % 2 == 1 ? 4.0 : 2.0) * std::exp(-t * t);
    }
    return 2.0 / std::sqrt(std::numbers::pi) * s * h / 3.0;
}

} // namespace oracle
