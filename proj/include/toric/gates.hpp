// Copyright 2026 The toric-anyons Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Gate set and in-place gate kernels for StateVector and DensityMatrix.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "state.hpp"

namespace toric {

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

enum class GateKind { H, X, Z, SqrtZ, SqrtZInv, CNOT, Rx, Ry, Rz };

struct Gate {
    GateKind kind{GateKind::X};
    std::size_t target{0};
    std::size_t control{0}; // CNOT only
    double angle{0.0};      // Rx/Ry/Rz only

    static Gate h(std::size_t q) { return {GateKind::H, q}; }
    static Gate x(std::size_t q) { return {GateKind::X, q}; }
    static Gate z(std::size_t q) { return {GateKind::Z, q}; }
    /// diag(1, i)
    static Gate sqrt_z(std::size_t q) { return {GateKind::SqrtZ, q}; }
    /// diag(1, -i)
    static Gate sqrt_z_inv(std::size_t q) { return {GateKind::SqrtZInv, q}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, target, control};
    }
    /// exp(-i theta X / 2)
    static Gate rx(std::size_t q, double theta) {
        return {GateKind::Rx, q, 0, theta};
    }
    static Gate ry(std::size_t q, double theta) {
        return {GateKind::Ry, q, 0, theta};
    }
    static Gate rz(std::size_t q, double theta) {
        return {GateKind::Rz, q, 0, theta};
    }

    [[nodiscard]] bool two_qubit() const noexcept {
        return kind == GateKind::CNOT;
    }

    [[nodiscard]] std::string name() const {
        switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
        case GateKind::SqrtZ:
            return "SqrtZ";
        case GateKind::SqrtZInv:
            return "SqrtZInv";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::Rx:
            return "Rx";
        case GateKind::Ry:
            return "Ry";
        case GateKind::Rz:
            return "Rz";
        }
        return "?";
    }

    /// Name with operands, e.g. "CNOT(0,1)" or "Rx(2,1.5707963267948966)".
    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os.precision(17);
        os << name() << '(';
        if (two_qubit()) {
            os << control << ',';
        }
        os << target;
        if (kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz) {
            os << ',' << angle;
        }
        os << ')';
        return os.str();
    }

    [[nodiscard]] Gate inverse() const {
        Gate g = *this;
        switch (kind) {
        case GateKind::SqrtZ:
            g.kind = GateKind::SqrtZInv;
            break;
        case GateKind::SqrtZInv:
            g.kind = GateKind::SqrtZ;
            break;
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
            g.angle = -angle;
            break;
        default:
            break;
        }
        return g;
    }

    /// Single-qubit matrix; throws for CNOT.
    [[nodiscard]] Mat2 matrix() const {
        using namespace std::complex_literals;
        const double r = inv_sqrt2;
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        switch (kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Z:
            return {1.0, 0.0, 0.0, -1.0};
        case GateKind::SqrtZ:
            return {1.0, 0.0, 0.0, 1i};
        case GateKind::SqrtZInv:
            return {1.0, 0.0, 0.0, -1i};
        case GateKind::Rx:
            return {c, -1i * s, -1i * s, c};
        case GateKind::Ry:
            return {c, -s, s, c};
        case GateKind::Rz:
            return {std::exp(-0.5i * angle), 0.0, 0.0, std::exp(0.5i * angle)};
        case GateKind::CNOT:
            break;
        }
        throw std::logic_error("Gate::matrix: CNOT has no 2x2 matrix");
    }
};

using Circuit = std::vector<Gate>;

namespace detail {

/// Applies u to the index bit `bit` of a flat amplitude array.
inline void apply_1q(std::span<cplx> data, std::size_t bit, const Mat2 &u) {
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t base = 0; base < data.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const cplx a0 = data[i0];
            const cplx a1 = data[i1];
            data[i0] = u[0] * a0 + u[1] * a1;
            data[i1] = u[2] * a0 + u[3] * a1;
        }
    }
}

inline void apply_cx(std::span<cplx> data, std::size_t control_bit,
                     std::size_t target_bit) {
    const std::size_t cmask = std::size_t{1} << control_bit;
    const std::size_t tmask = std::size_t{1} << target_bit;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(data[i], data[i | tmask]);
        }
    }
}

inline Mat2 conj(const Mat2 &u) {
    return {std::conj(u[0]), std::conj(u[1]), std::conj(u[2]), std::conj(u[3])};
}

inline void check_gate(const Gate &g, std::size_t n) {
    if (g.target >= n) {
        throw std::out_of_range("gate target " + std::to_string(g.target) +
                                " out of range for " + std::to_string(n) +
                                " qubits");
    }
    if (g.two_qubit()) {
        if (g.control >= n) {
            throw std::out_of_range("gate control out of range");
        }
        if (g.control == g.target) {
            throw std::invalid_argument("CNOT control and target coincide");
        }
    }
}

} // namespace detail

inline void apply_gate(StateVector &psi, const Gate &g) {
    const std::size_t n = psi.num_qubits();
    detail::check_gate(g, n);
    if (g.two_qubit()) {
        detail::apply_cx(psi.data(), qubit_bit(n, g.control),
                         qubit_bit(n, g.target));
    } else {
        detail::apply_1q(psi.data(), qubit_bit(n, g.target), g.matrix());
    }
}

/**
 * rho <- U rho U^dagger. The row-major matrix is treated as a 2n-qubit vector:
 * row bits sit above column bits, and the column side receives conj(U).
 */
inline void apply_gate(DensityMatrix &rho, const Gate &g) {
    const std::size_t n = rho.num_qubits();
    detail::check_gate(g, n);
    if (g.two_qubit()) {
        const auto cb = qubit_bit(n, g.control);
        const auto tb = qubit_bit(n, g.target);
        detail::apply_cx(rho.data(), cb + n, tb + n);
        detail::apply_cx(rho.data(), cb, tb);
    } else {
        const auto u = g.matrix();
        const auto b = qubit_bit(n, g.target);
        detail::apply_1q(rho.data(), b + n, u);
        detail::apply_1q(rho.data(), b, detail::conj(u));
    }
}

template <class State> void apply_circuit(State &state, const Circuit &circuit) {
    for (const auto &g : circuit) {
        apply_gate(state, g);
    }
}

} // namespace toric
