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
 * Pauli-string application, expectation values and JSON state I/O.
 */
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gates.hpp"
#include "pauli.hpp"
#include "state.hpp"

namespace toric {

namespace detail {

/// Basis action of a Pauli string: P|j> = sign(j) * global * |j ^ flip>.
struct PauliAction {
    std::size_t flip{0};  // X or Y letters
    std::size_t zmask{0}; // Z or Y letters
    cplx global{1.0, 0.0};

    [[nodiscard]] cplx coefficient(std::size_t j) const {
        return (std::popcount(j & zmask) & 1) ? -global : global;
    }
};

inline PauliAction pauli_action(const PauliString &p, std::size_t n) {
    if (p.size() != n) {
        throw std::invalid_argument("Pauli string size " +
                                    std::to_string(p.size()) +
                                    " does not match state size " +
                                    std::to_string(n));
    }
    PauliAction act;
    for (std::size_t q = 0; q < n; ++q) {
        const auto letter = p.letter(q);
        const std::size_t bit = std::size_t{1} << qubit_bit(n, q);
        if (letter == Pauli::X || letter == Pauli::Y) {
            act.flip |= bit;
        }
        if (letter == Pauli::Z || letter == Pauli::Y) {
            act.zmask |= bit;
        }
    }
    // Y = i X Z acting on |b>: i (-1)^b |1-b>.
    constexpr cplx powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    act.global = powers[(p.phase() + p.y_count()) % 4];
    return act;
}

} // namespace detail

inline void apply_pauli_string(StateVector &psi, const PauliString &p) {
    const auto act = detail::pauli_action(p, psi.num_qubits());
    std::vector<cplx> out(psi.dim());
    for (std::size_t j = 0; j < psi.dim(); ++j) {
        out[j ^ act.flip] = act.coefficient(j) * psi[j];
    }
    std::copy(out.begin(), out.end(), psi.data().begin());
}

/// rho <- P rho P^dagger.
inline void apply_pauli_string(DensityMatrix &rho, const PauliString &p) {
    const auto act = detail::pauli_action(p, rho.num_qubits());
    const std::size_t dim = rho.dim();
    std::vector<cplx> out(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const cplx ci = act.coefficient(i);
        for (std::size_t j = 0; j < dim; ++j) {
            out[(i ^ act.flip) * dim + (j ^ act.flip)] =
                ci * std::conj(act.coefficient(j)) * rho(i, j);
        }
    }
    std::copy(out.begin(), out.end(), rho.data().begin());
}

/// <psi|P|psi>, complex in general.
inline cplx pauli_expectation(const StateVector &psi, const PauliString &p) {
    const auto act = detail::pauli_action(p, psi.num_qubits());
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < psi.dim(); ++j) {
        acc += std::conj(psi[j ^ act.flip]) * act.coefficient(j) * psi[j];
    }
    return acc;
}

/// Tr(rho P) = sum_j c(j) rho[j ^ flip, j].
inline cplx pauli_trace(const DensityMatrix &rho, const PauliString &p) {
    const auto act = detail::pauli_action(p, rho.num_qubits());
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < rho.dim(); ++j) {
        acc += act.coefficient(j) * rho(j, j ^ act.flip);
    }
    return acc;
}

inline void require_hermitian(const PauliString &p) {
    if (!p.hermitian()) {
        throw std::invalid_argument(
            "expectation: Pauli string phase must be +1 or -1");
    }
}

inline double expectation(const StateVector &psi, const PauliString &p) {
    require_hermitian(p);
    return pauli_expectation(psi, p).real();
}

inline double expectation(const DensityMatrix &rho, const PauliString &p) {
    require_hermitian(p);
    return pauli_trace(rho, p).real();
}

/// Overlap of two pure states up to global phase, |<a|b>|^2.
inline double overlap(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

/// Dense Hermitian operator as a weighted sum of Pauli strings.
struct PauliTerm {
    double coefficient{0.0};
    PauliString op;
};
using PauliSum = std::vector<PauliTerm>;

inline double energy(const StateVector &psi, const PauliSum &h) {
    double e = 0.0;
    for (const auto &term : h) {
        e += term.coefficient * expectation(psi, term.op);
    }
    return e;
}

// ---------------------------------------------------------------- JSON

inline nlohmann::json complex_array_to_json(std::span<const cplx> values) {
    auto arr = nlohmann::json::array();
    for (const auto &v : values) {
        arr.push_back({v.real(), v.imag()});
    }
    return arr;
}

inline std::vector<cplx> complex_array_from_json(const nlohmann::json &arr) {
    std::vector<cplx> out;
    out.reserve(arr.size());
    for (const auto &pair : arr) {
        if (!pair.is_array() || pair.size() != 2) {
            throw std::invalid_argument("expected [re, im] pair");
        }
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

inline void to_json(nlohmann::json &j, const StateVector &psi) {
    j = nlohmann::json{{"num_qubits", psi.num_qubits()},
                       {"bit_order", std::string(bit_order_tag)},
                       {"amplitudes", complex_array_to_json(psi.data())}};
}

inline StateVector state_from_json(const nlohmann::json &j) {
    if (j.contains("bit_order") &&
        j.at("bit_order").get<std::string>() != bit_order_tag) {
        throw std::invalid_argument("state JSON: unsupported bit order");
    }
    auto psi =
        StateVector::from_amplitudes(complex_array_from_json(j.at("amplitudes")));
    if (j.contains("num_qubits") &&
        j.at("num_qubits").get<std::size_t>() != psi.num_qubits()) {
        throw std::invalid_argument("state JSON: num_qubits mismatch");
    }
    return psi;
}

inline void to_json(nlohmann::json &j, const DensityMatrix &rho) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        rows.push_back(complex_array_to_json(
            rho.data().subspan(i * rho.dim(), rho.dim())));
    }
    j = nlohmann::json{{"num_qubits", rho.num_qubits()},
                       {"bit_order", std::string(bit_order_tag)},
                       {"matrix", std::move(rows)}};
}

inline DensityMatrix density_from_json(const nlohmann::json &j) {
    if (j.contains("bit_order") &&
        j.at("bit_order").get<std::string>() != bit_order_tag) {
        throw std::invalid_argument("density JSON: unsupported bit order");
    }
    const auto n = j.at("num_qubits").get<std::size_t>();
    std::vector<cplx> entries;
    for (const auto &row : j.at("matrix")) {
        auto values = complex_array_from_json(row);
        entries.insert(entries.end(), values.begin(), values.end());
    }
    return DensityMatrix::from_entries(n, std::move(entries));
}

} // namespace toric
