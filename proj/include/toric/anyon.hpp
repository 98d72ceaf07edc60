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
 * Toric-code ground states, anyon pairs, string transport and the braiding
 * interference protocol.
 *
 * The reduced model uses four qubits labelled 0..3 here (1..4 in the usual
 * drawing). Its Hamiltonian is
 *     H = -X0 X1 X2 X3 - Z0 Z1 - Z1 Z2 - Z0 Z3 - Z2 Z3
 * and its ground state is the GHZ state (|0000> + |1111>)/sqrt(2). The
 * e pair is created on qubit 2 and the m particle is carried around the
 * loop X2 X3 X0 X1.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "engine.hpp"
#include "lattice.hpp"
#include "pauli.hpp"

namespace toric {

enum class Species { e, m };

inline std::string_view to_string(Species s) { return s == Species::e ? "e" : "m"; }

/// Protocol variant: braid the m particle around an e particle, or run the
/// same loop with no e particle present.
enum class BraidVariant { braid, control };

inline std::string_view to_string(BraidVariant v) {
    return v == BraidVariant::braid ? "braid" : "control";
}

inline BraidVariant parse_variant(std::string_view name) {
    if (name == "braid") {
        return BraidVariant::braid;
    }
    if (name == "control") {
        return BraidVariant::control;
    }
    throw std::invalid_argument("unknown braid variant '" + std::string(name) + "'");
}

inline constexpr std::size_t reduced_qubits = 4;
/// Qubit that hosts the e pair.
inline constexpr std::size_t e_creation_qubit = 2;
/// Order of the x-string factors around the loop.
inline constexpr std::array<std::size_t, 4> m_loop_order = {2, 3, 0, 1};

/// -sum_s A_s - sum_p B_p.
inline PauliSum toric_hamiltonian(const TorusLattice &lattice) {
    PauliSum h;
    for (auto &g : toric_stabilizers(lattice)) {
        h.push_back({-1.0, std::move(g)});
    }
    return h;
}

inline PauliSum reduced_hamiltonian() {
    return {{-1.0, PauliString::parse("+XXXX")},
            {-1.0, PauliString::parse("+ZZII")},
            {-1.0, PauliString::parse("+IZZI")},
            {-1.0, PauliString::parse("+ZIIZ")},
            {-1.0, PauliString::parse("+IIZZ")}};
}

/**
 * Toric-code ground state prod_s (I + A_s)/2 |0...0>, normalized. Only k = 2
 * fits in the dense engine.
 */
inline StateVector ground_state(const TorusLattice &lattice) {
    if (lattice.degenerate() || lattice.num_edges() > max_qubits) {
        throw std::invalid_argument(
            "ground_state: lattice must have k >= 2 and at most " +
            std::to_string(max_qubits) + " edges");
    }
    StateVector psi{lattice.num_edges()};
    for (std::size_t s = 0; s < lattice.num_vertices(); ++s) {
        StateVector flipped = psi;
        apply_pauli_string(flipped, star_operator(lattice, s));
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            psi[i] = 0.5 * (psi[i] + flipped[i]);
        }
    }
    const double nrm = psi.norm();
    if (nrm < pipeline_tol) {
        throw std::domain_error("ground_state: projection has zero norm");
    }
    psi.scale(1.0 / nrm);
    return psi;
}

/// (I + X0 X1 X2 X3)/sqrt(2) |0000>, the GHZ state.
inline StateVector reduced_ground_state() {
    StateVector psi{reduced_qubits};
    StateVector flipped = psi;
    apply_pauli_string(flipped, PauliString::parse("+XXXX"));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        psi[i] = (psi[i] + flipped[i]) * inv_sqrt2;
    }
    return psi;
}

/// Applies sigma^z (e pair) or sigma^x (m pair) to qubit r.
inline void create_pair(StateVector &psi, std::size_t r, Species species) {
    if (r >= psi.num_qubits()) {
        throw std::out_of_range("create_pair: qubit " + std::to_string(r) +
                                " out of range");
    }
    apply_pauli_string(psi, PauliString::single(psi.num_qubits(), r,
                                                species == Species::e
                                                    ? Pauli::Z
                                                    : Pauli::X));
}

/**
 * Moves an anyon along a path: e particles travel on direct paths under
 * sigma^z, m particles on dual paths under sigma^x. Factors are applied
 * one edge at a time in path order.
 */
inline void apply_string(StateVector &psi, const TorusLattice &lattice,
                         const Path &path, Species species) {
    const PathKind expected =
        species == Species::e ? PathKind::direct : PathKind::dual;
    if (path.kind() != expected) {
        throw std::invalid_argument("apply_string: " +
                                    std::string(to_string(species)) +
                                    " strings need a " +
                                    std::string(to_string(expected)) + " path");
    }
    if (path.lattice_size() != lattice.k() ||
        psi.num_qubits() != lattice.num_edges()) {
        throw std::invalid_argument("apply_string: path, lattice and state disagree");
    }
    for (auto e : path.edges()) {
        create_pair(psi, e, species);
    }
}

/// Gate-level preparation of the reduced ground state from |0000>.
inline Circuit ghz_preparation_circuit() {
    return {Gate::h(0), Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(2, 3)};
}

/// Gates applied after GHZ preparation for each variant.
inline Circuit braid_protocol_circuit(BraidVariant variant) {
    Circuit c;
    if (variant == BraidVariant::braid) {
        c.push_back(Gate::sqrt_z(e_creation_qubit));
    }
    for (auto q : m_loop_order) {
        c.push_back(Gate::x(q));
    }
    if (variant == BraidVariant::braid) {
        c.push_back(Gate::sqrt_z_inv(e_creation_qubit));
    }
    return c;
}

/// The whole network: GHZ preparation followed by the protocol.
inline Circuit braid_network(BraidVariant variant) {
    Circuit c = ghz_preparation_circuit();
    const Circuit tail = braid_protocol_circuit(variant);
    c.insert(c.end(), tail.begin(), tail.end());
    return c;
}

/**
 * Relative phase of the branch_qubit = 1 component against the
 * branch_qubit = 0 component, measured relative to a reference state:
 *     (<ref_1|psi_1> / <ref_0|psi_0>) / |...|
 * where psi_b is the projection of psi onto branch_qubit = b. On GHZ-type
 * states this is the phase of the |1111> amplitude relative to |0000>.
 */
inline cplx extract_phase(const StateVector &final_state,
                          const StateVector &reference,
                          std::size_t branch_qubit = e_creation_qubit) {
    const std::size_t n = final_state.num_qubits();
    if (reference.num_qubits() != n) {
        throw std::invalid_argument("extract_phase: size mismatch");
    }
    if (branch_qubit >= n) {
        throw std::out_of_range("extract_phase: branch qubit out of range");
    }
    const std::size_t mask = std::size_t{1} << qubit_bit(n, branch_qubit);
    cplx branch0{0.0, 0.0};
    cplx branch1{0.0, 0.0};
    for (std::size_t i = 0; i < final_state.dim(); ++i) {
        const cplx term = std::conj(reference[i]) * final_state[i];
        ((i & mask) ? branch1 : branch0) += term;
    }
    if (std::abs(branch0) < pipeline_tol || std::abs(branch1) < pipeline_tol) {
        throw std::domain_error(
            "extract_phase: branch amplitude too small, phase undefined");
    }
    const cplx ratio = branch1 / branch0;
    return ratio / std::abs(ratio);
}

/// Same quantity from density matrices: arg of rho[1..1, 0..0] against ref.
inline cplx extract_phase(const DensityMatrix &final_state,
                          const DensityMatrix &reference) {
    if (final_state.num_qubits() != reference.num_qubits()) {
        throw std::invalid_argument("extract_phase: size mismatch");
    }
    const std::size_t top = final_state.dim() - 1;
    const cplx a = final_state(top, 0);
    const cplx b = reference(top, 0);
    if (std::abs(a) < pipeline_tol || std::abs(b) < pipeline_tol) {
        throw std::domain_error(
            "extract_phase: coherence too small, phase undefined");
    }
    const cplx ratio = a / b;
    return ratio / std::abs(ratio);
}

struct StateSnapshot {
    std::string time;  // "t0", "t1", "t2"
    std::string label; // what the state is
    StateVector state;
};

struct BraidExperimentRecord {
    std::string initial_label;
    BraidVariant variant{BraidVariant::braid};
    std::size_t num_qubits{reduced_qubits};
    std::vector<std::string> operations;
    std::vector<StateSnapshot> snapshots;
    cplx phase{1.0, 0.0};
    cplx expected_phase{1.0, 0.0};

    [[nodiscard]] const StateVector &initial() const { return snapshots.front().state; }
    [[nodiscard]] const StateVector &final_state() const { return snapshots.back().state; }
};

inline std::string final_time_label(BraidVariant v) {
    return v == BraidVariant::braid ? "t1" : "t2";
}

/// Exact run of the four-qubit network.
inline BraidExperimentRecord run_braid_experiment(BraidVariant variant) {
    BraidExperimentRecord rec;
    rec.initial_label = "|0000>";
    rec.variant = variant;

    StateVector psi{reduced_qubits};
    for (const auto &g : ghz_preparation_circuit()) {
        apply_gate(psi, g);
        rec.operations.push_back(g.str());
    }
    const StateVector ghz = psi;
    rec.snapshots.push_back({"t0", "ground state (|0000>+|1111>)/sqrt2", ghz});

    for (const auto &g : braid_protocol_circuit(variant)) {
        apply_gate(psi, g);
        rec.operations.push_back(g.str());
    }
    rec.snapshots.push_back(
        {final_time_label(variant),
         variant == BraidVariant::braid ? "after braiding (|0000>-|1111>)/sqrt2"
                                        : "after empty loop (|0000>+|1111>)/sqrt2",
         psi});
    rec.phase = extract_phase(psi, ghz);
    rec.expected_phase = variant == BraidVariant::braid ? cplx{-1.0, 0.0}
                                                        : cplx{1.0, 0.0};
    return rec;
}

/**
 * The same protocol on the full k = 2 lattice: the e pair sits on the edge of
 * reduced qubit 2 and the m particle circles vertex 0 along the dual loop
 * through the quartet edges.
 */
inline BraidExperimentRecord run_braid_experiment_full_lattice(BraidVariant variant) {
    const TorusLattice lattice{2};
    const auto quartet = braid_quartet(lattice);
    const std::size_t e_edge = quartet[e_creation_qubit];

    BraidExperimentRecord rec;
    rec.initial_label = "toric ground state, k=2";
    rec.variant = variant;
    rec.num_qubits = lattice.num_edges();

    StateVector psi = ground_state(lattice);
    const StateVector xi = psi;
    rec.snapshots.push_back({"t0", "toric ground state", xi});

    if (variant == BraidVariant::braid) {
        apply_gate(psi, Gate::sqrt_z(e_edge));
        rec.operations.push_back(Gate::sqrt_z(e_edge).str());
    }
    std::vector<std::size_t> loop;
    for (auto q : m_loop_order) {
        loop.push_back(quartet[q]);
    }
    apply_string(psi, lattice, Path::from_edges(lattice, PathKind::dual, loop),
                 Species::m);
    std::string loop_name = "Sx(";
    for (std::size_t i = 0; i < loop.size(); ++i) {
        loop_name += (i ? "," : "") + std::to_string(loop[i]);
    }
    rec.operations.push_back(loop_name + ")");
    if (variant == BraidVariant::braid) {
        apply_gate(psi, Gate::sqrt_z_inv(e_edge));
        rec.operations.push_back(Gate::sqrt_z_inv(e_edge).str());
    }
    rec.snapshots.push_back({final_time_label(variant), "final", psi});
    rec.phase = extract_phase(psi, xi, e_edge);
    rec.expected_phase = variant == BraidVariant::braid ? cplx{-1.0, 0.0}
                                                        : cplx{1.0, 0.0};
    return rec;
}

inline void to_json(nlohmann::json &j, const StateSnapshot &s) {
    j = nlohmann::json{{"time", s.time}, {"label", s.label}, {"state", s.state}};
}

inline void to_json(nlohmann::json &j, const BraidExperimentRecord &rec) {
    j = nlohmann::json{
        {"initial", rec.initial_label},
        {"variant", std::string(to_string(rec.variant))},
        {"num_qubits", rec.num_qubits},
        {"operations", rec.operations},
        {"snapshots", rec.snapshots},
        {"phase", {rec.phase.real(), rec.phase.imag()}},
        {"expected_phase", {rec.expected_phase.real(), rec.expected_phase.imag()}}};
}

} // namespace toric
