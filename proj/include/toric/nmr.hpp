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
 * Liquid-state NMR emulation of the braiding network on four coupled spins.
 *
 * System Hamiltonian in the rotating frame (angular units, I_z = Z/2):
 *     H_sys = sum_i w_i I_z^i + 2 pi sum_{i<j} J_ij I_z^i I_z^j
 * All terms are diagonal in the computational basis, so free evolution is an
 * exact phase per basis state.
 *
 * Gates are lowered to hard rotations and delays:
 *  - x/y rotations are RF pulses with nominal lengths in [200, 500] us;
 *  - z rotations are frame updates with zero duration;
 *  - CNOT(c, t) = H_t CZ H_t, with CZ built from a 1/(2|J_ct|) delay whose
 *    unwanted terms are removed by ideal pi echoes.
 *
 * Echo timing inside a CZ delay follows Sylvester-Hadamard (Walsh) rows: the
 * delay is cut into N equal segments and spin k carries the toggling sign
 * (-1)^popcount(row_k & m) in segment m. Control and target share a row, every
 * spectator gets its own. Distinct nonzero rows and their pairwise products
 * are balanced, so every chemical shift and every coupling except J_ct
 * averages to zero while J_ct acts for the full delay.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <future>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <json.hpp>

#include "gates.hpp"
#include "state.hpp"

namespace toric::nmr {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct SpinSystem {
    /// Rotating-frame offsets w_i in rad/s.
    std::vector<double> larmor;
    /// Symmetric scalar couplings J_ij in Hz, zero diagonal.
    std::vector<std::vector<double>> coupling_hz;

    [[nodiscard]] std::size_t num_spins() const noexcept { return larmor.size(); }

    [[nodiscard]] double coupling(std::size_t i, std::size_t j) const {
        return coupling_hz.at(i).at(j);
    }

    /**
     * Four 13C spins of crotonic acid. The couplings are the measured values;
     * the offsets are a fixed synthetic set (2 pi x {-1650, 1230, 2870, -3410}
     * Hz), since every compiled schedule refocuses them.
     */
    static SpinSystem crotonic_acid() {
        SpinSystem sys;
        sys.larmor = {two_pi * -1650.0, two_pi * 1230.0, two_pi * 2870.0,
                      two_pi * -3410.0};
        sys.coupling_hz = {{0.0, 71.2, -1.3, 7.0},
                           {71.2, 0.0, 69.4, -1.6},
                           {-1.3, 69.4, 0.0, 41.3},
                           {7.0, -1.6, 41.3, 0.0}};
        return sys;
    }

    void validate() const {
        const std::size_t n = num_spins();
        check_qubit_count(n);
        if (coupling_hz.size() != n) {
            throw std::invalid_argument("SpinSystem: coupling matrix has wrong size");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (coupling_hz[i].size() != n) {
                throw std::invalid_argument("SpinSystem: coupling matrix not square");
            }
            if (coupling_hz[i][i] != 0.0) {
                throw std::invalid_argument("SpinSystem: nonzero diagonal coupling");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (coupling_hz[i][j] != coupling_hz[j][i]) {
                    throw std::invalid_argument("SpinSystem: couplings not symmetric");
                }
            }
        }
    }

    /// Eigenvalue of H_sys on basis state `index` (rad/s).
    [[nodiscard]] double energy(std::size_t index) const {
        const std::size_t n = num_spins();
        std::vector<double> z(n);
        for (std::size_t q = 0; q < n; ++q) {
            z[q] = ((index >> qubit_bit(n, q)) & 1U) ? -1.0 : 1.0;
        }
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            e += 0.5 * larmor[i] * z[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                e += two_pi * coupling_hz[i][j] * 0.25 * z[i] * z[j];
            }
        }
        return e;
    }

    [[nodiscard]] std::vector<double> energies() const {
        std::vector<double> out(std::size_t{1} << num_spins());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = energy(i);
        }
        return out;
    }
};

inline void to_json(nlohmann::json &j, const SpinSystem &sys) {
    j = nlohmann::json{{"larmor_rad_per_s", sys.larmor},
                       {"coupling_hz", sys.coupling_hz}};
}

inline void from_json(const nlohmann::json &j, SpinSystem &sys) {
    sys.larmor = j.at("larmor_rad_per_s").get<std::vector<double>>();
    sys.coupling_hz = j.at("coupling_hz").get<std::vector<std::vector<double>>>();
    sys.validate();
}

// ------------------------------------------------------------------ noise

struct RfBranch {
    double scale{1.0};
    double weight{1.0};
};

struct NoiseModel {
    /// Fractional over-rotation of every RF pulse.
    double rotation_error{0.0};
    /// RF amplitude distribution; every x/y angle is multiplied by `scale`.
    std::vector<RfBranch> rf{RfBranch{}};
    /// Per-spin 1/T2 in 1/s applied during delays; empty means none.
    std::vector<double> dephasing;
    /// Let H_sys act while RF pulses are on. Off in the ideal model.
    bool evolve_during_pulses{false};

    static NoiseModel ideal() { return {}; }

    static NoiseModel uniform(double rotation_error, double dephasing_rate,
                              std::size_t spins) {
        NoiseModel m;
        m.rotation_error = rotation_error;
        m.dephasing.assign(spins, dephasing_rate);
        return m;
    }

    void validate(std::size_t spins) const {
        if (!std::isfinite(rotation_error) || rotation_error <= -1.0) {
            throw std::invalid_argument("NoiseModel: rotation error must be > -1");
        }
        if (rf.empty()) {
            throw std::invalid_argument("NoiseModel: RF distribution is empty");
        }
        double total = 0.0;
        for (const auto &b : rf) {
            if (!(b.weight >= 0.0) || !(b.scale > 0.0) || !std::isfinite(b.scale)) {
                throw std::invalid_argument(
                    "NoiseModel: RF weights must be >= 0 and scales > 0");
            }
            total += b.weight;
        }
        if (std::abs(total - 1.0) > construction_tol) {
            throw std::invalid_argument("NoiseModel: RF weights must sum to 1");
        }
        if (!dephasing.empty() && dephasing.size() != spins) {
            throw std::invalid_argument("NoiseModel: one dephasing rate per spin");
        }
        for (double g : dephasing) {
            if (!(g >= 0.0) || !std::isfinite(g)) {
                throw std::invalid_argument("NoiseModel: dephasing rates must be >= 0");
            }
        }
    }
};

inline void to_json(nlohmann::json &j, const RfBranch &b) {
    j = nlohmann::json{{"scale", b.scale}, {"weight", b.weight}};
}

inline void from_json(const nlohmann::json &j, RfBranch &b) {
    b.scale = j.at("scale").get<double>();
    b.weight = j.at("weight").get<double>();
}

inline void to_json(nlohmann::json &j, const NoiseModel &m) {
    j = nlohmann::json{{"rotation_error", m.rotation_error},
                       {"rf", m.rf},
                       {"dephasing", m.dephasing},
                       {"evolve_during_pulses", m.evolve_during_pulses}};
}

// --------------------------------------------------------------- schedule

enum class Axis { x, y, z };

inline char to_char(Axis a) { return a == Axis::x ? 'x' : (a == Axis::y ? 'y' : 'z'); }

struct Rotation {
    std::size_t qubit{0};
    Axis axis{Axis::x};
    double angle{0.0};
    double duration{0.0}; // seconds; zero for frame updates
};

struct FreeEvolution {
    double tau{0.0};
};

/// Ideal, instantaneous pi pulse about x.
struct Echo {
    std::size_t qubit{0};
};

using PulseEvent = std::variant<Rotation, FreeEvolution, Echo>;

struct PulseSchedule {
    std::size_t num_qubits{0};
    std::vector<PulseEvent> events;

    [[nodiscard]] double duration() const {
        double total = 0.0;
        for (const auto &ev : events) {
            if (const auto *r = std::get_if<Rotation>(&ev)) {
                total += r->duration;
            } else if (const auto *f = std::get_if<FreeEvolution>(&ev)) {
                total += f->tau;
            }
        }
        return total;
    }

    [[nodiscard]] bool empty() const noexcept { return events.empty(); }

    void append(const PulseSchedule &other) {
        events.insert(events.end(), other.events.begin(), other.events.end());
    }

    /// Columns: event, qubit, axis, angle (rad), duration (s).
    void write_table(std::ostream &os) const {
        os << "event,qubit,axis,angle,duration\n";
        for (const auto &ev : events) {
            std::visit(
                [&os](const auto &e) {
                    using E = std::decay_t<decltype(e)>;
                    if constexpr (std::is_same_v<E, Rotation>) {
                        os << (e.axis == Axis::z ? "frame" : "pulse") << ','
                           << e.qubit << ',' << to_char(e.axis) << ','
                           << e.angle << ',' << e.duration << '\n';
                    } else if constexpr (std::is_same_v<E, FreeEvolution>) {
                        os << "delay,,,," << e.tau << '\n';
                    } else {
                        os << "echo," << e.qubit << ",x," << std::numbers::pi
                           << ",0\n";
                    }
                },
                ev);
        }
    }
};

inline void to_json(nlohmann::json &j, const PulseSchedule &sched) {
    auto events = nlohmann::json::array();
    for (const auto &ev : sched.events) {
        std::visit(
            [&events](const auto &e) {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, Rotation>) {
                    events.push_back({{"event", "rotation"},
                                      {"qubit", e.qubit},
                                      {"axis", std::string(1, to_char(e.axis))},
                                      {"angle", e.angle},
                                      {"duration", e.duration}});
                } else if constexpr (std::is_same_v<E, FreeEvolution>) {
                    events.push_back({{"event", "delay"}, {"tau", e.tau}});
                } else {
                    events.push_back({{"event", "echo"}, {"qubit", e.qubit}});
                }
            },
            ev);
    }
    j = nlohmann::json{{"num_qubits", sched.num_qubits},
                       {"duration", sched.duration()},
                       {"events", std::move(events)}};
}

// ------------------------------------------------------------ primitives

/// (1 - eps)/2^n I + eps |0...0><0...0|.
inline DensityMatrix pps(std::size_t n, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("pps: polarization must lie in (0, 1]");
    }
    DensityMatrix rho{n};
    const double background = (1.0 - epsilon) / static_cast<double>(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        rho(i, i) = background;
    }
    rho(0, 0) += epsilon;
    return rho;
}

/// Deviation part rescaled to unit trace: (rho - (1 - eps)/2^n I) / eps.
inline DensityMatrix normalized_deviation(const DensityMatrix &rho, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("normalized_deviation: polarization must lie in (0, 1]");
    }
    DensityMatrix out = rho;
    const double background = (1.0 - epsilon) / static_cast<double>(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        out(i, i) -= background;
    }
    out *= 1.0 / epsilon;
    return out;
}

/**
 * rho <- U rho U^dagger with U = exp(-i H_sys tau), followed by per-spin
 * dephasing: coherence rho_ij decays by exp(-tau * sum of rates of spins
 * whose bits differ between i and j).
 */
inline void free_evolution(DensityMatrix &rho, const SpinSystem &sys, double tau,
                           const std::vector<double> &dephasing = {}) {
    if (tau < 0.0) {
        throw std::invalid_argument("free_evolution: tau must be >= 0");
    }
    const std::size_t n = rho.num_qubits();
    if (sys.num_spins() != n) {
        throw std::invalid_argument("free_evolution: spin count mismatch");
    }
    if (tau == 0.0) {
        return;
    }
    const auto e = sys.energies();
    std::vector<cplx> phase(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        phase[i] = std::polar(1.0, -e[i] * tau);
    }
    std::vector<double> decay;
    if (!dephasing.empty()) {
        // decay[d] for the XOR pattern d of differing bits.
        decay.resize(rho.dim());
        for (std::size_t d = 0; d < rho.dim(); ++d) {
            double rate = 0.0;
            for (std::size_t q = 0; q < n; ++q) {
                if ((d >> qubit_bit(n, q)) & 1U) {
                    rate += dephasing[q];
                }
            }
            decay[d] = std::exp(-rate * tau);
        }
    }
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            cplx v = rho(i, j) * phase[i] * std::conj(phase[j]);
            if (!decay.empty()) {
                v *= decay[i ^ j];
            }
            rho(i, j) = v;
        }
    }
}

inline void free_evolution(StateVector &psi, const SpinSystem &sys, double tau) {
    if (tau < 0.0) {
        throw std::invalid_argument("free_evolution: tau must be >= 0");
    }
    if (sys.num_spins() != psi.num_qubits()) {
        throw std::invalid_argument("free_evolution: spin count mismatch");
    }
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        psi[i] *= std::polar(1.0, -sys.energy(i) * tau);
    }
}

// -------------------------------------------------------------- compiler

struct CompileOptions {
    /// CNOTs are only allowed across couplings with |J| at least this (Hz).
    double coupling_threshold_hz{5.0};
    double min_pulse_length{200e-6};
    double max_pulse_length{500e-6};
};

/// Nominal RF pulse length: linear in |angle| from min (0) to max (pi).
inline double pulse_length(double angle, const CompileOptions &opt) {
    const double frac = std::min(std::abs(angle), std::numbers::pi) / std::numbers::pi;
    return opt.min_pulse_length + frac * (opt.max_pulse_length - opt.min_pulse_length);
}

namespace detail {

inline void emit_rotation(PulseSchedule &s, std::size_t q, Axis axis, double angle,
                          const CompileOptions &opt) {
    s.events.emplace_back(
        Rotation{q, axis, angle, axis == Axis::z ? 0.0 : pulse_length(angle, opt)});
}

inline void emit_single(PulseSchedule &s, const Gate &g, const CompileOptions &opt) {
    constexpr double pi = std::numbers::pi;
    const std::size_t q = g.target;
    switch (g.kind) {
    case GateKind::H: // H = i Rx(pi) Ry(pi/2)
        emit_rotation(s, q, Axis::y, pi / 2, opt);
        emit_rotation(s, q, Axis::x, pi, opt);
        break;
    case GateKind::X:
        emit_rotation(s, q, Axis::x, pi, opt);
        break;
    case GateKind::Z:
        emit_rotation(s, q, Axis::z, pi, opt);
        break;
    case GateKind::SqrtZ:
        emit_rotation(s, q, Axis::z, pi / 2, opt);
        break;
    case GateKind::SqrtZInv:
        emit_rotation(s, q, Axis::z, -pi / 2, opt);
        break;
    case GateKind::Rx:
        emit_rotation(s, q, Axis::x, g.angle, opt);
        break;
    case GateKind::Ry:
        emit_rotation(s, q, Axis::y, g.angle, opt);
        break;
    case GateKind::Rz:
        emit_rotation(s, q, Axis::z, g.angle, opt);
        break;
    case GateKind::CNOT:
        throw std::logic_error("emit_single: CNOT");
    }
}

/// Walsh-refocused delay that leaves exp(-i sgn(J) pi/4 Z_c Z_t).
inline void emit_zz_delay(PulseSchedule &s, std::size_t c, std::size_t t,
                          double j_hz, std::size_t n) {
    const std::size_t segments = std::bit_ceil(n);
    std::vector<std::size_t> row(n);
    std::size_t next = 2;
    for (std::size_t q = 0; q < n; ++q) {
        row[q] = (q == c || q == t) ? 1 : next++;
    }
    auto sign = [&](std::size_t q, std::size_t m) {
        return (std::popcount(row[q] & m) & 1) != 0;
    };
    const double tau = 1.0 / (2.0 * std::abs(j_hz)) / static_cast<double>(segments);
    for (std::size_t m = 0; m < segments; ++m) {
        for (std::size_t q = 0; q < n; ++q) {
            const bool before = m == 0 ? false : sign(q, m - 1);
            if (before != sign(q, m)) {
                s.events.emplace_back(Echo{q});
            }
        }
        s.events.emplace_back(FreeEvolution{tau});
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (sign(q, segments - 1)) {
            s.events.emplace_back(Echo{q});
        }
    }
}

} // namespace detail

/**
 * Lowers a circuit to pulses and delays. Ideal execution of the result equals
 * the circuit unitary up to a global phase.
 */
inline PulseSchedule compile_circuit(const Circuit &circuit, const SpinSystem &sys,
                                     const CompileOptions &opt = {}) {
    sys.validate();
    const std::size_t n = sys.num_spins();
    PulseSchedule sched{n, {}};
    constexpr double half_pi = std::numbers::pi / 2;
    for (const auto &g : circuit) {
        toric::detail::check_gate(g, n);
        if (!g.two_qubit()) {
            detail::emit_single(sched, g, opt);
            continue;
        }
        const double j = sys.coupling(g.control, g.target);
        if (std::abs(j) < opt.coupling_threshold_hz) {
            throw std::invalid_argument(
                "compile_circuit: CNOT(" + std::to_string(g.control) + "," +
                std::to_string(g.target) + ") across coupling of " +
                std::to_string(j) + " Hz, below threshold");
        }
        // CZ ~ Rz_c(-s pi/2) Rz_t(-s pi/2) exp(-i s pi/4 Z_c Z_t), s = sgn(J).
        const double s = j > 0 ? 1.0 : -1.0;
        detail::emit_single(sched, Gate::h(g.target), opt);
        detail::emit_zz_delay(sched, g.control, g.target, j, n);
        detail::emit_rotation(sched, g.control, Axis::z, -s * half_pi, opt);
        detail::emit_rotation(sched, g.target, Axis::z, -s * half_pi, opt);
        detail::emit_single(sched, Gate::h(g.target), opt);
    }
    return sched;
}

// -------------------------------------------------------------- execution

namespace detail {

inline Gate rotation_gate(std::size_t q, Axis axis, double angle) {
    switch (axis) {
    case Axis::x:
        return Gate::rx(q, angle);
    case Axis::y:
        return Gate::ry(q, angle);
    case Axis::z:
        break;
    }
    return Gate::rz(q, angle);
}

/// exp(-i (H_sys + (angle/d) sigma_axis/2) d) on the full register.
inline Eigen::MatrixXcd pulse_propagator(const SpinSystem &sys, const Rotation &r,
                                         double angle) {
    using namespace std::complex_literals;
    const std::size_t n = sys.num_spins();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    const auto e = sys.energies();
    for (Eigen::Index i = 0; i < dim; ++i) {
        h(i, i) = e[static_cast<std::size_t>(i)];
    }
    const double omega = angle / r.duration;
    const auto mask = static_cast<Eigen::Index>(std::size_t{1} << qubit_bit(n, r.qubit));
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Eigen::Index k = i ^ mask;
        const bool one = (i & mask) != 0;
        // <k| sigma |i>
        const cplx elem = r.axis == Axis::x ? cplx{1.0, 0.0}
                                            : (one ? cplx{0.0, -1.0} : cplx{0.0, 1.0});
        h(k, i) += 0.5 * omega * elem;
    }
    Eigen::MatrixXcd gen = (-1i * r.duration) * h;
    return gen.exp();
}

inline void apply_dense(DensityMatrix &rho, const Eigen::MatrixXcd &u) {
    const Eigen::MatrixXcd m = rho.to_eigen();
    const Eigen::MatrixXcd out = u * m * u.adjoint();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            rho(i, j) = out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
}

inline DensityMatrix run_branch(DensityMatrix rho, const PulseSchedule &sched,
                                const SpinSystem &sys, const NoiseModel &noise,
                                double rf_scale) {
    const double gain = rf_scale * (1.0 + noise.rotation_error);
    for (const auto &ev : sched.events) {
        if (const auto *r = std::get_if<Rotation>(&ev)) {
            if (r->axis == Axis::z) {
                apply_gate(rho, rotation_gate(r->qubit, Axis::z, r->angle));
            } else if (noise.evolve_during_pulses && r->duration > 0.0) {
                apply_dense(rho, pulse_propagator(sys, *r, r->angle * gain));
            } else {
                apply_gate(rho, rotation_gate(r->qubit, r->axis, r->angle * gain));
            }
        } else if (const auto *f = std::get_if<FreeEvolution>(&ev)) {
            free_evolution(rho, sys, f->tau, noise.dephasing);
        } else {
            apply_gate(rho, Gate::x(std::get<Echo>(ev).qubit));
        }
    }
    return rho;
}

} // namespace detail

/**
 * Executes a schedule. Each RF branch runs independently (concurrently when
 * there are several) and the results are mixed by weight in branch order.
 */
inline DensityMatrix run_schedule(const DensityMatrix &rho, const PulseSchedule &sched,
                                  const SpinSystem &sys,
                                  const NoiseModel &noise = NoiseModel::ideal()) {
    sys.validate();
    noise.validate(sys.num_spins());
    if (rho.num_qubits() != sys.num_spins() || sched.num_qubits != sys.num_spins()) {
        throw std::invalid_argument("run_schedule: qubit counts disagree");
    }
    if (noise.rf.size() == 1) {
        return detail::run_branch(rho, sched, sys, noise, noise.rf.front().scale);
    }
    std::vector<std::future<DensityMatrix>> branches;
    branches.reserve(noise.rf.size());
    for (const auto &b : noise.rf) {
        branches.push_back(std::async(std::launch::async, [&, scale = b.scale] {
            return detail::run_branch(rho, sched, sys, noise, scale);
        }));
    }
    DensityMatrix mixed = DensityMatrix::from_entries(
        rho.num_qubits(), std::vector<cplx>(rho.dim() * rho.dim()));
    for (std::size_t k = 0; k < branches.size(); ++k) {
        DensityMatrix part = branches[k].get();
        part *= noise.rf[k].weight;
        mixed += part;
    }
    return mixed;
}

/// Ideal pure-state execution.
inline void run_schedule(StateVector &psi, const PulseSchedule &sched,
                         const SpinSystem &sys) {
    if (psi.num_qubits() != sys.num_spins() || sched.num_qubits != sys.num_spins()) {
        throw std::invalid_argument("run_schedule: qubit counts disagree");
    }
    for (const auto &ev : sched.events) {
        if (const auto *r = std::get_if<Rotation>(&ev)) {
            apply_gate(psi, detail::rotation_gate(r->qubit, r->axis, r->angle));
        } else if (const auto *f = std::get_if<FreeEvolution>(&ev)) {
            free_evolution(psi, sys, f->tau);
        } else {
            apply_gate(psi, Gate::x(std::get<Echo>(ev).qubit));
        }
    }
}

/// Ideal propagator of a schedule, column j = image of basis state j.
inline Eigen::MatrixXcd schedule_propagator(const PulseSchedule &sched,
                                            const SpinSystem &sys) {
    const std::size_t n = sys.num_spins();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        auto psi = StateVector::basis(n, static_cast<std::size_t>(j));
        run_schedule(psi, sched, sys);
        for (Eigen::Index i = 0; i < dim; ++i) {
            u(i, j) = psi[static_cast<std::size_t>(i)];
        }
    }
    return u;
}

} // namespace toric::nmr
