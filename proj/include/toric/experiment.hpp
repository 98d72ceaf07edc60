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
 * End-to-end runs of the braiding network on the NMR emulator, and noise
 * sweeps over rotation error and dephasing rate.
 */
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "anyon.hpp"
#include "nmr.hpp"
#include "tomography.hpp"

namespace toric {

/// Ideal final state of the four-qubit network for a variant.
inline StateVector expected_final_state(BraidVariant variant) {
    const double r = inv_sqrt2;
    std::vector<cplx> amp(16, 0.0);
    amp[0] = r;
    amp[15] = variant == BraidVariant::braid ? -r : r;
    return StateVector::from_amplitudes(std::move(amp));
}

struct NmrBraidRun {
    BraidVariant variant{BraidVariant::braid};
    double epsilon{1.0};
    nmr::PulseSchedule preparation;
    nmr::PulseSchedule protocol;
    /// Deviation density matrices rescaled by 1/epsilon.
    DensityMatrix initial{reduced_qubits};
    DensityMatrix final_state{reduced_qubits};
    /// NaN when the coherence has decayed below the extraction threshold.
    cplx phase{1.0, 0.0};
    double fidelity_initial{0.0};
    double fidelity_final{0.0};
};

/**
 * Starts from the pseudo-pure state, runs the compiled GHZ preparation
 * (snapshot t0) and then the compiled protocol (snapshot t1 or t2).
 */
inline NmrBraidRun run_nmr_braid(BraidVariant variant, const nmr::SpinSystem &sys,
                                 const nmr::NoiseModel &noise, double epsilon,
                                 const nmr::CompileOptions &opt = {}) {
    if (sys.num_spins() != reduced_qubits) {
        throw std::invalid_argument("run_nmr_braid: needs a four-spin system");
    }
    NmrBraidRun run;
    run.variant = variant;
    run.epsilon = epsilon;
    run.preparation = nmr::compile_circuit(ghz_preparation_circuit(), sys, opt);
    run.protocol = nmr::compile_circuit(braid_protocol_circuit(variant), sys, opt);

    DensityMatrix rho = nmr::pps(reduced_qubits, epsilon);
    rho = nmr::run_schedule(rho, run.preparation, sys, noise);
    run.initial = nmr::normalized_deviation(rho, epsilon);
    rho = nmr::run_schedule(rho, run.protocol, sys, noise);
    run.final_state = nmr::normalized_deviation(rho, epsilon);

    run.fidelity_initial = fidelity(run.initial, reduced_ground_state());
    run.fidelity_final = fidelity(run.final_state, expected_final_state(variant));
    try {
        run.phase = extract_phase(run.final_state, run.initial);
    } catch (const std::domain_error &) {
        run.phase = {std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
    }
    return run;
}

struct SweepOptions {
    double epsilon{1e-5};
    std::vector<nmr::RfBranch> rf{nmr::RfBranch{}};
    /// 0 scores fidelities exactly; otherwise through shot-noise tomography.
    std::size_t shots{0};
    std::uint64_t seed{0};
    unsigned threads{0}; // 0 = hardware concurrency
};

struct SweepRow {
    double rotation_error{0.0};
    double dephasing{0.0};
    double fidelity_t0{0.0};
    double fidelity_t1{0.0};
    double fidelity_t2{0.0};
};

namespace detail {

inline double scored_fidelity(const DensityMatrix &rho, const StateVector &target,
                              const SweepOptions &opt, std::size_t point,
                              std::uint64_t stream) {
    if (opt.shots == 0) {
        return fidelity(rho, target);
    }
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                      static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(point),
                      static_cast<std::uint32_t>(stream)};
    std::uint64_t derived = 0;
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    derived = (std::uint64_t{words[0]} << 32) | words[1];
    const auto res = tomograph(rho, {opt.shots, derived});
    return fidelity(res.reconstructed, target);
}

inline SweepRow sweep_point(double rot, double deph, std::size_t index,
                            const nmr::SpinSystem &sys, const SweepOptions &opt) {
    nmr::NoiseModel noise = nmr::NoiseModel::uniform(rot, deph, sys.num_spins());
    noise.rf = opt.rf;
    const auto braid = run_nmr_braid(BraidVariant::braid, sys, noise, opt.epsilon);
    const auto control = run_nmr_braid(BraidVariant::control, sys, noise, opt.epsilon);
    SweepRow row{rot, deph, 0.0, 0.0, 0.0};
    row.fidelity_t0 = scored_fidelity(braid.initial, reduced_ground_state(), opt, index, 0);
    row.fidelity_t1 = scored_fidelity(braid.final_state,
                                      expected_final_state(BraidVariant::braid), opt, index, 1);
    row.fidelity_t2 = scored_fidelity(control.final_state,
                                      expected_final_state(BraidVariant::control), opt,
                                      index, 2);
    return row;
}

} // namespace detail

/**
 * Grid over rotation error (outer) and uniform dephasing rate (inner). Points
 * are spread over a worker pool; rows come back in grid order.
 */
inline std::vector<SweepRow> noise_sweep(const std::vector<double> &rotation_errors,
                                         const std::vector<double> &dephasing_rates,
                                         const nmr::SpinSystem &sys,
                                         const SweepOptions &opt = {}) {
    if (rotation_errors.empty() || dephasing_rates.empty()) {
        throw std::invalid_argument("noise_sweep: empty grid");
    }
    for (double r : rotation_errors) {
        nmr::NoiseModel probe = nmr::NoiseModel::uniform(r, 0.0, sys.num_spins());
        probe.rf = opt.rf;
        probe.validate(sys.num_spins());
    }
    for (double g : dephasing_rates) {
        nmr::NoiseModel::uniform(0.0, g, sys.num_spins()).validate(sys.num_spins());
    }
    const std::size_t points = rotation_errors.size() * dephasing_rates.size();
    std::vector<SweepRow> rows(points);
    unsigned workers = opt.threads != 0 ? opt.threads : std::thread::hardware_concurrency();
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(points)));

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < points; i = next++) {
                rows[i] = detail::sweep_point(rotation_errors[i / dephasing_rates.size()],
                                              dephasing_rates[i % dephasing_rates.size()],
                                              i, sys, opt);
            }
        } catch (...) {
            const std::lock_guard lock{failure_mutex};
            if (!failure) {
                failure = std::current_exception();
            }
            next = points;
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

inline void to_json(nlohmann::json &j, const SweepRow &r) {
    j = nlohmann::json{{"rotation_error", r.rotation_error},
                       {"dephasing", r.dephasing},
                       {"F_t0", r.fidelity_t0},
                       {"F_t1", r.fidelity_t1},
                       {"F_t2", r.fidelity_t2}};
}

} // namespace toric
