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
#include <random>

#include <catch_amalgamated.hpp>

#include "oracle.hpp"

using namespace toric;
using namespace toric::nmr;
using Catch::Matchers::WithinAbs;

namespace {

SpinSystem other_shifts() {
    auto sys = SpinSystem::crotonic_acid();
    sys.larmor = {2 * std::numbers::pi * 410.0, 2 * std::numbers::pi * -2270.0,
                  2 * std::numbers::pi * 5120.0, 2 * std::numbers::pi * 990.0};
    return sys;
}

oracle::Mat ideal_output(const Circuit &c, double eps) {
    const oracle::Mat u = oracle::circuit(c, 4);
    const oracle::Mat rho0 = oracle::mat(pps(4, eps));
    return u * rho0 * u.adjoint();
}

} // namespace

TEST_CASE("spin system defaults", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    CHECK(sys.num_spins() == 4);
    CHECK(sys.coupling(0, 1) == 71.2);
    CHECK(sys.coupling(0, 2) == -1.3);
    CHECK(sys.coupling(0, 3) == 7.0);
    CHECK(sys.coupling(1, 2) == 69.4);
    CHECK(sys.coupling(1, 3) == -1.6);
    CHECK(sys.coupling(2, 3) == 41.3);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(sys.coupling(i, i) == 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(sys.coupling(i, j) == sys.coupling(j, i));
        }
    }
    CHECK_NOTHROW(sys.validate());
    auto bad = sys;
    bad.coupling_hz[0][1] = 3.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    const nlohmann::json j = sys;
    const auto back = j.get<SpinSystem>();
    CHECK(back.larmor == sys.larmor);
    CHECK(back.coupling_hz == sys.coupling_hz);
}

TEST_CASE("H_sys is diagonal and its terms commute", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    const oracle::Mat h = oracle::system_hamiltonian(sys);
    const auto e = sys.energies();
    for (Eigen::Index i = 0; i < 16; ++i) {
        CHECK_THAT(h(i, i).real(), WithinAbs(e[static_cast<std::size_t>(i)], 1e-9));
    }
    CHECK((h - oracle::Mat(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    std::vector<oracle::Mat> terms;
    for (std::size_t i = 0; i < 4; ++i) {
        terms.push_back(oracle::embed(oracle::letter('Z'), i, 4));
        for (std::size_t j = i + 1; j < 4; ++j) {
            terms.push_back(oracle::embed(oracle::letter('Z'), i, 4) *
                            oracle::embed(oracle::letter('Z'), j, 4));
        }
    }
    for (const auto &a : terms) {
        for (const auto &b : terms) {
            CHECK((a * b - b * a).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("pseudo-pure state", "[nmr]") {
    const auto pure = pps(4, 1.0);
    CHECK(pure(0, 0) == cplx{1.0});
    CHECK_THAT(pure.purity(), WithinAbs(1.0, 1e-15));
    for (double eps : {1e-5, 0.3, 1.0}) {
        const auto rho = pps(4, eps);
        CHECK_NOTHROW(rho.validate());
        CHECK_THAT(expectation(rho, PauliString::parse("ZIII")), WithinAbs(eps, 1e-15));
        CHECK_THAT(expectation(rho, PauliString::parse("ZZII")), WithinAbs(eps, 1e-15));
        CHECK(normalized_deviation(rho, eps).max_abs_diff(pure) < 1e-9);
    }
    CHECK_THROWS_AS(pps(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pps(4, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(pps(4, -0.1), std::invalid_argument);
}

TEST_CASE("free evolution is the exact diagonal propagator", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    std::mt19937_64 rng{41};
    const auto rho0 = oracle::random_density(4, rng);
    auto rho = rho0;
    free_evolution(rho, sys, 0.0);
    CHECK(rho.max_abs_diff(rho0) == 0.0);

    for (double tau : {1e-4, 3.3e-3, 0.0217}) {
        rho = rho0;
        free_evolution(rho, sys, tau);
        const oracle::Mat u = oracle::evolve(oracle::system_hamiltonian(sys), tau);
        CHECK((oracle::mat(rho) - u * oracle::mat(rho0) * u.adjoint()).cwiseAbs().maxCoeff() <
              1e-9);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK_THAT(rho(i, i).real(), WithinAbs(rho0(i, i).real(), 1e-15));
        }
    }
    CHECK_THROWS_AS(free_evolution(rho, sys, -1.0), std::invalid_argument);
}

TEST_CASE("isolated J12 delay of 1/(2 J12) is a ZZ quarter turn", "[nmr]") {
    SpinSystem sys = SpinSystem::crotonic_acid();
    sys.larmor.assign(4, 0.0);
    for (auto &row : sys.coupling_hz) {
        row.assign(4, 0.0);
    }
    sys.coupling_hz[0][1] = sys.coupling_hz[1][0] = 71.2;
    const double tau = 1.0 / (2.0 * 71.2);
    CHECK_THAT(tau, WithinAbs(7.022e-3, 1e-6));
    StateVector psi{4};
    apply_gate(psi, Gate::h(0));
    apply_gate(psi, Gate::h(1));
    auto expected = psi;
    free_evolution(psi, sys, tau);
    // exp(-i pi/4 Z1 Z2)
    const oracle::Mat zz = oracle::embed(oracle::letter('Z'), 0, 4) *
                           oracle::embed(oracle::letter('Z'), 1, 4);
    const oracle::Vec want = oracle::evolve(zz, std::numbers::pi / 4) * oracle::vec(expected);
    CHECK((oracle::vec(psi) - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dephasing damps coherences only", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    std::mt19937_64 rng{42};
    const auto rho0 = oracle::random_density(4, rng);
    auto rho = rho0;
    free_evolution(rho, sys, 1.0, {1e3, 1e3, 1e3, 1e3});
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = 0; j < 16; ++j) {
            if (i == j) {
                CHECK_THAT(rho(i, i).real(), WithinAbs(rho0(i, i).real(), 1e-15));
            } else {
                CHECK(std::abs(rho(i, j)) < 1e-12);
            }
        }
    }
    // single-spin coherence decays at its own rate
    rho = rho0;
    free_evolution(rho, sys, 0.01, {50.0, 0.0, 0.0, 0.0});
    auto undamped = rho0;
    free_evolution(undamped, sys, 0.01);
    CHECK_THAT(std::abs(rho(0, 8)) / std::abs(undamped(0, 8)), WithinAbs(std::exp(-0.5), 1e-12));
    CHECK_THAT(std::abs(rho(0, 4)) / std::abs(undamped(0, 4)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("compiled schedules reproduce their circuits", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    const std::vector<Circuit> circuits = {
        ghz_preparation_circuit(),
        braid_network(BraidVariant::braid),
        braid_network(BraidVariant::control),
        {Gate::cnot(1, 0), Gate::cnot(3, 2), Gate::cnot(0, 3), Gate::rx(2, 0.7), Gate::ry(1, -1.1),
         Gate::rz(3, 2.5), Gate::z(0), Gate::sqrt_z_inv(1)},
    };
    for (const auto &c : circuits) {
        const auto sched = compile_circuit(c, sys);
        const oracle::Mat u = schedule_propagator(sched, sys);
        CHECK(oracle::phase_aligned_distance(u, oracle::circuit(c, 4)) < 1e-9);
    }
}

TEST_CASE("schedule structure", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    CHECK(compile_circuit({}, sys).empty());
    CHECK(compile_circuit({}, sys).duration() == 0.0);

    const auto sz = compile_circuit({Gate::sqrt_z(2)}, sys);
    REQUIRE(sz.events.size() == 1);
    const auto &r = std::get<Rotation>(sz.events[0]);
    CHECK(r.axis == Axis::z);
    CHECK(r.duration == 0.0);
    auto psi = reduced_ground_state();
    run_schedule(psi, sz, sys);
    CHECK(std::abs(psi[15] / psi[0] - cplx{0, 1}) < 1e-15);

    const auto prep = compile_circuit(ghz_preparation_circuit(), sys);
    double total = 0.0;
    for (const auto &ev : prep.events) {
        if (const auto *rot = std::get_if<Rotation>(&ev)) {
            if (rot->axis != Axis::z) {
                CHECK(rot->duration >= 200e-6);
                CHECK(rot->duration <= 500e-6);
            }
            total += rot->duration;
        } else if (const auto *f = std::get_if<FreeEvolution>(&ev)) {
            total += f->tau;
        }
    }
    CHECK_THAT(prep.duration(), WithinAbs(total, 1e-15));
    const double delays = 1 / (2 * 71.2) + 1 / (2 * 69.4) + 1 / (2 * 41.3);
    CHECK(prep.duration() > delays);

    CHECK_THROWS_AS(compile_circuit({Gate::cnot(0, 2)}, sys), std::invalid_argument);
    CHECK_THROWS_AS(compile_circuit({Gate::cnot(1, 3)}, sys), std::invalid_argument);
    CHECK_NOTHROW(compile_circuit({Gate::cnot(0, 3)}, sys));
    CompileOptions strict;
    strict.coupling_threshold_hz = 10.0;
    CHECK_THROWS_AS(compile_circuit({Gate::cnot(0, 3)}, sys, strict), std::invalid_argument);
    CHECK_THROWS_AS(compile_circuit({Gate::h(4)}, sys), std::out_of_range);

    std::ostringstream table;
    prep.write_table(table);
    CHECK(table.str().rfind("event,qubit,axis,angle,duration\n", 0) == 0);
    const nlohmann::json j = prep;
    CHECK(j.at("events").size() == prep.events.size());
}

TEST_CASE("pulse lengths span 200 to 500 microseconds", "[nmr]") {
    const CompileOptions opt;
    CHECK_THAT(pulse_length(0.0, opt), WithinAbs(200e-6, 1e-18));
    CHECK_THAT(pulse_length(std::numbers::pi, opt), WithinAbs(500e-6, 1e-18));
    CHECK_THAT(pulse_length(-std::numbers::pi / 2, opt), WithinAbs(350e-6, 1e-18));
    CHECK_THAT(pulse_length(7.0, opt), WithinAbs(500e-6, 1e-18));
}

TEST_CASE("noiseless execution equals the abstract circuit", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    for (auto v : {BraidVariant::braid, BraidVariant::control}) {
        const auto c = braid_network(v);
        const double eps = 1e-5;
        const auto out = run_schedule(pps(4, eps), compile_circuit(c, sys), sys);
        CHECK((oracle::mat(out) - ideal_output(c, eps)).cwiseAbs().maxCoeff() < 1e-9 * eps);
        const auto dev = normalized_deviation(out, eps);
        CHECK_THAT(dev(0, 15).real(), WithinAbs(v == BraidVariant::braid ? -0.5 : 0.5, 1e-9));
        CHECK_THAT(out(0, 15).real() / eps, WithinAbs(v == BraidVariant::braid ? -0.5 : 0.5, 1e-9));
    }
}

TEST_CASE("results do not depend on chemical shifts", "[nmr]") {
    const auto a = run_nmr_braid(BraidVariant::braid, SpinSystem::crotonic_acid(),
                                 NoiseModel::ideal(), 1e-5);
    const auto b = run_nmr_braid(BraidVariant::braid, other_shifts(), NoiseModel::ideal(), 1e-5);
    CHECK(a.final_state.max_abs_diff(b.final_state) < 1e-9);
    CHECK(a.initial.max_abs_diff(b.initial) < 1e-9);
}

TEST_CASE("traceless part is linear in epsilon", "[nmr][property]") {
    const auto sys = SpinSystem::crotonic_acid();
    const auto sched = compile_circuit(braid_network(BraidVariant::braid), sys);
    const auto noise = NoiseModel::uniform(0.02, 3.0, 4);
    const auto d1 = normalized_deviation(run_schedule(pps(4, 1e-5), sched, sys, noise), 1e-5);
    const auto d2 = normalized_deviation(run_schedule(pps(4, 0.25), sched, sys, noise), 0.25);
    const auto d3 = normalized_deviation(run_schedule(pps(4, 1.0), sched, sys, noise), 1.0);
    CHECK(d1.max_abs_diff(d3) < 1e-9);
    CHECK(d2.max_abs_diff(d3) < 1e-12);
}

TEST_CASE("noise knobs", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    const auto target = expected_final_state(BraidVariant::braid);
    const auto rot = run_nmr_braid(BraidVariant::braid, sys, NoiseModel::uniform(0.01, 0.0, 4), 1e-5);
    CHECK(rot.fidelity_final < 1.0);
    CHECK(rot.fidelity_final > 0.95);

    const auto deph =
        run_nmr_braid(BraidVariant::braid, sys, NoiseModel::uniform(0.0, 1e4, 4), 1e-5);
    CHECK(std::isnan(deph.phase.real()));
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = 0; j < 16; ++j) {
            if (i != j) {
                CHECK(std::abs(deph.final_state(i, j)) < 1e-9);
            }
        }
    }

    // the zero model is exactly ideal
    const auto zero =
        run_nmr_braid(BraidVariant::braid, sys, NoiseModel::uniform(0.0, 0.0, 4), 1e-5);
    CHECK_THAT(zero.fidelity_final, WithinAbs(1.0, 1e-9));
    CHECK(std::abs(zero.phase + 1.0) < 1e-9);
    CHECK_THAT(fidelity(zero.final_state, target), WithinAbs(1.0, 1e-9));
}

TEST_CASE("RF distribution mixes branches by weight", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    const auto sched = compile_circuit(braid_network(BraidVariant::braid), sys);
    NoiseModel mixed;
    mixed.rf = {{0.95, 0.25}, {1.0, 0.5}, {1.05, 0.25}};
    const auto out = run_schedule(pps(4, 1.0), sched, sys, mixed);

    DensityMatrix manual = DensityMatrix::from_entries(4, std::vector<cplx>(256));
    for (const auto &b : mixed.rf) {
        NoiseModel single;
        single.rotation_error = b.scale - 1.0;
        auto part = run_schedule(pps(4, 1.0), sched, sys, single);
        part *= b.weight;
        manual += part;
    }
    CHECK(out.max_abs_diff(manual) < 1e-12);
    CHECK_NOTHROW(out.validate(1e-12));

    NoiseModel bad;
    bad.rf = {{1.0, 0.6}, {1.1, 0.6}};
    CHECK_THROWS_AS(bad.validate(4), std::invalid_argument);
    bad.rf = {{1.0, -0.5}, {1.1, 1.5}};
    CHECK_THROWS_AS(bad.validate(4), std::invalid_argument);
    bad.rf = {};
    CHECK_THROWS_AS(bad.validate(4), std::invalid_argument);
    bad.rf = {{0.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(4), std::invalid_argument);
    NoiseModel deph;
    deph.dephasing = {1.0, 2.0};
    CHECK_THROWS_AS(deph.validate(4), std::invalid_argument);
    deph.dephasing = {1.0, 2.0, -1.0, 0.0};
    CHECK_THROWS_AS(deph.validate(4), std::invalid_argument);
}

TEST_CASE("fidelity is monotone in each noise knob", "[nmr][property]") {
    const auto sys = SpinSystem::crotonic_acid();
    const std::vector<double> rots{0.0, 0.01, 0.02, 0.04, 0.08};
    const std::vector<double> dephs{0.0, 0.5, 1.0, 2.0, 4.0};
    std::vector<std::vector<double>> f(rots.size(), std::vector<double>(dephs.size()));
    for (std::size_t i = 0; i < rots.size(); ++i) {
        for (std::size_t j = 0; j < dephs.size(); ++j) {
            f[i][j] = run_nmr_braid(BraidVariant::braid, sys,
                                    NoiseModel::uniform(rots[i], dephs[j], 4), 1e-5)
                          .fidelity_final;
        }
    }
    for (std::size_t i = 0; i < rots.size(); ++i) {
        for (std::size_t j = 0; j < dephs.size(); ++j) {
            if (i + 1 < rots.size()) {
                CHECK(f[i + 1][j] <= f[i][j] + 1e-12);
            }
            if (j + 1 < dephs.size()) {
                CHECK(f[i][j + 1] <= f[i][j] + 1e-12);
            }
        }
    }
}

TEST_CASE("evolution during pulses", "[nmr]") {
    const auto sys = SpinSystem::crotonic_acid();
    const Rotation r{1, Axis::y, 1.3, 300e-6};
    const oracle::Mat drive = oracle::embed(oracle::letter('Y'), 1, 4) * (0.5 * 1.3 / 300e-6);
    const oracle::Mat want = oracle::evolve(oracle::system_hamiltonian(sys) + drive, 300e-6);
    CHECK((nmr::detail::pulse_propagator(sys, r, 1.3) - want).cwiseAbs().maxCoeff() < 1e-9);

    NoiseModel realistic;
    realistic.evolve_during_pulses = true;
    const auto run = run_nmr_braid(BraidVariant::braid, sys, realistic, 1e-5);
    CHECK(run.fidelity_final < 0.99);
    CHECK_NOTHROW(run.final_state.validate(1e-9));

    // on resonance only the couplings act during pulses
    SpinSystem on_resonance = sys;
    on_resonance.larmor.assign(4, 0.0);
    const auto coupled = run_nmr_braid(BraidVariant::braid, on_resonance, realistic, 1e-5);
    CHECK(coupled.fidelity_final < 1.0);
    CHECK(coupled.fidelity_final > run.fidelity_final);
}

TEST_CASE("noise model JSON", "[nmr]") {
    auto m = NoiseModel::uniform(0.01, 2.0, 4);
    m.rf = {{0.9, 0.5}, {1.1, 0.5}};
    const nlohmann::json j = m;
    CHECK(j.at("rotation_error") == 0.01);
    CHECK(j.at("rf").size() == 2);
    CHECK(j.at("dephasing").size() == 4);
}
