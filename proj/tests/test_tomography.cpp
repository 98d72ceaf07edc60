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
#include <set>

#include <catch_amalgamated.hpp>

#include "oracle.hpp"

using namespace toric;
using Catch::Matchers::WithinAbs;

namespace {

double coefficient(const TomographyResult &t, const char *label) {
    return t.coefficients[pauli_index(PauliString::parse(label))];
}

// Rotate P by the setting's pulses densely and read which letters result.
bool exposes_dense(const ReadoutSetting &s, const PauliString &p) {
    using namespace std::complex_literals;
    const std::size_t n = s.pulses.size();
    oracle::Mat u = oracle::Mat::Identity(1 << n, 1 << n);
    for (std::size_t q = 0; q < n; ++q) {
        if (s.pulses[q] == Readout::x90) {
            u = (oracle::gate(Gate::rx(q, std::numbers::pi / 2), n) * u).eval();
        } else if (s.pulses[q] == Readout::y90) {
            u = (oracle::gate(Gate::ry(q, std::numbers::pi / 2), n) * u).eval();
        }
    }
    const oracle::Mat rotated = u * oracle::pauli(p) * u.adjoint();
    // find the Pauli string it became
    for (std::size_t idx = 1; idx < pauli_basis_size(n); ++idx) {
        const auto cand = pauli_from_index(n, idx);
        const oracle::cplx overlap = (oracle::pauli(cand).adjoint() * rotated).trace() /
                                     static_cast<double>(1 << n);
        if (std::abs(overlap) > 0.5) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto l = cand.letter(k);
                if (l != Pauli::X && l != Pauli::Y) {
                    continue;
                }
                bool rest = true;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != k && cand.letter(j) != Pauli::I && cand.letter(j) != Pauli::Z) {
                        rest = false;
                    }
                }
                if (rest) {
                    return true;
                }
            }
            return false;
        }
    }
    return false;
}

} // namespace

TEST_CASE("Pauli label ordering", "[tomography]") {
    CHECK(pauli_basis_size(4) == 256);
    CHECK(pauli_label(4, 0) == "IIII");
    CHECK(pauli_label(4, 1) == "IIIX");
    CHECK(pauli_label(4, 2) == "IIIY");
    CHECK(pauli_label(4, 3) == "IIIZ");
    CHECK(pauli_label(4, 64) == "XIII");
    CHECK(pauli_label(4, 255) == "ZZZZ");
    for (std::size_t i = 0; i < 256; ++i) {
        CHECK(pauli_index(pauli_from_index(4, i)) == i);
    }
}

TEST_CASE("coefficients of simple states", "[tomography]") {
    const auto zero = tomograph(DensityMatrix::from_pure(StateVector{4}));
    CHECK(coefficient(zero, "IIII") == 1.0);
    CHECK_THAT(coefficient(zero, "ZIII"), WithinAbs(1.0, 1e-15));
    CHECK_THAT(coefficient(zero, "ZZZZ"), WithinAbs(1.0, 1e-15));
    for (std::size_t i = 0; i < 256; ++i) {
        const auto p = pauli_from_index(4, i);
        bool has_xy = false;
        for (std::size_t q = 0; q < 4; ++q) {
            has_xy = has_xy || p.letter(q) == Pauli::X || p.letter(q) == Pauli::Y;
        }
        if (has_xy) {
            CHECK(zero.coefficients[i] == 0.0);
        }
    }

    const auto ghz = tomograph(DensityMatrix::from_pure(reduced_ground_state()));
    CHECK_THAT(coefficient(ghz, "XXXX"), WithinAbs(1.0, 1e-15));
    CHECK_THAT(coefficient(ghz, "ZZII"), WithinAbs(1.0, 1e-15));
    CHECK_THAT(coefficient(ghz, "ZIII"), WithinAbs(0.0, 1e-15));
    CHECK_THAT(coefficient(ghz, "YYXX"), WithinAbs(-1.0, 1e-15));
}

TEST_CASE("round trip and Parseval on random states", "[tomography][property]") {
    std::mt19937_64 rng{51};
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = oracle::random_density(4, rng);
        const auto t = tomograph(rho);
        CHECK(t.reconstructed.max_abs_diff(rho) < 1e-10);
        double sum = 0.0;
        for (double c : t.coefficients) {
            sum += c * c;
        }
        CHECK_THAT(sum, WithinAbs(16.0 * rho.purity(), 1e-9));
        // coefficients against the dense trace
        const oracle::Mat m = oracle::mat(rho);
        for (std::size_t i : {std::size_t{5}, std::size_t{77}, std::size_t{200}}) {
            CHECK_THAT(t.coefficients[i],
                       WithinAbs((m * oracle::pauli(pauli_from_index(4, i))).trace().real(), 1e-12));
        }
    }
    for (std::size_t n : {1, 2, 3, 5}) {
        const auto psi = oracle::random_state(n, rng);
        const auto t = tomograph(DensityMatrix::from_pure(psi));
        double sum = 0.0;
        for (double c : t.coefficients) {
            sum += c * c;
        }
        CHECK_THAT(sum, WithinAbs(static_cast<double>(1 << n), 1e-9));
        CHECK(t.reconstructed.max_abs_diff(DensityMatrix::from_pure(psi)) < 1e-10);
    }
    CHECK_THROWS_AS(reconstruct(4, std::vector<double>(255)), std::invalid_argument);
}

TEST_CASE("readout library", "[tomography]") {
    const auto lib = build_readout_library(4);
    CHECK(lib.settings.size() == readout_library_size);
    CHECK(lib.covering_prefix == 17);
    std::set<std::string> distinct;
    for (const auto &s : lib.settings) {
        distinct.insert(s.str());
    }
    CHECK(distinct.size() == 40);

    // the covering prefix exposes every non-identity coefficient
    for (std::size_t i = 1; i < 256; ++i) {
        const auto p = pauli_from_index(4, i);
        bool covered = false;
        for (std::size_t s = 0; s < lib.covering_prefix; ++s) {
            covered = covered || lib.settings[s].exposes(p);
        }
        CHECK(covered);
    }
    CHECK(lib.exposing(0).empty());

    const auto t = tomograph(DensityMatrix::from_pure(reduced_ground_state()));
    CHECK(t.readout_setting[0] == -1);
    for (std::size_t i = 1; i < 256; ++i) {
        REQUIRE(t.readout_setting[i] >= 0);
        REQUIRE(t.readout_setting[i] < 40);
        CHECK(lib.settings[static_cast<std::size_t>(t.readout_setting[i])].exposes(
            pauli_from_index(4, i)));
    }
    const auto wide = tomograph(DensityMatrix::from_pure(StateVector{6}));
    CHECK(std::all_of(wide.readout_setting.begin(), wide.readout_setting.end(),
                      [](int s) { return s == -1; }));
}

TEST_CASE("readout exposure matches rotated product operators", "[tomography]") {
    const auto lib = build_readout_library(3);
    for (const auto &s : lib.settings) {
        for (std::size_t i = 1; i < pauli_basis_size(3); ++i) {
            const auto p = pauli_from_index(3, i);
            CHECK(s.exposes(p) == exposes_dense(s, p));
        }
    }
}

TEST_CASE("shot-noise mode stays within binomial bounds", "[tomography]") {
    std::mt19937_64 rng{52};
    const auto rho = oracle::random_density(4, rng);
    const auto exact = tomograph(rho);
    const std::size_t shots = 1000000;
    const auto noisy = tomograph(rho, {shots, 99});
    std::size_t within3 = 0;
    double worst = 0.0;
    for (std::size_t i = 1; i < 256; ++i) {
        const double c = exact.coefficients[i];
        const double sigma = 2.0 * std::sqrt(0.25 * (1 - c * c) / static_cast<double>(shots));
        const double z = std::abs(noisy.coefficients[i] - c) / std::max(sigma, 1e-12);
        within3 += z <= 3.0 ? 1 : 0;
        worst = std::max(worst, z);
    }
    CHECK(within3 >= 252);
    CHECK(worst < 5.0);
    CHECK(noisy.coefficients[0] == 1.0);

    // same seed, same draws
    const auto again = tomograph(rho, {shots, 99});
    CHECK(again.coefficients == noisy.coefficients);
    const auto other = tomograph(rho, {shots, 100});
    CHECK(other.coefficients != noisy.coefficients);
}

TEST_CASE("fidelity", "[tomography]") {
    std::mt19937_64 rng{53};
    const auto psi = oracle::random_state(4, rng);
    CHECK_THAT(fidelity(DensityMatrix::from_pure(psi), psi), WithinAbs(1.0, 1e-12));
    CHECK_THAT(fidelity(DensityMatrix::maximally_mixed(4), psi), WithinAbs(1.0 / 16, 1e-15));

    auto phased = psi;
    phased.scale(std::polar(1.0, 1.234));
    const auto rho = oracle::random_density(4, rng);
    CHECK_THAT(fidelity(rho, phased), WithinAbs(fidelity(rho, psi), 1e-12));

    auto mix = rho;
    mix *= 0.3;
    auto part = DensityMatrix::from_pure(psi);
    part *= 0.7;
    mix += part;
    CHECK_THAT(fidelity(mix, psi), WithinAbs(0.3 * fidelity(rho, psi) + 0.7, 1e-12));
    const double f = fidelity(rho, psi);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK_THROWS_AS(fidelity(rho, StateVector{3}), std::invalid_argument);

    const auto braid = run_braid_experiment(BraidVariant::braid);
    auto t = tomograph(DensityMatrix::from_pure(braid.final_state()));
    score(t, expected_final_state(BraidVariant::braid), "braided");
    CHECK_THAT(t.fidelity, WithinAbs(1.0, 1e-9));
    CHECK(t.target_label == "braided");
}

TEST_CASE("bar export of the protocol outputs", "[tomography]") {
    auto entry = [](const std::vector<BarRow> &rows, const char *r, const char *c) {
        for (const auto &row : rows) {
            if (row.row == r && row.column == c) {
                return row.real;
            }
        }
        return std::nan("");
    };
    const auto ground = bar_export(DensityMatrix::from_pure(reduced_ground_state()));
    const auto braid =
        bar_export(DensityMatrix::from_pure(run_braid_experiment(BraidVariant::braid).final_state()));
    const auto control = bar_export(
        DensityMatrix::from_pure(run_braid_experiment(BraidVariant::control).final_state()));
    CHECK(braid.size() == 256);
    CHECK(braid[0].row == "0000");
    CHECK(braid[255].column == "1111");
    for (const auto *rows : {&ground, &braid, &control}) {
        CHECK_THAT(entry(*rows, "0000", "0000"), WithinAbs(0.5, 1e-12));
        CHECK_THAT(entry(*rows, "1111", "1111"), WithinAbs(0.5, 1e-12));
        double rest = 0.0;
        for (const auto &r : *rows) {
            const bool corner = (r.row == "0000" || r.row == "1111") &&
                                (r.column == "0000" || r.column == "1111");
            if (!corner) {
                rest = std::max(rest, std::hypot(r.real, r.imag));
            }
        }
        CHECK(rest < 1e-12);
    }
    CHECK_THAT(entry(braid, "0000", "1111"), WithinAbs(-0.5, 1e-12));
    CHECK_THAT(entry(braid, "1111", "0000"), WithinAbs(-0.5, 1e-12));
    CHECK_THAT(entry(ground, "0000", "1111"), WithinAbs(0.5, 1e-12));
    CHECK_THAT(entry(control, "0000", "1111"), WithinAbs(0.5, 1e-12));
}

TEST_CASE("CSV and JSON export", "[tomography]") {
    const auto rho = DensityMatrix::from_pure(reduced_ground_state());
    std::ostringstream bars;
    write_bar_csv(bars, bar_export(rho));
    const auto text = bars.str();
    CHECK(text.rfind("row,column,real,imag\n0000,0000,", 0) == 0);
    const auto first_value = text.substr(text.find("0000,0000,") + 10);
    CHECK_THAT(std::stod(first_value), WithinAbs(0.5, 1e-15));
    CHECK(std::count(text.begin(), text.end(), '\n') == 257);

    auto t = tomograph(rho);
    score(t, reduced_ground_state(), "ground state");
    std::ostringstream coeffs;
    write_coefficients_csv(coeffs, t);
    CHECK(coeffs.str().rfind("pauli,coefficient,readout_setting\nIIII,", 0) == 0);
    CHECK(coeffs.str().find("\nXXXX,") != std::string::npos);
    const nlohmann::json j = t;
    CHECK_THAT(j.at("coefficients").at("XXXX").get<double>(), WithinAbs(1.0, 1e-15));
    CHECK(j.at("target") == "ground state");
    CHECK(density_from_json(j.at("reconstructed")).max_abs_diff(rho) < 1e-12);
    const nlohmann::json b = bar_export(rho)[15];
    CHECK(b.at("column") == "1111");
}
