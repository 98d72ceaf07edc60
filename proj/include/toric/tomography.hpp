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
 * Pauli-basis state tomography, fidelity and bar-chart export.
 *
 * Coefficient c_P = Tr(rho P) for every n-qubit Pauli string P, indexed in
 * base 4 with digits I=0, X=1, Y=2, Z=3 and qubit 0 most significant.
 * Reconstruction: rho = 2^-n sum_P c_P P.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "engine.hpp"
#include "pauli.hpp"
#include "state.hpp"

namespace toric {

inline std::size_t pauli_basis_size(std::size_t n) { return std::size_t{1} << (2 * n); }

inline PauliString pauli_from_index(std::size_t n, std::size_t index) {
    PauliString p{n};
    for (std::size_t q = 0; q < n; ++q) {
        const auto digit = (index >> (2 * (n - 1 - q))) & 3U;
        p.set(q, static_cast<Pauli>(digit));
    }
    return p;
}

/// "IXYZ"-style label without the phase prefix.
inline std::string pauli_label(std::size_t n, std::size_t index) {
    return pauli_from_index(n, index).str().substr(1);
}

inline std::size_t pauli_index(const PauliString &p) {
    std::size_t index = 0;
    for (std::size_t q = 0; q < p.size(); ++q) {
        index = (index << 2) | static_cast<std::size_t>(p.letter(q));
    }
    return index;
}

// ------------------------------------------------------- readout settings

/// Local readout rotation applied to one spin before acquisition.
enum class Readout : std::uint8_t { none = 0, x90 = 1, y90 = 2 };

/**
 * One readout setting: a local pulse per spin, then acquisition of every
 * spin's transverse signal. For the observed spin k the setting exposes the
 * letters {X, Y} (no pulse), {X, Z} (x90) or {Z, Y} (y90); every other spin
 * contributes {I, Z}, {I, Y} or {I, X} respectively through its multiplet
 * splitting.
 */
struct ReadoutSetting {
    std::vector<Readout> pulses;

    [[nodiscard]] bool exposes(const PauliString &p) const {
        const std::size_t n = pulses.size();
        if (p.size() != n || p.is_identity_letters()) {
            return false;
        }
        auto observed_ok = [](Readout r, Pauli l) {
            switch (r) {
            case Readout::none:
                return l == Pauli::X || l == Pauli::Y;
            case Readout::x90:
                return l == Pauli::X || l == Pauli::Z;
            case Readout::y90:
                return l == Pauli::Z || l == Pauli::Y;
            }
            return false;
        };
        auto passive_ok = [](Readout r, Pauli l) {
            if (l == Pauli::I) {
                return true;
            }
            switch (r) {
            case Readout::none:
                return l == Pauli::Z;
            case Readout::x90:
                return l == Pauli::Y;
            case Readout::y90:
                return l == Pauli::X;
            }
            return false;
        };
        for (std::size_t k = 0; k < n; ++k) {
            if (!observed_ok(pulses[k], p.letter(k))) {
                continue;
            }
            bool rest = true;
            for (std::size_t j = 0; j < n && rest; ++j) {
                rest = j == k || passive_ok(pulses[j], p.letter(j));
            }
            if (rest) {
                return true;
            }
        }
        return false;
    }

    [[nodiscard]] std::string str() const {
        std::string s;
        for (auto r : pulses) {
            s += r == Readout::none ? 'I' : (r == Readout::x90 ? 'X' : 'Y');
        }
        return s;
    }
};

inline constexpr std::size_t readout_library_size = 40;
/// Readout metadata is only tabulated up to this register width.
inline constexpr std::size_t max_readout_qubits = 5;

/**
 * Fixed library of readout settings. Settings are picked greedily (most new
 * coefficients first, ties broken by enumeration order) until every
 * non-identity coefficient is exposed; the remaining slots up to 40 are
 * filled with the unused settings in enumeration order. For four spins the
 * covering prefix has 17 settings.
 */
struct ReadoutLibrary {
    std::size_t num_qubits{0};
    std::vector<ReadoutSetting> settings;
    std::size_t covering_prefix{0};

    /// Indices of the settings that expose coefficient `index`.
    [[nodiscard]] std::vector<std::size_t> exposing(std::size_t index) const {
        const auto p = pauli_from_index(num_qubits, index);
        std::vector<std::size_t> out;
        for (std::size_t s = 0; s < settings.size(); ++s) {
            if (settings[s].exposes(p)) {
                out.push_back(s);
            }
        }
        return out;
    }
};

inline ReadoutLibrary build_readout_library(std::size_t n) {
    check_qubit_count(n);
    std::size_t total = 1;
    for (std::size_t q = 0; q < n; ++q) {
        total *= 3;
    }
    std::vector<ReadoutSetting> all;
    all.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        ReadoutSetting s;
        s.pulses.resize(n);
        std::size_t c = code;
        for (std::size_t q = n; q-- > 0;) {
            s.pulses[q] = static_cast<Readout>(c % 3);
            c /= 3;
        }
        all.push_back(std::move(s));
    }
    const std::size_t basis = pauli_basis_size(n);
    std::vector<std::vector<bool>> cover(total, std::vector<bool>(basis, false));
    for (std::size_t s = 0; s < total; ++s) {
        for (std::size_t i = 1; i < basis; ++i) {
            cover[s][i] = all[s].exposes(pauli_from_index(n, i));
        }
    }

    ReadoutLibrary lib;
    lib.num_qubits = n;
    std::vector<bool> done(basis, false);
    std::vector<bool> used(total, false);
    std::size_t remaining = basis - 1;
    while (remaining > 0) {
        std::size_t best = total;
        std::size_t best_gain = 0;
        for (std::size_t s = 0; s < total; ++s) {
            if (used[s]) {
                continue;
            }
            std::size_t gain = 0;
            for (std::size_t i = 1; i < basis; ++i) {
                gain += (cover[s][i] && !done[i]) ? 1 : 0;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = s;
            }
        }
        if (best == total) {
            throw std::logic_error("readout library: settings cannot cover basis");
        }
        used[best] = true;
        lib.settings.push_back(all[best]);
        for (std::size_t i = 1; i < basis; ++i) {
            if (cover[best][i] && !done[i]) {
                done[i] = true;
                --remaining;
            }
        }
    }
    lib.covering_prefix = lib.settings.size();
    for (std::size_t s = 0; s < total && lib.settings.size() < readout_library_size;
         ++s) {
        if (!used[s]) {
            lib.settings.push_back(all[s]);
        }
    }
    return lib;
}

// ------------------------------------------------------------- tomography

struct TomographyOptions {
    /// 0 means exact expectations; otherwise shots per coefficient.
    std::size_t shots{0};
    std::uint64_t seed{0};
};

struct TomographyResult {
    std::size_t num_qubits{0};
    std::vector<double> coefficients;
    DensityMatrix reconstructed{1};
    /// First library setting that exposes each coefficient, -1 for the
    /// identity and for registers wider than max_readout_qubits.
    std::vector<int> readout_setting;
    std::string target_label;
    double fidelity{0.0};
};

inline DensityMatrix reconstruct(std::size_t n, const std::vector<double> &coefficients) {
    if (coefficients.size() != pauli_basis_size(n)) {
        throw std::invalid_argument("reconstruct: need 4^n coefficients");
    }
    DensityMatrix rho = DensityMatrix::from_entries(
        n, std::vector<cplx>((std::size_t{1} << n) * (std::size_t{1} << n)));
    const double norm = 1.0 / static_cast<double>(rho.dim());
    for (std::size_t idx = 0; idx < coefficients.size(); ++idx) {
        const double c = coefficients[idx];
        if (c == 0.0) {
            continue;
        }
        const auto act = detail::pauli_action(pauli_from_index(n, idx), n);
        // P = sum_j c(j) |j ^ flip><j|
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            rho(j ^ act.flip, j) += norm * c * act.coefficient(j);
        }
    }
    return rho;
}

/**
 * Computes every Pauli coefficient of rho and reconstructs it. With
 * `shots > 0`, each non-identity coefficient is replaced by the mean of
 * `shots` +/-1 outcomes drawn from std::mt19937_64 seeded with `seed`.
 */
inline TomographyResult tomograph(const DensityMatrix &rho,
                                  const TomographyOptions &opt = {}) {
    const std::size_t n = rho.num_qubits();
    const std::size_t basis = pauli_basis_size(n);
    TomographyResult res;
    res.num_qubits = n;
    res.coefficients.resize(basis);
    for (std::size_t idx = 0; idx < basis; ++idx) {
        res.coefficients[idx] = pauli_trace(rho, pauli_from_index(n, idx)).real();
    }
    if (opt.shots > 0) {
        std::mt19937_64 rng{opt.seed};
        for (std::size_t idx = 1; idx < basis; ++idx) {
            const double p_plus =
                std::clamp(0.5 * (1.0 + res.coefficients[idx]), 0.0, 1.0);
            std::binomial_distribution<std::size_t> draw(opt.shots, p_plus);
            const auto ups = static_cast<double>(draw(rng));
            res.coefficients[idx] = 2.0 * ups / static_cast<double>(opt.shots) - 1.0;
        }
    }
    res.reconstructed = reconstruct(n, res.coefficients);

    res.readout_setting.assign(basis, -1);
    if (n > max_readout_qubits) {
        return res;
    }
    static thread_local std::vector<ReadoutLibrary> cache;
    const ReadoutLibrary *lib = nullptr;
    for (const auto &l : cache) {
        if (l.num_qubits == n) {
            lib = &l;
        }
    }
    if (lib == nullptr) {
        cache.push_back(build_readout_library(n));
        lib = &cache.back();
    }
    for (std::size_t idx = 1; idx < basis; ++idx) {
        const auto p = pauli_from_index(n, idx);
        for (std::size_t s = 0; s < lib->settings.size(); ++s) {
            if (lib->settings[s].exposes(p)) {
                res.readout_setting[idx] = static_cast<int>(s);
                break;
            }
        }
    }
    return res;
}

/// <psi|rho|psi>.
inline double fidelity(const DensityMatrix &rho, const StateVector &target) {
    if (rho.num_qubits() != target.num_qubits()) {
        throw std::invalid_argument("fidelity: size mismatch");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            row += rho(i, j) * target[j];
        }
        acc += std::conj(target[i]) * row;
    }
    return acc.real();
}

/// Fills in fidelity and target label of a tomography result.
inline void score(TomographyResult &res, const StateVector &target, std::string label) {
    res.fidelity = fidelity(res.reconstructed, target);
    res.target_label = std::move(label);
}

struct BarRow {
    std::string row;
    std::string column;
    double real{0.0};
    double imag{0.0};
};

/// Every density-matrix entry with its basis labels, row-major.
inline std::vector<BarRow> bar_export(const DensityMatrix &rho) {
    const std::size_t n = rho.num_qubits();
    std::vector<BarRow> rows;
    rows.reserve(rho.dim() * rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            rows.push_back(
                {basis_label(n, i), basis_label(n, j), rho(i, j).real(), rho(i, j).imag()});
        }
    }
    return rows;
}

/// Writes doubles with round-trip precision.
inline void write_bar_csv(std::ostream &os, const std::vector<BarRow> &rows) {
    const auto old = os.precision(17);
    os << "row,column,real,imag\n";
    for (const auto &r : rows) {
        os << r.row << ',' << r.column << ',' << r.real << ',' << r.imag << '\n';
    }
    os.precision(old);
}

inline void write_coefficients_csv(std::ostream &os, const TomographyResult &res) {
    const auto old = os.precision(17);
    os << "pauli,coefficient,readout_setting\n";
    for (std::size_t i = 0; i < res.coefficients.size(); ++i) {
        os << pauli_label(res.num_qubits, i) << ',' << res.coefficients[i] << ','
           << res.readout_setting[i] << '\n';
    }
    os.precision(old);
}

inline void to_json(nlohmann::json &j, const BarRow &r) {
    j = nlohmann::json{{"row", r.row}, {"column", r.column}, {"real", r.real}, {"imag", r.imag}};
}

inline void to_json(nlohmann::json &j, const TomographyResult &res) {
    auto coeffs = nlohmann::json::object();
    for (std::size_t i = 0; i < res.coefficients.size(); ++i) {
        coeffs[pauli_label(res.num_qubits, i)] = res.coefficients[i];
    }
    j = nlohmann::json{{"num_qubits", res.num_qubits},
                       {"coefficients", std::move(coeffs)},
                       {"readout_setting", res.readout_setting},
                       {"target", res.target_label},
                       {"fidelity", res.fidelity},
                       {"reconstructed", res.reconstructed}};
}

} // namespace toric
