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
 * Signed multi-qubit Pauli operators with a bit-packed symplectic (GF(2))
 * representation.
 *
 * Letter encoding is (x, z) = I:(0,0), X:(1,0), Y:(1,1), Z:(0,1), with Y the
 * Hermitian Pauli matrix. The overall phase is i^phase, phase in {0,1,2,3}.
 * Qubit 0 is the leftmost letter of the text form.
 */
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lattice.hpp"

namespace toric {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(Pauli p) {
    constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
    return letters[static_cast<int>(p)];
}

/// x- and z-parts of a Pauli string as packed bit vectors.
struct SymplecticVector {
    std::size_t n{0};
    std::vector<std::uint64_t> x;
    std::vector<std::uint64_t> z;

    /// Symplectic inner product mod 2; 0 iff the strings commute.
    [[nodiscard]] unsigned inner(const SymplecticVector &other) const {
        if (other.n != n) {
            throw std::invalid_argument("SymplecticVector: size mismatch");
        }
        unsigned parity = 0;
        for (std::size_t w = 0; w < x.size(); ++w) {
            parity ^= std::popcount((x[w] & other.z[w]) ^ (z[w] & other.x[w])) & 1U;
        }
        return parity;
    }
};

class PauliString {
  public:
    PauliString() = default;

    /// Identity on n qubits with phase +1.
    explicit PauliString(std::size_t n)
        : n_{n}, x_(words(n), 0), z_(words(n), 0) {}

    static PauliString single(std::size_t n, std::size_t qubit, Pauli p) {
        PauliString s{n};
        s.set(qubit, p);
        return s;
    }

    /// Parses e.g. "+XIZY", "-iZZ", "iX". A missing prefix means "+".
    static PauliString parse(std::string_view text) {
        unsigned phase = 0;
        if (text.starts_with("-i")) {
            phase = 3;
            text.remove_prefix(2);
        } else if (text.starts_with("+i")) {
            phase = 1;
            text.remove_prefix(2);
        } else if (text.starts_with("-")) {
            phase = 2;
            text.remove_prefix(1);
        } else if (text.starts_with("+")) {
            text.remove_prefix(1);
        } else if (text.starts_with("i")) {
            phase = 1;
            text.remove_prefix(1);
        }
        PauliString s{text.size()};
        for (std::size_t q = 0; q < text.size(); ++q) {
            switch (text[q]) {
            case 'I':
                break;
            case 'X':
                s.set(q, Pauli::X);
                break;
            case 'Y':
                s.set(q, Pauli::Y);
                break;
            case 'Z':
                s.set(q, Pauli::Z);
                break;
            default:
                throw std::invalid_argument("PauliString: bad letter '" +
                                            std::string(1, text[q]) + "'");
            }
        }
        s.phase_ = phase;
        return s;
    }

    [[nodiscard]] std::string str() const {
        constexpr const char *prefix[] = {"+", "i", "-", "-i"};
        std::string out = prefix[phase_];
        out.reserve(out.size() + n_);
        for (std::size_t q = 0; q < n_; ++q) {
            out.push_back(to_char(letter(q)));
        }
        return out;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    /// Exponent of i in the overall phase.
    [[nodiscard]] unsigned phase() const noexcept { return phase_; }
    void set_phase(unsigned p) noexcept { phase_ = p & 3U; }
    [[nodiscard]] bool hermitian() const noexcept { return (phase_ & 1U) == 0; }

    [[nodiscard]] Pauli letter(std::size_t q) const {
        check(q);
        const bool xb = (x_[q / 64] >> (q % 64)) & 1U;
        const bool zb = (z_[q / 64] >> (q % 64)) & 1U;
        if (xb) {
            return zb ? Pauli::Y : Pauli::X;
        }
        return zb ? Pauli::Z : Pauli::I;
    }

    void set(std::size_t q, Pauli p) {
        check(q);
        const std::uint64_t bit = std::uint64_t{1} << (q % 64);
        const bool xb = p == Pauli::X || p == Pauli::Y;
        const bool zb = p == Pauli::Z || p == Pauli::Y;
        x_[q / 64] = xb ? (x_[q / 64] | bit) : (x_[q / 64] & ~bit);
        z_[q / 64] = zb ? (z_[q / 64] | bit) : (z_[q / 64] & ~bit);
    }

    [[nodiscard]] bool is_identity_letters() const noexcept {
        for (std::size_t w = 0; w < x_.size(); ++w) {
            if (x_[w] | z_[w]) {
                return false;
            }
        }
        return true;
    }

    /// Number of Y letters.
    [[nodiscard]] std::size_t y_count() const noexcept {
        std::size_t c = 0;
        for (std::size_t w = 0; w < x_.size(); ++w) {
            c += std::popcount(x_[w] & z_[w]);
        }
        return c;
    }

    [[nodiscard]] SymplecticVector symplectic() const {
        return SymplecticVector{n_, x_, z_};
    }

    [[nodiscard]] const std::vector<std::uint64_t> &x_bits() const noexcept {
        return x_;
    }
    [[nodiscard]] const std::vector<std::uint64_t> &z_bits() const noexcept {
        return z_;
    }

    PauliString &operator*=(const PauliString &rhs) {
        if (rhs.n_ != n_) {
            throw std::invalid_argument("PauliString: size mismatch in product");
        }
        // Per-qubit phase of the letter product a*b, in powers of i.
        int plus = 0;
        int minus = 0;
        for (std::size_t w = 0; w < x_.size(); ++w) {
            const auto x1 = x_[w], z1 = z_[w], x2 = rhs.x_[w], z2 = rhs.z_[w];
            const auto xs = x1 & ~z1, ys = x1 & z1, zs = ~x1 & z1;
            plus += std::popcount(xs & x2 & z2) + std::popcount(ys & z2 & ~x2) +
                    std::popcount(zs & x2 & ~z2);
            minus += std::popcount(xs & ~x2 & z2) + std::popcount(ys & x2 & ~z2) +
                     std::popcount(zs & x2 & z2);
            x_[w] ^= x2;
            z_[w] ^= z2;
        }
        const int total = static_cast<int>(phase_ + rhs.phase_) + plus - minus;
        phase_ = static_cast<unsigned>(((total % 4) + 4) % 4);
        return *this;
    }

    friend PauliString operator*(PauliString lhs, const PauliString &rhs) {
        lhs *= rhs;
        return lhs;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::size_t n_{0};
    std::vector<std::uint64_t> x_;
    std::vector<std::uint64_t> z_;
    unsigned phase_{0};

    static std::size_t words(std::size_t n) { return (n + 63) / 64; }
    void check(std::size_t q) const {
        if (q >= n_) {
            throw std::out_of_range("PauliString: qubit " + std::to_string(q) +
                                    " out of range");
        }
    }
};

inline PauliString multiply(const PauliString &a, const PauliString &b) {
    return a * b;
}

inline bool commutes(const PauliString &a, const PauliString &b) {
    return a.symplectic().inner(b.symplectic()) == 0;
}

inline PauliString star_operator(const TorusLattice &lattice, std::size_t s) {
    if (lattice.degenerate()) {
        throw std::invalid_argument("star_operator: requires k >= 2");
    }
    PauliString op{lattice.num_edges()};
    for (auto e : lattice.star_edges(s)) {
        op.set(e, Pauli::X);
    }
    return op;
}

inline PauliString plaquette_operator(const TorusLattice &lattice,
                                      std::size_t p) {
    if (lattice.degenerate()) {
        throw std::invalid_argument("plaquette_operator: requires k >= 2");
    }
    PauliString op{lattice.num_edges()};
    for (auto e : lattice.boundary_edges(p)) {
        op.set(e, Pauli::Z);
    }
    return op;
}

/// All star operators followed by all plaquette operators.
inline std::vector<PauliString> toric_stabilizers(const TorusLattice &lattice) {
    std::vector<PauliString> gens;
    gens.reserve(lattice.num_vertices() + lattice.num_faces());
    for (std::size_t s = 0; s < lattice.num_vertices(); ++s) {
        gens.push_back(star_operator(lattice, s));
    }
    for (std::size_t p = 0; p < lattice.num_faces(); ++p) {
        gens.push_back(plaquette_operator(lattice, p));
    }
    return gens;
}

/**
 * String operator along a path: Z letters on a direct path, X letters on a
 * dual path, multiplied edge by edge in path order.
 */
inline PauliString string_operator(const TorusLattice &lattice,
                                   const Path &path) {
    if (path.lattice_size() != lattice.k()) {
        throw std::invalid_argument("string_operator: path from another lattice");
    }
    const Pauli letter = path.kind() == PathKind::direct ? Pauli::Z : Pauli::X;
    PauliString op{lattice.num_edges()};
    for (auto e : path.edges()) {
        op *= PauliString::single(lattice.num_edges(), e, letter);
    }
    return op;
}

/**
 * GF(2) rank of the symplectic matrix of a commuting set of Hermitian Pauli
 * strings. The joint +1 eigenspace has dimension 2^(n - rank).
 */
inline std::size_t stabilizer_rank(const std::vector<PauliString> &generators) {
    if (generators.empty()) {
        return 0;
    }
    const std::size_t n = generators.front().size();
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto &g = generators[i];
        if (g.size() != n) {
            throw std::invalid_argument("stabilizer_rank: size mismatch");
        }
        if (!g.hermitian()) {
            throw std::invalid_argument(
                "stabilizer_rank: generator phase must be +1 or -1");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!commutes(g, generators[j])) {
                throw std::invalid_argument(
                    "stabilizer_rank: generators do not commute");
            }
        }
    }

    // Rows are [x | z] packed into words.
    const std::size_t half = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(generators.size());
    for (const auto &g : generators) {
        std::vector<std::uint64_t> row(2 * half);
        std::copy(g.x_bits().begin(), g.x_bits().end(), row.begin());
        std::copy(g.z_bits().begin(), g.z_bits().end(),
                  row.begin() + static_cast<std::ptrdiff_t>(half));
        rows.push_back(std::move(row));
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * half * 64 && rank < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][w] & bit)) {
                for (std::size_t v = 0; v < rows[r].size(); ++v) {
                    rows[r][v] ^= rows[rank][v];
                }
            }
        }
        ++rank;
    }
    return rank;
}

/// Dimension of the joint +1 eigenspace, 2^(n - rank), as a power of two.
inline std::size_t ground_space_log2_dimension(
    const std::vector<PauliString> &generators) {
    if (generators.empty()) {
        return 0;
    }
    return generators.front().size() - stabilizer_rank(generators);
}

} // namespace toric
