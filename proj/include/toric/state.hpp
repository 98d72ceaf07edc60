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
 * Dense pure and mixed states on up to eight qubits.
 *
 * Bit ordering (tag `qubit0-msb`): qubit 0 is the most significant bit of the
 * computational-basis index, so |q0 q1 ... q(n-1)> has index
 * q0*2^(n-1) + ... + q(n-1). Qubit 0 is the leftmost letter of a Pauli string
 * and the leftmost digit of a basis label.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace toric {

using cplx = std::complex<double>;

inline constexpr std::size_t max_qubits = 8;
inline constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
inline constexpr std::string_view bit_order_tag = "qubit0-msb";

/// Single-operation checks.
inline constexpr double construction_tol = 1e-12;
/// Checks after a sequence of operations.
inline constexpr double pipeline_tol = 1e-9;

/// Index bit that carries qubit q in an n-qubit register.
[[nodiscard]] constexpr std::size_t qubit_bit(std::size_t n, std::size_t q) {
    return n - 1 - q;
}

/// "0000"-style label of a basis index, qubit 0 first.
inline std::string basis_label(std::size_t n, std::size_t index) {
    std::string label(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        if ((index >> qubit_bit(n, q)) & 1U) {
            label[q] = '1';
        }
    }
    return label;
}

inline void check_qubit_count(std::size_t n) {
    if (n == 0 || n > max_qubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(max_qubits) + "], got " +
                                    std::to_string(n));
    }
}

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n) : n_{n} {
        check_qubit_count(n);
        amp_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
        amp_[0] = 1.0;
    }

    static StateVector basis(std::size_t n, std::size_t index) {
        StateVector s{n};
        if (index >= s.dim()) {
            throw std::out_of_range("StateVector::basis: index out of range");
        }
        s.amp_[0] = 0.0;
        s.amp_[index] = 1.0;
        return s;
    }

    /// Takes amplitudes as given; the norm must already be 1 within 1e-12.
    static StateVector from_amplitudes(std::vector<cplx> amplitudes) {
        const std::size_t dim = amplitudes.size();
        if (dim < 2 || (dim & (dim - 1)) != 0) {
            throw std::invalid_argument(
                "StateVector: amplitude count must be a power of two >= 2");
        }
        StateVector s{static_cast<std::size_t>(std::countr_zero(dim))};
        s.amp_ = std::move(amplitudes);
        if (std::abs(s.norm() - 1.0) > construction_tol) {
            throw std::invalid_argument("StateVector: amplitudes not normalized");
        }
        return s;
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    static StateVector normalized(std::vector<cplx> amplitudes) {
        double nrm = 0.0;
        for (const auto &a : amplitudes) {
            nrm += std::norm(a);
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) {
            throw std::domain_error("StateVector: cannot normalize zero vector");
        }
        for (auto &a : amplitudes) {
            a /= nrm;
        }
        return from_amplitudes(std::move(amplitudes));
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amp_.size(); }
    [[nodiscard]] std::span<cplx> data() noexcept { return amp_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return amp_; }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept {
        return amp_;
    }
    cplx &operator[](std::size_t i) { return amp_[i]; }
    const cplx &operator[](std::size_t i) const { return amp_[i]; }

    [[nodiscard]] double norm() const {
        double acc = 0.0;
        for (const auto &a : amp_) {
            acc += std::norm(a);
        }
        return std::sqrt(acc);
    }

    void scale(cplx factor) {
        for (auto &a : amp_) {
            a *= factor;
        }
    }

  private:
    std::size_t n_;
    std::vector<cplx> amp_;
};

/// Row-major 2^n x 2^n density matrix.
class DensityMatrix {
  public:
    /// |0...0><0...0| on n qubits.
    explicit DensityMatrix(std::size_t n) : n_{n} {
        check_qubit_count(n);
        dim_ = std::size_t{1} << n;
        rho_.assign(dim_ * dim_, cplx{0.0, 0.0});
        rho_[0] = 1.0;
    }

    static DensityMatrix from_pure(const StateVector &psi) {
        DensityMatrix rho{psi.num_qubits()};
        for (std::size_t i = 0; i < rho.dim_; ++i) {
            for (std::size_t j = 0; j < rho.dim_; ++j) {
                rho(i, j) = psi[i] * std::conj(psi[j]);
            }
        }
        return rho;
    }

    static DensityMatrix maximally_mixed(std::size_t n) {
        DensityMatrix rho{n};
        rho.rho_[0] = 0.0;
        for (std::size_t i = 0; i < rho.dim_; ++i) {
            rho(i, i) = 1.0 / static_cast<double>(rho.dim_);
        }
        return rho;
    }

    /// Row-major entries; no physicality check (see validate()).
    static DensityMatrix from_entries(std::size_t n, std::vector<cplx> entries) {
        DensityMatrix rho{n};
        if (entries.size() != rho.dim_ * rho.dim_) {
            throw std::invalid_argument("DensityMatrix: wrong entry count");
        }
        rho.rho_ = std::move(entries);
        return rho;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<cplx> data() noexcept { return rho_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return rho_; }

    cplx &operator()(std::size_t i, std::size_t j) { return rho_[i * dim_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const {
        return rho_[i * dim_ + j];
    }

    [[nodiscard]] cplx trace() const {
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    [[nodiscard]] double purity() const {
        // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
        double acc = 0.0;
        for (const auto &v : rho_) {
            acc += std::norm(v);
        }
        return acc;
    }

    [[nodiscard]] double hermiticity_error() const {
        double err = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i; j < dim_; ++j) {
                err = std::max(err, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return err;
    }

    [[nodiscard]] Eigen::MatrixXcd to_eigen() const {
        Eigen::MatrixXcd m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    (*this)(i, j);
            }
        }
        return m;
    }

    /// Smallest eigenvalue of the Hermitian part.
    [[nodiscard]] double min_eigenvalue() const {
        const Eigen::MatrixXcd m = to_eigen();
        const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            herm, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

    /// Throws std::domain_error unless Hermitian, unit trace and PSD.
    void validate(double tol = construction_tol,
                  double eig_tol = 1e-10) const {
        if (hermiticity_error() > tol) {
            throw std::domain_error("DensityMatrix: not Hermitian");
        }
        if (std::abs(trace() - 1.0) > tol) {
            throw std::domain_error("DensityMatrix: trace is not 1");
        }
        if (min_eigenvalue() < -eig_tol) {
            throw std::domain_error("DensityMatrix: negative eigenvalue");
        }
    }

    DensityMatrix &operator+=(const DensityMatrix &other) {
        check_same(other);
        for (std::size_t i = 0; i < rho_.size(); ++i) {
            rho_[i] += other.rho_[i];
        }
        return *this;
    }

    DensityMatrix &operator*=(double factor) {
        for (auto &v : rho_) {
            v *= factor;
        }
        return *this;
    }

    /// Largest entrywise deviation.
    [[nodiscard]] double max_abs_diff(const DensityMatrix &other) const {
        check_same(other);
        double err = 0.0;
        for (std::size_t i = 0; i < rho_.size(); ++i) {
            err = std::max(err, std::abs(rho_[i] - other.rho_[i]));
        }
        return err;
    }

  private:
    std::size_t n_;
    std::size_t dim_{0};
    std::vector<cplx> rho_;

    void check_same(const DensityMatrix &other) const {
        if (other.n_ != n_) {
            throw std::invalid_argument("DensityMatrix: size mismatch");
        }
    }
};

inline cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner_product: size mismatch");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

} // namespace toric
