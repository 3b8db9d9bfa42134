// Copyright 2026 The ppt-witness-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pwl {

using Complex = std::complex<double>;

// Default tolerances. Every routine that uses one takes it as a defaulted
// parameter so tests can tighten or loosen it per call.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiOffDiagTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kPsdClipTol = 1e-10;

/// Dense square complex matrix, row-major.
///
/// Qubit ordering convention used throughout the library: in a tensor product
/// the leftmost factor is qubit 1 and maps to the most significant bit of the
/// computational-basis index, so index 0b100 is |100>.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) {
        return ComplexMatrix(dim);
    }
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><w|
    static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * dim_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim_ + c];
    }
    std::span<const Complex> data() const {
        return data_;
    }

    bool all_finite() const;
    bool is_hermitian(double tol = kHermitianTol) const;
    double max_abs() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix dagger(const ComplexMatrix &a);

/// Kronecker product; `a` is the more significant factor.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors);

/// U * rho * U^dagger
ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &rho);

/// Transposes tensor factor `which` (0 = leftmost) of an operator on the space
/// with factor dimensions `dims`.
ComplexMatrix partial_transpose(const ComplexMatrix &rho, std::span<const std::size_t> dims,
                                std::size_t which);

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original order.
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

struct HermEigResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
    int sweeps = 0;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// The input is symmetrized before iterating. Convergence is declared when the
/// off-diagonal Frobenius norm drops below `off_diag_tol * max(1, ||h||_F)`.
/// Throws InvalidArgument if `h` deviates from Hermitian by more than
/// `herm_tol` elementwise and NumericalError if `max_sweeps` is exhausted.
HermEigResult herm_eig(const ComplexMatrix &h, double herm_tol = kHermitianTol,
                       double off_diag_tol = kJacobiOffDiagTol,
                       int max_sweeps = kJacobiMaxSweeps);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix &h);

/// Rebuilds V * diag(f(lambda)) * V^dagger.
ComplexMatrix spectral_map(const HermEigResult &eig, std::span<const double> mapped_values);

/// Hermitian positive square root. Eigenvalues in [-clip_tol, 0) are treated
/// as zero; anything below -clip_tol raises InvalidArgument.
ComplexMatrix psd_sqrt(const ComplexMatrix &a, double clip_tol = kPsdClipTol);

double frobenius_norm(const ComplexMatrix &a);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
Complex trace(const ComplexMatrix &a);

/// Tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace pwl
