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

#include "pwl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pwl/errors.hpp"

namespace pwl {

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument(fmt::format("{}: dimension mismatch ({} vs {})", op, a.dim(), b.dim()));
    }
}

std::size_t checked_product(std::span<const std::size_t> dims, std::size_t expected, const char *op) {
    if (dims.empty()) {
        throw InvalidArgument(fmt::format("{}: empty factor list", op));
    }
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) {
            throw InvalidArgument(fmt::format("{}: zero factor dimension", op));
        }
        total *= d;
    }
    if (total != expected) {
        throw InvalidArgument(
            fmt::format("{}: factor dimensions multiply to {} but matrix has dim {}", op, total, expected));
    }
    return total;
}

// Mixed-radix digits of `index`, most significant factor first.
void split_index(std::size_t index, std::span<const std::size_t> dims, std::span<std::size_t> digits) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

std::size_t join_index(std::span<const std::size_t> digits, std::span<const std::size_t> dims) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        index = index * dims[k] + digits[k];
    }
    return index;
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double sum = 0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            if (r != c) {
                sum += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) {
        throw InvalidArgument("ComplexMatrix: dimension must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0 || data_.size() != dim * dim) {
        throw InvalidArgument(fmt::format("ComplexMatrix: expected {} entries, got {}", dim * dim, data_.size()));
    }
    if (!all_finite()) {
        throw InvalidArgument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    if (dim_ == 0) {
        throw InvalidArgument("ComplexMatrix: dimension must be positive");
    }
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw InvalidArgument("ComplexMatrix: rows must form a square matrix");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!all_finite()) {
        throw InvalidArgument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
    if (v.size() != w.size()) {
        throw InvalidArgument("outer: vector length mismatch");
    }
    ComplexMatrix m(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < w.size(); ++c) {
            m(r, c) = v[r] * std::conj(w[c]);
        }
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

namespace pauli {
ComplexMatrix I() {
    return ComplexMatrix::identity(2);
}
ComplexMatrix X() {
    return {{0, 1}, {1, 0}};
}
ComplexMatrix Y() {
    return {{0, Complex(0, -1)}, {Complex(0, 1), 0}};
}
ComplexMatrix Z() {
    return {{1, 0}, {0, -1}};
}
}  // namespace pauli

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b;
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t ar = 0; ar < na; ++ar) {
        for (std::size_t ac = 0; ac < na; ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < nb; ++br) {
                for (std::size_t bc = 0; bc < nb; ++bc) {
                    out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
    if (factors.size() == 0) {
        throw InvalidArgument("tensor: empty factor list");
    }
    auto it = factors.begin();
    ComplexMatrix out = *it;
    for (++it; it != factors.end(); ++it) {
        out = tensor(out, *it);
    }
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &rho) {
    return u * rho * dagger(u);
}

ComplexMatrix partial_transpose(const ComplexMatrix &rho, std::span<const std::size_t> dims, std::size_t which) {
    checked_product(dims, rho.dim(), "partial_transpose");
    if (which >= dims.size()) {
        throw InvalidArgument(fmt::format("partial_transpose: factor {} out of range", which));
    }
    const std::size_t n = rho.dim();
    std::vector<std::size_t> rd(dims.size());
    std::vector<std::size_t> cd(dims.size());
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        split_index(r, dims, rd);
        for (std::size_t c = 0; c < n; ++c) {
            split_index(c, dims, cd);
            std::swap(rd[which], cd[which]);
            out(join_index(rd, dims), join_index(cd, dims)) = rho(r, c);
            std::swap(rd[which], cd[which]);
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    checked_product(dims, rho.dim(), "partial_trace");
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw InvalidArgument(fmt::format("partial_trace: invalid or repeated factor {}", k));
        }
        kept[k] = true;
    }
    std::vector<std::size_t> keep_dims;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (kept[k]) {
            keep_dims.push_back(dims[k]);
        }
    }
    if (keep_dims.empty()) {
        ComplexMatrix out(1);
        out(0, 0) = trace(rho);
        return out;
    }

    const std::size_t n = rho.dim();
    std::vector<std::size_t> rd(dims.size());
    std::vector<std::size_t> cd(dims.size());
    std::vector<std::size_t> rk(keep_dims.size());
    std::vector<std::size_t> ck(keep_dims.size());
    const std::size_t out_dim = std::accumulate(keep_dims.begin(), keep_dims.end(), std::size_t{1},
                                                std::multiplies<>());
    ComplexMatrix out(out_dim);
    for (std::size_t r = 0; r < n; ++r) {
        split_index(r, dims, rd);
        for (std::size_t c = 0; c < n; ++c) {
            split_index(c, dims, cd);
            bool traced_equal = true;
            std::size_t j = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (kept[k]) {
                    rk[j] = rd[k];
                    ck[j] = cd[k];
                    ++j;
                } else if (rd[k] != cd[k]) {
                    traced_equal = false;
                    break;
                }
            }
            if (traced_equal) {
                out(join_index(rk, keep_dims), join_index(ck, keep_dims)) += rho(r, c);
            }
        }
    }
    return out;
}

HermEigResult herm_eig(const ComplexMatrix &h, double herm_tol, double off_diag_tol, int max_sweeps) {
    if (!h.all_finite()) {
        throw InvalidArgument("herm_eig: non-finite entry");
    }
    if (!h.is_hermitian(herm_tol)) {
        throw InvalidArgument("herm_eig: matrix is not Hermitian within tolerance");
    }
    const std::size_t n = h.dim();
    ComplexMatrix a = (h + dagger(h)) * Complex(0.5);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = off_diag_tol * std::max(1.0, frobenius_norm(a));

    int sweep = 0;
    for (;; ++sweep) {
        if (off_diagonal_norm(a) < threshold) {
            break;
        }
        if (sweep >= max_sweeps) {
            throw NumericalError(fmt::format("herm_eig: no convergence after {} sweeps", max_sweeps));
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                // Phase-rotate column q so that a(p,q) becomes real, then apply
                // the real symmetric Jacobi rotation.
                const Complex e = apq / g;
                const Complex ec = std::conj(e);
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // a <- a * J, v <- v * J with J = [[c, s], [-s*conj(e), c*conj(e)]].
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * ec * akq;
                    a(k, q) = s * akp + c * ec * akq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * ec * vkq;
                    v(k, q) = s * vkp + c * ec * vkq;
                }
                // a <- J^dagger * a
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * e * aqk;
                    a(q, k) = s * apk + c * e * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermEigResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = ComplexMatrix(n);
    result.sweeps = sweep;
    for (std::size_t k = 0; k < n; ++k) {
        result.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            result.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return result;
}

double min_eigenvalue(const ComplexMatrix &h) {
    return herm_eig(h).eigenvalues.front();
}

ComplexMatrix spectral_map(const HermEigResult &eig, std::span<const double> mapped_values) {
    const std::size_t n = eig.eigenvectors.dim();
    if (mapped_values.size() != n) {
        throw InvalidArgument("spectral_map: value count mismatch");
    }
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = mapped_values[k];
        if (lam == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const Complex vr = eig.eigenvectors(r, k) * lam;
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(eig.eigenvectors(c, k));
            }
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &a, double clip_tol) {
    auto eig = herm_eig(a);
    std::vector<double> roots(eig.eigenvalues.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double lam = eig.eigenvalues[k];
        if (lam < -clip_tol) {
            throw InvalidArgument(fmt::format("psd_sqrt: eigenvalue {} is significantly negative", lam));
        }
        roots[k] = lam > 0 ? std::sqrt(lam) : 0.0;
    }
    return spectral_map(eig, roots);
}

double frobenius_norm(const ComplexMatrix &a) {
    double sum = 0;
    for (const auto &z : a.data()) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "frobenius_distance");
    double sum = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        sum += std::norm(a.data()[k] - b.data()[k]);
    }
    return std::sqrt(sum);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

Complex trace(const ComplexMatrix &a) {
    Complex t{};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        t += a(k, k);
    }
    return t;
}

Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "trace_product");
    Complex t{};
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            t += a(r, c) * b(c, r);
        }
    }
    return t;
}

}  // namespace pwl
