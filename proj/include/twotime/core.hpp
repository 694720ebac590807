// Copyright 2026 The twotime Authors
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

// Complex-array primitives for 2-time states.
//
// Conventions used throughout the library:
//
//  * A pure 2-time state sum_ij alpha_ij <i| (x) |j> is stored as the d x d array
//    alpha. Row index i is the backward (post-selected bra, t2) index, column
//    index j the forward (prepared ket, t1) index.
//  * A Kraus operator A = sum_ij A_ij |i><j| is stored as its matrix, so that the
//    contraction A . Psi is the bilinear sum sum_ij alpha_ij A_ij.
//  * d x d arrays are vectorized row-major: v[i * d + j] = M(i, j). Density vectors
//    and Kraus density vectors are d^2 x d^2 arrays built from these vectors:
//        eta = sum_r p_r v(Psi_r) v(Psi_r)^dagger
//        K   = sum_chi v(A_chi) v(A_chi)^dagger
//    With this layout the bipartite density matrix rho_AB is the same array as eta.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "twotime/errors.hpp"

namespace twotime {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double kEqual = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kDenominator = 1e-14;
// Eigenvalues below this are dropped when taking PSD square roots.
inline constexpr double kCutoff = 1e-12;
}  // namespace tol

/// Hilbert-space dimension of the system, d >= 1.
class Dim {
   public:
    explicit Dim(Index d) : d_(d) {
        if (d < 1) {
            throw Error(ErrorCode::kInvalidInput, "dimension must be >= 1, got " + std::to_string(d));
        }
    }

    Index value() const noexcept { return d_; }
    Index squared() const noexcept { return d_ * d_; }

    friend bool operator==(Dim, Dim) = default;

   private:
    Index d_;
};

// ---------------------------------------------------------------------------
// Array helpers

/// Largest entry modulus.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermitian_defect(const Matrix& m) {
    return max_abs(m - m.adjoint());
}

inline Vector vectorize(const Matrix& m) {
    Vector v(m.size());
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

inline Matrix unvectorize(const Vector& v, Index d) {
    if (v.size() != d * d) {
        throw Error(ErrorCode::kShapeMismatch,
                    "cannot reshape length " + std::to_string(v.size()) + " vector into " +
                        std::to_string(d) + "x" + std::to_string(d));
    }
    Matrix m(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            m(i, j) = v(i * d + j);
        }
    }
    return m;
}

/// a b^dagger
inline Matrix outer(const Vector& a, const Vector& b) {
    return a * b.adjoint();
}

inline void require_square(const Matrix& m, Index n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        throw Error(ErrorCode::kShapeMismatch, std::string(what) + ": expected " + std::to_string(n) + "x" +
                                                   std::to_string(n) + ", got " + std::to_string(m.rows()) +
                                                   "x" + std::to_string(m.cols()));
    }
}

inline void require_same_dim(Index a, Index b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::kShapeMismatch, std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                                   " vs " + std::to_string(b) + ")");
    }
}

/// Integer square root for d^2 -> d; throws if n is not a perfect square.
inline Index isqrt_exact(Index n, const char* what) {
    auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r < 1 || r * r != n) {
        throw Error(ErrorCode::kShapeMismatch,
                    std::string(what) + ": size " + std::to_string(n) + " is not a square d^2");
    }
    return r;
}

inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double min_eigenvalue(const Matrix& m) {
    return hermitian_eigenvalues(m).minCoeff();
}

/// Partial trace of a (d*d) x (d*d) array over the first (row-major outer) factor.
inline Matrix partial_trace_first(const Matrix& m, Index d) {
    require_square(m, d * d, "partial_trace_first");
    Matrix out = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        out += m.block(i * d, i * d, d, d);
    }
    return out;
}

/// Partial trace over the second (row-major inner) factor.
inline Matrix partial_trace_second(const Matrix& m, Index d) {
    require_square(m, d * d, "partial_trace_second");
    Matrix out = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index k = 0; k < d; ++k) {
            for (Index j = 0; j < d; ++j) {
                out(i, k) += m(i * d + j, k * d + j);
            }
        }
    }
    return out;
}

/// Principal square root of a Hermitian PSD array; eigenvalues below the cutoff are zeroed.
inline Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
    Eigen::VectorXd roots = solver.eigenvalues();
    for (Index k = 0; k < roots.size(); ++k) {
        roots(k) = roots(k) > tol::kCutoff ? std::sqrt(roots(k)) : 0.0;
    }
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Validates Hermiticity and positivity of a d^2 x d^2 array.
inline void require_hermitian_psd(const Matrix& m, const char* what) {
    if (double h = hermitian_defect(m); h > tol::kEqual) {
        throw Error(ErrorCode::kInvalidInput,
                    std::string(what) + ": not Hermitian (defect " + std::to_string(h) + ")");
    }
    if (double e = min_eigenvalue(m); e < -tol::kPsd) {
        throw Error(ErrorCode::kInvalidInput,
                    std::string(what) + ": not positive semidefinite (min eigenvalue " + std::to_string(e) + ")");
    }
}

// ---------------------------------------------------------------------------
// Domain types

/// Pure 2-time state sum_ij alpha_ij <i| (x) |j>, stored with unit Frobenius norm.
class TwoTimeState {
   public:
    /// Normalizes the coefficient array. Throws kDegenerateInput on the zero array.
    static TwoTimeState from_coeffs(Matrix coeffs) {
        if (coeffs.rows() < 1 || coeffs.rows() != coeffs.cols()) {
            throw Error(ErrorCode::kShapeMismatch, "2-time state coefficients must be a nonempty square array");
        }
        const double norm = coeffs.norm();
        if (!(norm > tol::kDenominator)) {
            throw Error(ErrorCode::kDegenerateInput, "2-time state coefficients are zero");
        }
        // Leave arrays that are already unit-norm to machine precision untouched,
        // so that serialized states reload bit-identically.
        if (std::abs(norm - 1.0) > 4 * std::numeric_limits<double>::epsilon()) {
            coeffs /= norm;
        }
        return TwoTimeState(std::move(coeffs));
    }

    Index dim() const noexcept { return coeffs_.rows(); }
    const Matrix& coeffs() const noexcept { return coeffs_; }
    Vector vectorized() const { return vectorize(coeffs_); }

   private:
    explicit TwoTimeState(Matrix coeffs) : coeffs_(std::move(coeffs)) {}

    Matrix coeffs_;
};

/// A Kraus operator, or any operator viewed as a 2-time vector sum_ij A_ij |i>_t2 (x) _t1<j|.
class KrausOperator {
   public:
    explicit KrausOperator(Matrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
            throw Error(ErrorCode::kShapeMismatch, "Kraus operator must be a nonempty square array");
        }
    }

    Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    Vector vectorized() const { return vectorize(entries_); }

   private:
    Matrix entries_;
};

/// The 2-time vector I = sum_i |i>_t2 (x) _t1<i|.
inline KrausOperator identity_two_time_vector(Dim d) {
    return KrausOperator(Matrix::Identity(d.value(), d.value()));
}

/// Density vector of a 2-time ensemble: Hermitian, PSD, trace 1, d^2 x d^2.
class DensityVector {
   public:
    /// Validates an array that is already trace-normalized.
    static DensityVector from_matrix(Matrix mat) {
        validate_shape(mat);
        require_hermitian_psd(mat, "density vector");
        if (double t = std::abs(mat.trace() - Complex(1.0)); t > tol::kEqual) {
            throw Error(ErrorCode::kNotNormalized,
                        "density vector: trace must be 1 (off by " + std::to_string(t) + ")");
        }
        return DensityVector(std::move(mat));
    }

    /// Accepts any positive multiple of a density vector and rescales it to trace 1.
    static DensityVector normalized(Matrix mat) {
        validate_shape(mat);
        require_hermitian_psd(mat, "density vector");
        const double t = mat.trace().real();
        if (!(t > tol::kDenominator)) {
            throw Error(ErrorCode::kDegenerateInput, "density vector has zero trace");
        }
        mat /= t;
        return DensityVector(std::move(mat));
    }

    Index dim() const noexcept { return dim_; }
    const Matrix& matrix() const noexcept { return mat_; }

   private:
    explicit DensityVector(Matrix mat) : mat_(std::move(mat)), dim_(isqrt_exact(mat_.rows(), "density vector")) {}

    static void validate_shape(const Matrix& mat) {
        if (mat.rows() != mat.cols()) {
            throw Error(ErrorCode::kShapeMismatch, "density vector must be square");
        }
        isqrt_exact(mat.rows(), "density vector");
    }

    Matrix mat_;
    Index dim_;
};

/// K = sum_chi v(A_chi) v(A_chi)^dagger for one coarse-grained outcome.
class KrausDensityVector {
   public:
    static KrausDensityVector from_matrix(Matrix mat) {
        if (mat.rows() != mat.cols()) {
            throw Error(ErrorCode::kShapeMismatch, "Kraus density vector must be square");
        }
        isqrt_exact(mat.rows(), "Kraus density vector");
        require_hermitian_psd(mat, "Kraus density vector");
        return KrausDensityVector(std::move(mat));
    }

    Index dim() const noexcept { return dim_; }
    const Matrix& matrix() const noexcept { return mat_; }

   private:
    explicit KrausDensityVector(Matrix mat)
        : mat_(std::move(mat)), dim_(isqrt_exact(mat_.rows(), "Kraus density vector")) {}

    Matrix mat_;
    Index dim_;
};

// ---------------------------------------------------------------------------
// Contractions

/// A . Psi = sum_ij alpha_ij A_ij (bilinear, no conjugation).
inline Complex contract_pure(const KrausOperator& a, const TwoTimeState& psi) {
    require_same_dim(a.dim(), psi.dim(), "contract_pure");
    return a.matrix().cwiseProduct(psi.coeffs()).sum();
}

namespace detail {

/// v(A)^T . mat . v(A)^*, with no normalization requirement on mat.
inline double sandwich_raw(const Matrix& a, const Matrix& mat) {
    const Vector v = vectorize(a);
    const Complex value = v.transpose() * mat * v.conjugate();
    double p = value.real();
    if (p < 0.0) {
        if (p < -tol::kEqual * std::max(1.0, std::abs(mat.trace()))) {
            throw Error(ErrorCode::kInvalidInput,
                        "negative sandwich value " + std::to_string(p) + "; array is not positive");
        }
        p = 0.0;
    }
    return p;
}

/// Trace pairing tr(mat . K^T) = sum_xy mat_xy K_xy.
inline double pair_raw(const Matrix& k, const Matrix& mat) {
    double p = mat.cwiseProduct(k).sum().real();
    if (p < 0.0) {
        if (p < -tol::kEqual * std::max(1.0, std::abs(mat.trace()))) {
            throw Error(ErrorCode::kInvalidInput, "negative pairing value " + std::to_string(p));
        }
        p = 0.0;
    }
    return p;
}

}  // namespace detail

/// A . eta . A^dagger: the (unnormalized) weight of Kraus outcome A on eta.
inline double sandwich(const KrausOperator& a, const DensityVector& eta) {
    require_same_dim(a.dim(), eta.dim(), "sandwich");
    return detail::sandwich_raw(a.matrix(), eta.matrix());
}

/// K . eta. For K built from {A_chi} this equals sum_chi sandwich(A_chi, eta).
inline double pair(const KrausDensityVector& k, const DensityVector& eta) {
    require_same_dim(k.dim(), eta.dim(), "pair");
    return detail::pair_raw(k.matrix(), eta.matrix());
}

}  // namespace twotime
