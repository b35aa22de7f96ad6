// pauli_algebra.hpp — fixed-size complex matrices, the Pauli basis, Bloch-matrix
// conversions for two-qubit states, and eigenvalues of small dense matrices.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace entdyn {

using complexd = std::complex<double>;

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnphysicalState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-major fixed-size complex matrices. Dense and value-semantic; everything
// in the model is 2x2, 3x3 or 4x4.
template <std::size_t N>
struct ComplexMat {
    std::array<complexd, N * N> e{};

    complexd& operator()(std::size_t i, std::size_t j) { return e[i * N + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const { return e[i * N + j]; }

    static constexpr std::size_t dim() { return N; }

    static ComplexMat identity() {
        ComplexMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    // Flat storage round-trips exactly: same array type in and out.
    std::array<complexd, N * N> to_flat() const { return e; }
    static ComplexMat from_flat(const std::array<complexd, N * N>& flat) {
        ComplexMat m;
        m.e = flat;
        return m;
    }
};

using Mat2 = ComplexMat<2>;
using Mat3 = ComplexMat<3>;
using Mat4 = ComplexMat<4>;

template <std::size_t N>
ComplexMat<N> operator+(const ComplexMat<N>& a, const ComplexMat<N>& b) {
    ComplexMat<N> r;
    for (std::size_t k = 0; k < N * N; ++k) r.e[k] = a.e[k] + b.e[k];
    return r;
}

template <std::size_t N>
ComplexMat<N> operator-(const ComplexMat<N>& a, const ComplexMat<N>& b) {
    ComplexMat<N> r;
    for (std::size_t k = 0; k < N * N; ++k) r.e[k] = a.e[k] - b.e[k];
    return r;
}

template <std::size_t N>
ComplexMat<N> operator*(const ComplexMat<N>& a, const ComplexMat<N>& b) {
    ComplexMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            complexd s = 0.0;
            for (std::size_t k = 0; k < N; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

template <std::size_t N>
ComplexMat<N> operator*(complexd scalar, const ComplexMat<N>& a) {
    ComplexMat<N> r;
    for (std::size_t k = 0; k < N * N; ++k) r.e[k] = scalar * a.e[k];
    return r;
}

template <std::size_t N>
ComplexMat<N> adjoint(const ComplexMat<N>& a) {
    ComplexMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

template <std::size_t N>
ComplexMat<N> transpose(const ComplexMat<N>& a) {
    ComplexMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = a(j, i);
    return r;
}

template <std::size_t N>
complexd trace(const ComplexMat<N>& a) {
    complexd s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += a(i, i);
    return s;
}

// max_ij |A_ij - conj(A_ji)|
template <std::size_t N>
double hermiticity_defect(const ComplexMat<N>& a) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

template <std::size_t N>
bool is_hermitian(const ComplexMat<N>& a, double tol) {
    return hermiticity_defect(a) <= tol;
}

template <std::size_t N>
double max_abs_entry(const ComplexMat<N>& a) {
    double d = 0.0;
    for (const auto& z : a.e) d = std::max(d, std::abs(z));
    return d;
}

// sigma^0 (identity) and sigma^1..3 in the standard convention, sigma^3 = diag(1,-1).
Mat2 pauli(int i);

// Standard Kronecker product: (A (x) B)[2i+k][2j+l] = A[i][j] B[k][l].
Mat4 kron(const Mat2& a, const Mat2& b);

// The 16 real coefficients rho_{mu nu} of a two-qubit state in the
// sigma_mu (x) sigma_nu basis. rho_{00} is pinned to 1 (unit trace).
struct BlochMatrix {
    std::array<std::array<double, 4>, 4> e{};

    BlochMatrix() { e[0][0] = 1.0; }

    double& operator()(std::size_t mu, std::size_t nu) { return e[mu][nu]; }
    const double& operator()(std::size_t mu, std::size_t nu) const { return e[mu][nu]; }

    // Validates rho_00 == 1 (within tol, then pinned exactly) and finiteness.
    static BlochMatrix from_coefficients(const std::array<std::array<double, 4>, 4>& c,
                                         double tol = 1e-9);
};

// rho = (1/4) sum_{mu nu} rho_{mu nu} sigma_mu (x) sigma_nu.
// Hermitian and unit-trace for any real Bloch input with rho_00 = 1.
Mat4 bloch_to_density(const BlochMatrix& b);

// Raw coefficients Tr[rho (sigma_mu (x) sigma_nu)] of an arbitrary Hermitian
// matrix; entry (0,0) is the trace. Throws UnphysicalState when any
// coefficient has imaginary part above tol.
std::array<std::array<double, 4>, 4> bloch_coefficients(const Mat4& rho, double tol = 1e-9);

// Coefficients of a unit-trace Hermitian state as a BlochMatrix.
BlochMatrix density_to_bloch(const Mat4& rho, double tol = 1e-9);

// Eigenvalues of a general dense complex matrix (unordered). Balanced
// Hessenberg reduction followed by shifted QR iteration; accurate for
// repeated eigenvalues where characteristic-polynomial methods lose digits.
// Throws NumericError if the iteration fails to converge.
std::array<complexd, 4> eigenvalues(const Mat4& m);
std::array<complexd, 3> eigenvalues(const Mat3& m);
std::array<complexd, 2> eigenvalues(const Mat2& m);

// Cofactor-expansion determinants; used as an independent check of the
// eigenvalue product.
complexd determinant(const Mat2& m);
complexd determinant(const Mat3& m);
complexd determinant(const Mat4& m);

// Smallest eigenvalue (real part) of a Hermitian matrix.
double hermitian_min_eigenvalue(const Mat4& m);

}  // namespace entdyn
