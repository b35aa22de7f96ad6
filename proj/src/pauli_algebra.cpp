#include "entdyn/pauli_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace entdyn {

namespace {

// Neumaier-compensated accumulation. The Bloch<->density conversions mix
// coefficients of very different magnitude in the non-CP regime; keeping the
// small sums exact matters for the concurrence of near-singlet states.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

const std::array<Mat2, 4>& pauli_basis() {
    static const std::array<Mat2, 4> basis = [] {
        std::array<Mat2, 4> b;
        b[0] = Mat2::identity();
        b[1](0, 1) = 1.0;
        b[1](1, 0) = 1.0;
        b[2](0, 1) = complexd(0.0, -1.0);
        b[2](1, 0) = complexd(0.0, 1.0);
        b[3](0, 0) = 1.0;
        b[3](1, 1) = -1.0;
        return b;
    }();
    return basis;
}

// sigma_mu (x) sigma_nu for mu,nu = 0..3, built once.
const std::array<std::array<Mat4, 4>, 4>& two_qubit_basis() {
    static const std::array<std::array<Mat4, 4>, 4> basis = [] {
        std::array<std::array<Mat4, 4>, 4> b;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) b[mu][nu] = kron(pauli(mu), pauli(nu));
        return b;
    }();
    return basis;
}

}  // namespace

Mat2 pauli(int i) {
    if (i < 0 || i > 3) throw InvalidArgument("pauli: index must be in 0..3");
    return pauli_basis()[static_cast<std::size_t>(i)];
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

BlochMatrix BlochMatrix::from_coefficients(const std::array<std::array<double, 4>, 4>& c,
                                           double tol) {
    for (const auto& row : c)
        for (double v : row)
            if (!std::isfinite(v)) throw InvalidArgument("BlochMatrix: non-finite coefficient");
    if (std::abs(c[0][0] - 1.0) > tol)
        throw InvalidArgument("BlochMatrix: rho_00 must equal 1 (got " +
                              std::to_string(c[0][0]) + ")");
    BlochMatrix b;
    b.e = c;
    b.e[0][0] = 1.0;
    return b;
}

Mat4 bloch_to_density(const BlochMatrix& b) {
    const auto& basis = two_qubit_basis();
    Mat4 rho;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CompensatedSum re, im;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    const complexd w = basis[mu][nu](i, j);
                    if (w == complexd(0.0, 0.0)) continue;
                    const double r = b.e[mu][nu];
                    re.add(r * w.real());
                    im.add(r * w.imag());
                }
            rho(i, j) = 0.25 * complexd(re.value(), im.value());
        }
    return rho;
}

std::array<std::array<double, 4>, 4> bloch_coefficients(const Mat4& rho, double tol) {
    const auto& basis = two_qubit_basis();
    std::array<std::array<double, 4>, 4> c{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            // Tr[rho Sigma_{mu nu}]; the basis matrices have one nonzero entry
            // per row so the trace is a 4-term sum.
            CompensatedSum re, im;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t k = 0; k < 4; ++k) {
                    const complexd w = basis[mu][nu](k, i);
                    if (w == complexd(0.0, 0.0)) continue;
                    const complexd term = rho(i, k) * w;
                    re.add(term.real());
                    im.add(term.imag());
                }
            if (std::abs(im.value()) > tol)
                throw UnphysicalState("bloch_coefficients: coefficient (" +
                                      std::to_string(mu) + "," + std::to_string(nu) +
                                      ") has imaginary part " + std::to_string(im.value()));
            c[mu][nu] = re.value();
        }
    return c;
}

BlochMatrix density_to_bloch(const Mat4& rho, double tol) {
    const auto c = bloch_coefficients(rho, tol);
    if (std::abs(c[0][0] - 1.0) > tol)
        throw UnphysicalState("density_to_bloch: trace differs from 1 by " +
                              std::to_string(c[0][0] - 1.0));
    return BlochMatrix::from_coefficients(c, tol);
}

// ------------------------- small dense eigenvalues --------------------------
//
// Balancing + Householder Hessenberg reduction + explicitly shifted QR with
// Givens rotations. Dimension is at most 4, so plain O(n^3) passes are cheap.

namespace {

constexpr int kMaxN = 4;

struct SmallMat {
    int n = 0;
    std::array<complexd, kMaxN * kMaxN> a{};

    complexd& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    const complexd& at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

// Diagonal similarity scaling by powers of two (no rounding) to even out row
// and column norms; improves eigenvalue accuracy for strongly non-normal
// inputs such as rho * rho_tilde of nearly pure states.
void balance(SmallMat& m) {
    const int n = m.n;
    bool converged = false;
    for (int sweep = 0; sweep < 8 && !converged; ++sweep) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(m.at(i, j));
                c += std::abs(m.at(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            const double s = r + c;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((r + c) < 0.95 * s && f != 1.0) {
                converged = false;
                for (int j = 0; j < n; ++j) m.at(i, j) /= f;
                for (int j = 0; j < n; ++j) m.at(j, i) *= f;
            }
        }
    }
}

void hessenberg(SmallMat& m) {
    const int n = m.n;
    for (int k = 0; k < n - 2; ++k) {
        // Householder reflector zeroing column k below the subdiagonal.
        double norm = 0.0;
        for (int i = k + 1; i < n; ++i) norm = std::hypot(norm, std::abs(m.at(i, k)));
        if (norm == 0.0) continue;
        complexd alpha = m.at(k + 1, k);
        const double aabs = std::abs(alpha);
        const complexd phase = (aabs == 0.0) ? complexd(1.0, 0.0) : alpha / aabs;
        const complexd beta = -phase * norm;

        std::array<complexd, kMaxN> v{};
        v[static_cast<std::size_t>(k + 1)] = alpha - beta;
        for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i)] = m.at(i, k);
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
        if (vnorm2 == 0.0) continue;

        // A <- (I - 2 v v^H / |v|^2) A (I - 2 v v^H / |v|^2)
        for (int j = 0; j < n; ++j) {
            complexd s = 0.0;
            for (int i = k + 1; i < n; ++i)
                s += std::conj(v[static_cast<std::size_t>(i)]) * m.at(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) m.at(i, j) -= v[static_cast<std::size_t>(i)] * s;
        }
        for (int i = 0; i < n; ++i) {
            complexd s = 0.0;
            for (int j = k + 1; j < n; ++j) s += m.at(i, j) * v[static_cast<std::size_t>(j)];
            s *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) -= s * std::conj(v[static_cast<std::size_t>(j)]);
        }
        m.at(k + 1, k) = beta;
        for (int i = k + 2; i < n; ++i) m.at(i, k) = 0.0;
    }
}

// Eigenvalues of [[a, b], [c, d]] with a cancellation-safe small root:
// lambda1 = m + r with the larger magnitude, lambda2 = det / lambda1.
std::pair<complexd, complexd> eig2(complexd a, complexd b, complexd c, complexd d) {
    const complexd m = 0.5 * (a + d);
    const complexd r = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const complexd l1 = (std::abs(m + r) >= std::abs(m - r)) ? m + r : m - r;
    if (l1 == complexd(0.0, 0.0)) return {complexd(0.0, 0.0), complexd(0.0, 0.0)};
    const complexd det = a * d - b * c;
    return {l1, det / l1};
}

std::array<complexd, kMaxN> qr_eigenvalues(SmallMat m) {
    const int n = m.n;
    std::array<complexd, kMaxN> eig{};
    int hi = n - 1;
    int iter = 0, since_deflation = 0;
    const double eps = std::numeric_limits<double>::epsilon();

    while (hi >= 0) {
        // Find the active block [lo..hi]: walk up while subdiagonals are
        // numerically nonzero.
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(m.at(lo, lo - 1));
            if (sub <= eps * (std::abs(m.at(lo - 1, lo - 1)) + std::abs(m.at(lo, lo)))) {
                m.at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            eig[static_cast<std::size_t>(hi)] = m.at(hi, hi);
            --hi;
            since_deflation = 0;
            continue;
        }
        if (lo == hi - 1) {
            const auto [l1, l2] =
                eig2(m.at(lo, lo), m.at(lo, hi), m.at(hi, lo), m.at(hi, hi));
            eig[static_cast<std::size_t>(hi)] = l1;
            eig[static_cast<std::size_t>(hi - 1)] = l2;
            hi -= 2;
            since_deflation = 0;
            continue;
        }

        if (++iter > 40 * n) throw NumericError("eigenvalues: QR iteration did not converge");

        // Wilkinson shift from the trailing 2x2, replaced by an exceptional
        // shift when progress stalls.
        complexd shift;
        if (++since_deflation % 12 == 0) {
            shift = m.at(hi, hi) + std::abs(m.at(hi, hi - 1)) * complexd(0.75, 0.0);
        } else {
            const auto [l1, l2] = eig2(m.at(hi - 1, hi - 1), m.at(hi - 1, hi),
                                       m.at(hi, hi - 1), m.at(hi, hi));
            shift = (std::abs(l1 - m.at(hi, hi)) < std::abs(l2 - m.at(hi, hi))) ? l1 : l2;
        }

        // Explicit shifted QR sweep on the active block via Givens rotations.
        for (int i = lo; i <= hi; ++i) m.at(i, i) -= shift;

        std::array<double, kMaxN> cs{};
        std::array<complexd, kMaxN> sn{};
        for (int k = lo; k < hi; ++k) {
            const complexd x = m.at(k, k);
            const complexd y = m.at(k + 1, k);
            const double den = std::hypot(std::abs(x), std::abs(y));
            double c_k;
            complexd s_k;
            if (den == 0.0) {
                c_k = 1.0;
                s_k = 0.0;
            } else {
                c_k = std::abs(x) / den;
                const complexd phase =
                    (std::abs(x) == 0.0) ? complexd(1.0, 0.0) : x / std::abs(x);
                s_k = phase * std::conj(y) / den;
            }
            cs[static_cast<std::size_t>(k)] = c_k;
            sn[static_cast<std::size_t>(k)] = s_k;
            for (int j = k; j <= hi; ++j) {
                const complexd t1 = m.at(k, j);
                const complexd t2 = m.at(k + 1, j);
                m.at(k, j) = c_k * t1 + s_k * t2;
                m.at(k + 1, j) = -std::conj(s_k) * t1 + c_k * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const double c_k = cs[static_cast<std::size_t>(k)];
            const complexd s_k = sn[static_cast<std::size_t>(k)];
            const int top = std::min(k + 2, hi);
            for (int i = lo; i <= top; ++i) {
                const complexd t1 = m.at(i, k);
                const complexd t2 = m.at(i, k + 1);
                m.at(i, k) = c_k * t1 + std::conj(s_k) * t2;
                m.at(i, k + 1) = -s_k * t1 + c_k * t2;
            }
        }
        for (int i = lo; i <= hi; ++i) m.at(i, i) += shift;
    }
    return eig;
}

template <std::size_t N>
std::array<complexd, N> small_eigenvalues(const ComplexMat<N>& in) {
    SmallMat m;
    m.n = static_cast<int>(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = in(i, j);
    for (const auto& z : m.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument("eigenvalues: non-finite entry");
    balance(m);
    hessenberg(m);
    const auto full = qr_eigenvalues(m);
    std::array<complexd, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = full[i];
    return out;
}

}  // namespace

std::array<complexd, 4> eigenvalues(const Mat4& m) { return small_eigenvalues(m); }
std::array<complexd, 3> eigenvalues(const Mat3& m) { return small_eigenvalues(m); }
std::array<complexd, 2> eigenvalues(const Mat2& m) { return small_eigenvalues(m); }

complexd determinant(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

complexd determinant(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

complexd determinant(const Mat4& m) {
    complexd det = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        Mat3 minor;
        for (std::size_t r = 1; r < 4; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < 4; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        const complexd cof = ((j % 2) == 0 ? 1.0 : -1.0) * m(0, j) * determinant(minor);
        det += cof;
    }
    return det;
}

double hermitian_min_eigenvalue(const Mat4& m) {
    const auto ev = eigenvalues(m);
    double mn = ev[0].real();
    for (const auto& z : ev) mn = std::min(mn, z.real());
    return mn;
}

}  // namespace entdyn
