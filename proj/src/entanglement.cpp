#include "entdyn/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace entdyn {

Mat4 spin_flip(const Mat4& rho) {
    static const Mat4 yy = kron(pauli(2), pauli(2));
    return yy * transpose(rho) * yy;
}

ConcurrenceResult concurrence(const Mat4& rho) {
    const Mat4 product = rho * spin_flip(rho);
    const auto mu = eigenvalues(product);

    ConcurrenceResult res;
    std::array<double, 4> lam{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double re = mu[i].real();
        const double im = mu[i].imag();
        if (re < -1e-7)
            throw UnphysicalState("concurrence: eigenvalue of rho*rho~ has real part " +
                                  std::to_string(re));
        if (std::abs(im) > 1e-7)
            throw UnphysicalState("concurrence: eigenvalue of rho*rho~ has imaginary part " +
                                  std::to_string(im));
        if (re < 0.0 || std::abs(im) > 1e-12) res.clamped = true;
        lam[i] = std::sqrt(std::max(re, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    res.lambdas = lam;

    double c = lam[0] - lam[1] - lam[2] - lam[3];
    c = std::max(c, 0.0);
    if (c > 1.0) {
        if (c > 1.0 + 1e-9)
            throw UnphysicalState("concurrence: value " + std::to_string(c) + " exceeds 1");
        c = 1.0;
        res.clamped = true;
    }
    res.value = c;
    return res;
}

double singlet_concurrence(double tau, const KossakowskiCoefficients& coeffs) {
    if (!(tau >= 0.0)) throw InvalidArgument("singlet_concurrence: tau must be >= 0");
    const double sum = coeffs.sum();
    const double tol = 1e-12 * (std::abs(coeffs.atom1) + std::abs(coeffs.atom2) + 1.0);
    if (sum < -tol)
        throw RegimeError("singlet_concurrence: negative rate sum " + std::to_string(sum) +
                          "; concurrence would exceed 1");
    return std::exp(-2.0 * tau * std::max(sum, 0.0));
}

bool is_x_state(const Mat4& rho, double tol) {
    const double scale = std::max(1.0, max_abs_entry(rho));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j || i + j == 3) continue;
            if (std::abs(rho(i, j)) > tol * scale) return false;
        }
    return true;
}

ConcurrenceResult xstate_concurrence(const Mat4& rho) {
    if (!is_x_state(rho))
        throw InvalidArgument("xstate_concurrence: state is not of X form");

    ConcurrenceResult res;
    const double d11 = rho(0, 0).real();
    const double d22 = rho(1, 1).real();
    const double d33 = rho(2, 2).real();
    const double d44 = rho(3, 3).real();
    const double off14 = std::abs(rho(0, 3));
    const double off23 = std::abs(rho(1, 2));

    double p_inner = d22 * d33;
    double p_outer = d11 * d44;
    if (p_inner < 0.0 || p_outer < 0.0) res.clamped = true;
    p_inner = std::max(p_inner, 0.0);
    p_outer = std::max(p_outer, 0.0);

    double c = 2.0 * std::max({0.0, off14 - std::sqrt(p_inner), off23 - std::sqrt(p_outer)});
    if (c > 1.0) {
        res.clamped = true;
        c = 1.0;
    }
    res.value = c;

    // The lambdas of the two 2x2 blocks, for diagnostics.
    std::array<double, 4> lam{off23 + std::sqrt(p_outer), std::abs(off23 - std::sqrt(p_outer)),
                              off14 + std::sqrt(p_inner), std::abs(off14 - std::sqrt(p_inner))};
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    res.lambdas = lam;
    return res;
}

}  // namespace entdyn
