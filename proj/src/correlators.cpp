#include "entdyn/correlators.hpp"

#include <cmath>
#include <numbers>

namespace entdyn {

namespace {

constexpr double kPi = std::numbers::pi;

complexd pow_int(complexd z, int k) {
    complexd r = 1.0;
    complexd base = z;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

}  // namespace

complexd wightman_free_static(double dtau, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("wightman_free_static: eps must be > 0");
    const complexd z(dtau, -eps);
    return 1.0 / (kPi * kPi * pow_int(z, 4));
}

complexd wightman_disorder_static(double dtau, double eps, double sigma2) {
    if (!(eps > 0.0)) throw InvalidArgument("wightman_disorder_static: eps must be > 0");
    if (sigma2 < 0.0) throw InvalidArgument("wightman_disorder_static: sigma2 must be >= 0");
    const complexd z(dtau, -eps);
    return complexd(0.0, -20.0 * sigma2) / (kPi * kPi * kPi * pow_int(z, 7));
}

complexd wightman_disorder_full(double dt, const std::array<double, 3>& dx, double eps,
                                double sigma2, int a, int b) {
    if (!(eps > 0.0)) throw InvalidArgument("wightman_disorder_full: eps must be > 0");
    if (sigma2 < 0.0) throw InvalidArgument("wightman_disorder_full: sigma2 must be >= 0");
    if (a < 1 || a > 3 || b < 1 || b > 3)
        throw InvalidArgument("wightman_disorder_full: spatial indices must be in 1..3");

    const complexd t(dt, -eps);  // regulated time separation, used uniformly
    const complexd t2 = t * t;
    const complexd t4 = t2 * t2;
    const complexd t6 = t4 * t2;
    const double x2 = dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2];
    const double x4 = x2 * x2;
    const double x6 = x4 * x2;

    const complexd interval = t2 - x2;
    const complexd prefactor =
        complexd(0.0, 4.0 * sigma2) / (kPi * kPi * kPi * pow_int(interval, 7));

    const double xa = dx[static_cast<std::size_t>(a - 1)];
    const double xb = dx[static_cast<std::size_t>(b - 1)];

    const complexd aniso =
        12.0 * xa * xb *
        (2.0 * t * (3.0 * x4 + 4.0 * x2 * t2 - 7.0 * t4) +
         t * (x4 + 18.0 * x2 * t2 + 21.0 * t4));

    const double delta_ab = (a == b) ? 1.0 : 0.0;
    const complexd iso =
        delta_ab *
        (6.0 * t * (9.0 * x6 + 17.0 * x4 * t2 - 21.0 * x2 * t4 - 5.0 * t6) +
         t * (9.0 * x6 + 177.0 * x4 * t2 + 259.0 * x2 * t4 + 35.0 * t6));

    return prefactor * (aniso - iso);
}

double spectral_free(int eta, double omega0) {
    if (eta != 1 && eta != -1) throw InvalidArgument("spectral_free: eta must be +-1");
    if (!(omega0 > 0.0)) throw InvalidArgument("spectral_free: omega0 must be > 0");
    if (eta < 0) return 0.0;
    return omega0 * omega0 * omega0 / (3.0 * kPi);
}

double spectral_disorder_correction(int eta, double omega0, double sigma2) {
    if (eta != 1 && eta != -1)
        throw InvalidArgument("spectral_disorder_correction: eta must be +-1");
    if (!(omega0 > 0.0))
        throw InvalidArgument("spectral_disorder_correction: omega0 must be > 0");
    if (sigma2 < 0.0)
        throw InvalidArgument("spectral_disorder_correction: sigma2 must be >= 0");
    if (eta < 0) return 0.0;
    const double w3 = omega0 * omega0 * omega0;
    return -sigma2 * w3 * w3 / (18.0 * kPi * kPi);
}

double self_energy(double k0, double sigma2) {
    return sigma2 * k0 * k0 * k0 / (3.0 * kPi);
}

namespace {

complexd trapezoid(const std::function<complexd(double, double)>& f, double omega,
                   double eps, double T, long n) {
    // Compensated sums keep the result independent of accumulation noise; the
    // integrand is strongly peaked at u = 0 and cancels by many orders.
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    const double du = 2.0 * T / static_cast<double>(n);
    for (long j = 0; j <= n; ++j) {
        const double u = -T + du * static_cast<double>(j);
        const complexd fv = f(u, eps);
        if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag()))
            throw NumericError("fourier_quadrature: non-finite integrand sample");
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        const complexd term = w * std::polar(1.0, omega * u) * fv;

        double t = sr + term.real();
        cr += (std::abs(sr) >= std::abs(term.real())) ? (sr - t) + term.real()
                                                      : (term.real() - t) + sr;
        sr = t;
        t = si + term.imag();
        ci += (std::abs(si) >= std::abs(term.imag())) ? (si - t) + term.imag()
                                                      : (term.imag() - t) + si;
        si = t;
    }
    return du * complexd(sr + cr, si + ci);
}

}  // namespace

complexd fourier_quadrature(const std::function<complexd(double, double)>& correlator,
                            double omega, double eps, double T, long n) {
    if (!(eps > 0.0)) throw InvalidArgument("fourier_quadrature: eps must be > 0");
    if (!(T > 0.0)) throw InvalidArgument("fourier_quadrature: T must be > 0");
    if (n < 2 || (n % 2) != 0) throw InvalidArgument("fourier_quadrature: n must be even");

    constexpr long kMaxSamples = 1L << 27;
    constexpr int kMaxRefinements = 12;
    constexpr double kRelTol = 1e-4;

    complexd prev = trapezoid(correlator, omega, eps, T, n);
    for (int k = 0; k < kMaxRefinements; ++k) {
        n *= 4;
        T *= 2.0;
        if (n > kMaxSamples)
            throw NumericError("fourier_quadrature: refinement cap reached without convergence");
        const complexd cur = trapezoid(correlator, omega, eps, T, n);
        if (std::abs(cur - prev) <= kRelTol * std::max(std::abs(cur), 1e-3)) return cur;
        prev = cur;
    }
    throw NumericError("fourier_quadrature: no convergence");
}

}  // namespace entdyn
