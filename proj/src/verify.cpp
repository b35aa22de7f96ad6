#include "entdyn/verify.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "entdyn/correlators.hpp"
#include "entdyn/dynamics.hpp"
#include "entdyn/entanglement.hpp"
#include "entdyn/kossakowski.hpp"
#include "entdyn/pauli_algebra.hpp"

namespace entdyn {

namespace {

// Deterministic generator for the random-state checks (identical sequences on
// every platform, unlike the standard-library distributions).
struct SplitRng {
    std::uint64_t state;

    explicit SplitRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_bits() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545F4914F6CDD1DULL;
    }
    // uniform in [-1, 1)
    double next() {
        return 2.0 * (static_cast<double>(next_bits() >> 11) * 0x1.0p-53) - 1.0;
    }
};

Mat4 random_hermitian_unit_trace(SplitRng& rng) {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i) {
        m(i, i) = rng.next();
        for (std::size_t j = i + 1; j < 4; ++j) {
            const complexd z(rng.next(), rng.next());
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    const double tr = trace(m).real();
    for (std::size_t i = 0; i < 4; ++i) m(i, i) += (1.0 - tr) / 4.0;
    return m;
}

std::string format_omega(double omega) {
    std::ostringstream out;
    out << omega;
    return out.str();
}

void spectral_checks(std::vector<CheckResult>& results, const SpectralRoutines& routines) {
    // Free-field quadrature: regulator 1e-3 needs a fine grid; the refinement
    // loop starts from a grid that already resolves the peak.
    for (double omega : {0.5, 1.0, 2.0}) {
        const double eps = 1e-3;
        const complexd numeric = fourier_quadrature(
            [](double u, double e) { return wightman_free_static(u, e); }, omega, eps, 200.0,
            1L << 22);
        const double analytic = routines.free(1, omega) * std::exp(-eps * omega);
        const double rel = std::abs(numeric - analytic) / std::abs(analytic);
        results.push_back({"spectral_free_quadrature_omega_" + format_omega(omega), rel,
                           1e-3, rel <= 1e-3});
    }

    // Disorder quadrature: the integrand cancels by ~sigma2/eps^6 orders, so a
    // larger regulator keeps the trapezoid sum inside double precision.
    for (double omega : {0.5, 1.0, 2.0}) {
        const double eps = 0.05;
        const double sigma2 = 1.0;
        const complexd numeric = fourier_quadrature(
            [sigma2](double u, double e) { return wightman_disorder_static(u, e, sigma2); },
            omega, eps, 50.0, 1L << 16);
        const double analytic =
            routines.disorder_correction(1, omega, sigma2) * std::exp(-eps * omega);
        const double rel = std::abs(numeric - analytic) / std::abs(analytic);
        results.push_back({"spectral_disorder_quadrature_omega_" + format_omega(omega), rel,
                           1e-3, rel <= 1e-3});
    }

    // Negative frequencies carry no vacuum excitations: both transforms vanish.
    {
        const complexd neg_free = fourier_quadrature(
            [](double u, double e) { return wightman_free_static(u, e); }, -1.0, 1e-3, 200.0,
            1L << 22);
        results.push_back({"spectral_negative_frequency_free", std::abs(neg_free), 1e-4,
                           std::abs(neg_free) <= 1e-4});
        const complexd neg_dis = fourier_quadrature(
            [](double u, double e) { return wightman_disorder_static(u, e, 1.0); }, -1.0,
            0.05, 50.0, 1L << 16);
        results.push_back({"spectral_negative_frequency_disorder", std::abs(neg_dis), 1e-4,
                           std::abs(neg_dis) <= 1e-4});
    }
}

void coincidence_check(std::vector<CheckResult>& results) {
    double worst = 0.0;
    const double sigma2 = 1.0;
    for (double dt : {0.5, 1.0, 2.0, 5.0})
        for (double eps : {1e-3, 1e-4})
            for (int a = 1; a <= 3; ++a) {
                const complexd full =
                    wightman_disorder_full(dt, {0.0, 0.0, 0.0}, eps, sigma2, a, a);
                const complexd coincident = wightman_disorder_static(dt, eps, sigma2);
                worst = std::max(worst, std::abs(full - coincident) / std::abs(coincident));
            }
    results.push_back({"coincidence_limit", worst, 1e-9, worst <= 1e-9});
}

void generator_equivalence_check(std::vector<CheckResult>& results) {
    const std::array<double, 3> z_axis = {0.0, 0.0, 1.0};
    for (double sigma2 : {0.0, 0.15}) {
        const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, sigma2);
        const Mat3 k1 = kossakowski_matrix(coeffs.atom1, z_axis);
        const Mat3 k2 = kossakowski_matrix(coeffs.atom2, z_axis);

        SplitRng rng(0x9E3779B97F4A7C15ULL);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Mat4 rho = random_hermitian_unit_trace(rng);
            const auto image = bloch_coefficients(lindblad_dissipator(rho, k1, k2), 1e-8);
            const auto rhs = bloch_rhs(density_to_bloch(rho, 1e-8), coeffs);
            for (std::size_t mu = 0; mu < 4; ++mu)
                for (std::size_t nu = 0; nu < 4; ++nu)
                    worst = std::max(worst, std::abs(image[mu][nu] - rhs[mu][nu]));
        }
        results.push_back({"generator_equivalence_sigma2_" + format_omega(sigma2), worst,
                           1e-10, worst <= 1e-10});
    }
}

double rk4_final_error(const KossakowskiCoefficients& coeffs, double dt) {
    const BlochState initial = werner_state(0.8);
    const double tau_max = 1.0;
    const long steps = std::llround(tau_max / dt);
    const auto traj =
        integrate_rk4(initial, coeffs, tau_max, dt, steps, ConcurrenceColumn::Wootters);
    const BlochState exact = closed_form(initial, coeffs, tau_max);
    const BlochMatrix& numeric = traj.samples.back().state;
    double err = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu)
            err = std::max(err, std::abs(numeric.e[mu][nu] - exact.coeffs.e[mu][nu]));
    return err;
}

void closed_form_vs_rk4_check(std::vector<CheckResult>& results) {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.15);
    const double err_coarse = rk4_final_error(coeffs, 1e-3);
    results.push_back({"closed_form_vs_rk4", err_coarse, 1e-8, err_coarse <= 1e-8});

    const double err_fine = rk4_final_error(coeffs, 5e-4);
    const double ratio = err_coarse / err_fine;
    const double deviation = std::abs(ratio - 16.0);
    results.push_back({"rk4_convergence_ratio", deviation, 3.2, deviation <= 3.2});
}

void wootters_vs_xstate_check(std::vector<CheckResult>& results) {
    double worst = 0.0;
    for (double kappa : {0.8, 1.0})
        for (double sigma2 : {0.0, 0.15}) {
            const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, sigma2);
            const BlochState initial = werner_state(kappa);
            for (int k = 0; k <= 100; ++k) {
                const double tau = 0.02 * static_cast<double>(k);
                const Mat4 rho = bloch_to_density(closed_form(initial, coeffs, tau).coeffs);
                const double wootters = concurrence(rho).value;
                const double xform = xstate_concurrence(rho).value;
                worst = std::max(worst, std::abs(wootters - xform));
            }
        }
    results.push_back({"wootters_vs_xstate", worst, 1e-8, worst <= 1e-8});
}

}  // namespace

SpectralRoutines default_spectral_routines() {
    return {[](int eta, double omega0) { return spectral_free(eta, omega0); },
            [](int eta, double omega0, double sigma2) {
                return spectral_disorder_correction(eta, omega0, sigma2);
            }};
}

std::vector<CheckResult> run_verification(const SpectralRoutines& routines) {
    std::vector<CheckResult> results;
    spectral_checks(results, routines);
    coincidence_check(results);
    generator_equivalence_check(results);
    closed_form_vs_rk4_check(results);
    wootters_vs_xstate_check(results);
    return results;
}

std::vector<CheckResult> run_verification() {
    return run_verification(default_spectral_routines());
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace entdyn
