#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "entdyn/dynamics.hpp"

using namespace entdyn;

namespace {

struct TestRng {
    std::uint64_t state = 0xDA3E39CB94B95BDBULL;
    double next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return 2.0 * (static_cast<double>((state * 0x2545F4914F6CDD1DULL) >> 11) * 0x1.0p-53) -
               1.0;
    }
};

BlochMatrix random_bloch(TestRng& rng) {
    std::array<std::array<double, 4>, 4> c{};
    c[0][0] = 1.0;
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu)
            if (mu != 0 || nu != 0) c[mu][nu] = rng.next();
    return BlochMatrix::from_coefficients(c);
}

Mat4 random_hermitian_unit_trace(TestRng& rng) {
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

double max_norm_diff(const BlochMatrix& a, const BlochMatrix& b) {
    double d = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu)
            d = std::max(d, std::abs(a.e[mu][nu] - b.e[mu][nu]));
    return d;
}

const std::array<double, 3> kZAxis = {0.0, 0.0, 1.0};

}  // namespace

TEST_CASE("werner states") {
    const BlochState singlet = werner_state(1.0);
    for (std::size_t i = 1; i < 4; ++i)
        for (std::size_t j = 1; j < 4; ++j)
            CHECK(singlet.coeffs(i, j) == (i == j ? -1.0 : 0.0));

    // kappa = 0 is the maximally mixed state.
    const Mat4 mixed = bloch_to_density(werner_state(0.0).coeffs);
    CHECK(max_abs_entry(mixed - 0.25 * Mat4::identity()) <= 1e-16);

    // kappa = 0.8 spectrum {0.05, 0.05, 0.05, 0.85}.
    const Mat4 rho = bloch_to_density(werner_state(0.8).coeffs);
    auto ev = eigenvalues(rho);
    std::array<double, 4> re{};
    for (std::size_t i = 0; i < 4; ++i) re[i] = ev[i].real();
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(re[1] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(re[2] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(re[3] == doctest::Approx(0.85).epsilon(1e-12));

    CHECK_THROWS_AS(werner_state(1.01), InvalidArgument);
    CHECK_THROWS_AS(werner_state(-0.34), InvalidArgument);
}

TEST_CASE("bloch_rhs fixed point and werner derivatives") {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.1);

    // Both atoms in the ground state: stationary.
    std::array<std::array<double, 4>, 4> c{};
    c[0][0] = 1.0;
    c[0][3] = -1.0;
    c[3][0] = -1.0;
    c[3][3] = 1.0;
    const auto ground = BlochMatrix::from_coefficients(c);
    const auto d = bloch_rhs(ground, coeffs);
    for (const auto& row : d)
        for (double v : row) CHECK(std::abs(v) <= 1e-15);

    // Werner input: only the longitudinal components move at tau = 0.
    const auto w = bloch_rhs(werner_state(0.8).coeffs, coeffs);
    CHECK(w[0][1] == 0.0);
    CHECK(w[0][2] == 0.0);
    CHECK(w[1][0] == 0.0);
    CHECK(w[2][0] == 0.0);
    CHECK(w[0][3] == doctest::Approx(-4.0 * coeffs.atom2).epsilon(1e-15));
    CHECK(w[3][0] == doctest::Approx(-4.0 * coeffs.atom1).epsilon(1e-15));
    for (std::size_t i = 1; i <= 2; ++i)
        CHECK(w[i][i] == doctest::Approx(2.0 * coeffs.sum() * 0.8).epsilon(1e-15));

    // No dissipation, no motion.
    const auto frozen = bloch_rhs(werner_state(0.8).coeffs, KossakowskiCoefficients{});
    for (const auto& row : frozen)
        for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("closed form solves the initial-value problem") {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.0);
    TestRng rng;
    const BlochState s0{random_bloch(rng), 0.0};

    // tau = 0 returns the initial state exactly.
    const BlochState at0 = closed_form(s0, coeffs, 0.0);
    CHECK(max_norm_diff(at0.coeffs, s0.coeffs) == 0.0);

    // Longitudinal component of the evolved Werner state.
    const BlochState singlet08 = werner_state(0.8);
    const BlochState evolved = closed_form(singlet08, coeffs, 0.1);
    const double a11 = coeffs.atom1;
    CHECK(evolved.coeffs(0, 3) ==
          doctest::Approx(-1.0 + std::exp(-4.0 * a11 * 0.1)).epsilon(1e-15));

    // Zero rates freeze every component.
    const BlochState frozen = closed_form(s0, KossakowskiCoefficients{}, 3.7);
    CHECK(max_norm_diff(frozen.coeffs, s0.coeffs) == 0.0);

    CHECK_THROWS_AS(closed_form(s0, coeffs, -0.1), InvalidArgument);
}

TEST_CASE("closed form satisfies the evolution equations (finite differences)") {
    TestRng rng;
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.15);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const BlochState s0{random_bloch(rng), 0.0};
        const double tau = 0.05 + 0.4 * std::abs(rng.next());

        const BlochState fwd = closed_form(s0, coeffs, tau + h);
        const BlochState bwd = closed_form(s0, coeffs, tau - h);
        const BlochState mid = closed_form(s0, coeffs, tau);
        const auto rhs = bloch_rhs(mid.coeffs, coeffs);

        for (std::size_t mu = 0; mu < 4; ++mu)
            for (std::size_t nu = 0; nu < 4; ++nu) {
                const double fd = (fwd.coeffs.e[mu][nu] - bwd.coeffs.e[mu][nu]) / (2.0 * h);
                CHECK(std::abs(fd - rhs[mu][nu]) <= 1e-6);
            }
    }
}

TEST_CASE("closed form decays to the ground product state") {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.1);
    const BlochState late = closed_form(werner_state(0.8), coeffs, 8.0);
    CHECK(std::abs(late.coeffs(0, 3) + 1.0) <= 1e-12);
    CHECK(std::abs(late.coeffs(3, 0) + 1.0) <= 1e-12);
    CHECK(std::abs(late.coeffs(3, 3) - 1.0) <= 1e-12);
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j) CHECK(std::abs(late.coeffs(i, j)) <= 1e-12);
}

TEST_CASE("rk4 matches the closed form at fourth order") {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.15);
    const BlochState initial = werner_state(0.8);

    const auto traj = integrate_rk4(initial, coeffs, 1.0, 1e-3, 1000);
    const BlochState exact = closed_form(initial, coeffs, 1.0);
    const double err_coarse = max_norm_diff(traj.samples.back().state, exact.coeffs);
    CHECK(err_coarse <= 1e-8);

    const auto fine = integrate_rk4(initial, coeffs, 1.0, 5e-4, 2000);
    const double err_fine = max_norm_diff(fine.samples.back().state, exact.coeffs);
    const double ratio = err_coarse / err_fine;
    CHECK(ratio > 12.8);
    CHECK(ratio < 19.2);
}

TEST_CASE("rk4 with zero rates is constant and sampling is strided") {
    // Product state with generic single-qubit Bloch vectors (physical, so the
    // per-sample Wootters diagnostics are well defined).
    const std::array<double, 3> r1 = {0.2, 0.3, -0.4};
    const std::array<double, 3> r2 = {-0.1, 0.5, 0.2};
    std::array<std::array<double, 4>, 4> c{};
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < 4; ++i) {
        c[i][0] = r1[i - 1];
        c[0][i] = r2[i - 1];
        for (std::size_t j = 1; j < 4; ++j) c[i][j] = r1[i - 1] * r2[j - 1];
    }
    const BlochState s0{BlochMatrix::from_coefficients(c), 0.0};
    const auto traj = integrate_rk4(s0, KossakowskiCoefficients{}, 0.1, 1e-3, 7);

    CHECK(traj.samples.front().tau == 0.0);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].tau > traj.samples[i - 1].tau);
    CHECK(traj.samples.back().tau == doctest::Approx(0.1).epsilon(1e-12));
    // 100 steps, stride 7: samples at 0, 7, ..., 98, plus the final step.
    CHECK(traj.samples.size() == 16);
    for (const auto& s : traj.samples) CHECK(max_norm_diff(s.state, s0.coeffs) == 0.0);

    CHECK_THROWS_AS(integrate_rk4(s0, KossakowskiCoefficients{}, 0.1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(integrate_rk4(s0, KossakowskiCoefficients{}, 0.05, 0.1), InvalidArgument);
    CHECK_THROWS_AS(integrate_rk4(s0, KossakowskiCoefficients{}, 0.1, 1e-3, 0),
                    InvalidArgument);
}

TEST_CASE("physicality diagnostics along a completely positive trajectory") {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.1);
    const auto traj = integrate_rk4(werner_state(0.8), coeffs, 1.0, 1e-3, 10);
    for (const auto& s : traj.samples) {
        CHECK(s.trace_err <= 1e-9);
        CHECK(s.herm_err <= 1e-9);
        CHECK(s.min_eig >= -1e-8);
        for (const auto& row : s.state.e)
            for (double v : row) CHECK(std::abs(v) <= 1.0 + 1e-9);
    }
    CHECK(traj.warnings.empty());
}

TEST_CASE("lindblad dissipator: stationarity, trace, hermiticity") {
    const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, 0.15);
    const Mat3 k1 = kossakowski_matrix(coeffs.atom1, kZAxis);
    const Mat3 k2 = kossakowski_matrix(coeffs.atom2, kZAxis);

    // Ground-state projector is stationary.
    std::array<std::array<double, 4>, 4> c{};
    c[0][0] = 1.0;
    c[0][3] = -1.0;
    c[3][0] = -1.0;
    c[3][3] = 1.0;
    const Mat4 ground = bloch_to_density(BlochMatrix::from_coefficients(c));
    CHECK(max_abs_entry(lindblad_dissipator(ground, k1, k2)) <= 1e-14);

    TestRng rng;
    for (int trial = 0; trial < 10; ++trial) {
        const Mat4 rho = random_hermitian_unit_trace(rng);
        const Mat4 image = lindblad_dissipator(rho, k1, k2);
        CHECK(std::abs(trace(image)) <= 1e-13);
        CHECK(hermiticity_defect(image) <= 1e-13);
    }

    Mat4 not_a_state;
    not_a_state(0, 1) = 1.0;
    CHECK_THROWS_AS(lindblad_dissipator(not_a_state, k1, k2), InvalidArgument);
}

TEST_CASE("dissipator in density form equals the component evolution equations") {
    TestRng rng;
    for (double sigma2 : {0.0, 0.15}) {
        const auto coeffs = make_coefficients({5.0, 1.0}, {5.0, 1.0}, sigma2);
        const Mat3 k1 = kossakowski_matrix(coeffs.atom1, kZAxis);
        const Mat3 k2 = kossakowski_matrix(coeffs.atom2, kZAxis);

        for (int trial = 0; trial < 30; ++trial) {
            const Mat4 rho = random_hermitian_unit_trace(rng);
            const auto image = bloch_coefficients(lindblad_dissipator(rho, k1, k2), 1e-8);
            const auto rhs = bloch_rhs(density_to_bloch(rho, 1e-8), coeffs);
            for (std::size_t mu = 0; mu < 4; ++mu)
                for (std::size_t nu = 0; nu < 4; ++nu)
                    CHECK(std::abs(image[mu][nu] - rhs[mu][nu]) <= 1e-10);
        }
    }
}
