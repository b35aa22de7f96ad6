#include "entdyn/dynamics.hpp"

#include <cmath>

namespace entdyn {

BlochState werner_state(double kappa) {
    constexpr double kTol = 1e-12;
    if (kappa < -1.0 / 3.0 - kTol || kappa > 1.0 + kTol)
        throw InvalidArgument("werner_state: kappa must lie in [-1/3, 1], got " +
                              std::to_string(kappa));
    BlochState s;
    for (std::size_t i = 1; i < 4; ++i) s.coeffs(i, i) = -kappa;
    return s;
}

BlochRates bloch_rhs(const BlochMatrix& b, const KossakowskiCoefficients& c) {
    const double a1 = c.atom1;
    const double a2 = c.atom2;
    BlochRates d{};

    for (std::size_t k = 1; k <= 2; ++k) {
        d[0][k] = -2.0 * a2 * b(0, k);
        d[k][0] = -2.0 * a1 * b(k, 0);
    }
    d[0][3] = -4.0 * a2 * (b(0, 3) + 1.0);
    d[3][0] = -4.0 * a1 * (b(3, 0) + 1.0);

    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j) d[i][j] = -2.0 * (a1 + a2) * b(i, j);

    for (std::size_t i = 1; i <= 2; ++i) {
        d[i][3] = -2.0 * (a1 + 2.0 * a2) * b(i, 3) - 4.0 * a2 * b(i, 0);
        d[3][i] = -2.0 * (2.0 * a1 + a2) * b(3, i) - 4.0 * a1 * b(0, i);
    }
    d[3][3] = -4.0 * (a1 + a2) * b(3, 3) - 4.0 * a1 * b(0, 3) - 4.0 * a2 * b(3, 0);
    return d;
}

BlochState closed_form(const BlochState& initial, const KossakowskiCoefficients& c,
                       double tau) {
    if (!(tau >= 0.0)) throw InvalidArgument("closed_form: tau must be >= 0");
    const double a1 = c.atom1;
    const double a2 = c.atom2;
    const BlochMatrix& r = initial.coeffs;

    const double decay2 = std::exp(-2.0 * a2 * tau);  // transverse, disordered cavity
    const double decay1 = std::exp(-2.0 * a1 * tau);  // transverse, empty cavity
    const double u = std::exp(-4.0 * a2 * tau);       // longitudinal, disordered cavity
    const double v = std::exp(-4.0 * a1 * tau);       // longitudinal, empty cavity
    const double w = std::exp(-2.0 * (a1 + a2) * tau);
    const double e1 = std::exp(-2.0 * (a1 + 2.0 * a2) * tau);
    const double f1 = std::exp(-2.0 * (2.0 * a1 + a2) * tau);

    BlochState out;
    out.tau = initial.tau + tau;
    BlochMatrix& o = out.coeffs;

    for (std::size_t k = 1; k <= 2; ++k) {
        o(0, k) = r(0, k) * decay2;
        o(k, 0) = r(k, 0) * decay1;
    }
    o(0, 3) = -1.0 + (r(0, 3) + 1.0) * u;
    o(3, 0) = -1.0 + (r(3, 0) + 1.0) * v;

    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j) o(i, j) = r(i, j) * w;

    // [r_i3 + r_i0 (1 - e^{4 A2 tau})] e^{-2 tau (A1 + 2 A2)} written without
    // the growing exponential: e^{4 A2 tau} e1 = exp(-2 A1 tau) = decay1.
    for (std::size_t i = 1; i <= 2; ++i) {
        o(i, 3) = r(i, 3) * e1 + r(i, 0) * (e1 - decay1);
        o(3, i) = r(3, i) * f1 + r(0, i) * (f1 - decay2);
    }

    // Four-exponential solution for r_33; the constant in front of u*v is
    // formed from the initial data once so the kappa = 1 cancellation is exact.
    const double uv_coeff = 1.0 + r(0, 3) + r(3, 0) + r(3, 3);
    o(3, 3) = 1.0 - (r(0, 3) + 1.0) * u - (r(3, 0) + 1.0) * v + uv_coeff * (u * v);
    return out;
}

namespace {

const std::array<Mat4, 3>& atom1_paulis() {
    static const std::array<Mat4, 3> s = {kron(pauli(1), pauli(0)), kron(pauli(2), pauli(0)),
                                          kron(pauli(3), pauli(0))};
    return s;
}
const std::array<Mat4, 3>& atom2_paulis() {
    static const std::array<Mat4, 3> s = {kron(pauli(0), pauli(1)), kron(pauli(0), pauli(2)),
                                          kron(pauli(0), pauli(3))};
    return s;
}

void accumulate_dissipator(Mat4& acc, const Mat4& rho, const Mat3& k,
                           const std::array<Mat4, 3>& sig) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const complexd kij = k(i, j);
            if (kij == complexd(0.0, 0.0)) continue;
            const Mat4 sandwich = sig[j] * rho * sig[i];
            const Mat4 sij = sig[i] * sig[j];
            const Mat4 anti = sij * rho + rho * sij;
            acc = acc + (0.5 * kij) * (2.0 * sandwich - anti);
        }
}

}  // namespace

Mat4 lindblad_dissipator(const Mat4& rho, const Mat3& k1, const Mat3& k2) {
    if (hermiticity_defect(rho) > 1e-9)
        throw InvalidArgument("lindblad_dissipator: rho is not Hermitian");
    if (std::abs(trace(rho) - complexd(1.0, 0.0)) > 1e-9)
        throw InvalidArgument("lindblad_dissipator: rho does not have unit trace");
    Mat4 acc;
    accumulate_dissipator(acc, rho, k1, atom1_paulis());
    accumulate_dissipator(acc, rho, k2, atom2_paulis());
    return acc;
}

namespace {

TrajectorySample make_sample(double tau, const BlochMatrix& state,
                             const KossakowskiCoefficients& c, ConcurrenceColumn column,
                             Trajectory& traj, bool& fallback_reported) {
    TrajectorySample s;
    s.tau = tau;
    s.state = state;

    const Mat4 rho = bloch_to_density(state);
    s.trace_err = std::abs(trace(rho) - complexd(1.0, 0.0));
    s.herm_err = hermiticity_defect(rho);
    s.min_eig = hermitian_min_eigenvalue(rho);

    switch (column) {
        case ConcurrenceColumn::SingletClosedForm: {
            s.concurrence = singlet_concurrence(tau, c);
            break;
        }
        case ConcurrenceColumn::Wootters: {
            const auto res = concurrence(rho);
            s.concurrence = res.value;
            s.concurrence_clamped = res.clamped;
            break;
        }
        case ConcurrenceColumn::WoottersClamped: {
            try {
                const auto res = concurrence(rho);
                s.concurrence = res.value;
                s.concurrence_clamped = res.clamped;
            } catch (const UnphysicalState&) {
                if (!is_x_state(rho)) throw;
                const auto res = xstate_concurrence(rho);
                s.concurrence = res.value;
                s.concurrence_clamped = true;
                if (!fallback_reported) {
                    traj.warnings.push_back(
                        "concurrence left the Wootters validity window at tau = " +
                        std::to_string(tau) + "; clamped X-state values reported");
                    fallback_reported = true;
                }
            }
            break;
        }
    }
    return s;
}

long step_count(double tau_max, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("trajectory: dt must be > 0");
    if (!(tau_max >= dt)) throw InvalidArgument("trajectory: tau_max must be >= dt");
    return std::llround(tau_max / dt);
}

}  // namespace

Trajectory integrate_rk4(const BlochState& initial, const KossakowskiCoefficients& c,
                         double tau_max, double dt, long stride, ConcurrenceColumn column) {
    if (stride < 1) throw InvalidArgument("integrate_rk4: stride must be >= 1");
    const long steps = step_count(tau_max, dt);

    Trajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(steps / stride + 2));
    bool fallback_reported = false;

    BlochMatrix y = initial.coeffs;
    for (long k = 0;; ++k) {
        const double tau = static_cast<double>(k) * dt;
        if (k % stride == 0 || k == steps)
            traj.samples.push_back(make_sample(tau, y, c, column, traj, fallback_reported));
        if (k == steps) break;

        const BlochRates k1 = bloch_rhs(y, c);
        BlochMatrix y2 = y;
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < 4; ++n) y2.e[m][n] = y.e[m][n] + 0.5 * dt * k1[m][n];
        const BlochRates k2 = bloch_rhs(y2, c);
        BlochMatrix y3 = y;
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < 4; ++n) y3.e[m][n] = y.e[m][n] + 0.5 * dt * k2[m][n];
        const BlochRates k3 = bloch_rhs(y3, c);
        BlochMatrix y4 = y;
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < 4; ++n) y4.e[m][n] = y.e[m][n] + dt * k3[m][n];
        const BlochRates k4 = bloch_rhs(y4, c);

        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < 4; ++n) {
                y.e[m][n] += dt / 6.0 * (k1[m][n] + 2.0 * k2[m][n] + 2.0 * k3[m][n] + k4[m][n]);
                if (!std::isfinite(y.e[m][n]))
                    throw NumericError("integrate_rk4: non-finite state at tau = " +
                                       std::to_string(tau));
            }
    }
    return traj;
}

Trajectory sample_closed_form(const BlochState& initial, const KossakowskiCoefficients& c,
                              double tau_max, double dt, long stride,
                              ConcurrenceColumn column) {
    if (stride < 1) throw InvalidArgument("sample_closed_form: stride must be >= 1");
    const long steps = step_count(tau_max, dt);

    Trajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(steps / stride + 2));
    bool fallback_reported = false;

    for (long k = 0;; ++k) {
        const double tau = static_cast<double>(k) * dt;
        if (k % stride == 0 || k == steps) {
            const BlochState s = closed_form(initial, c, tau);
            traj.samples.push_back(
                make_sample(tau, s.coeffs, c, column, traj, fallback_reported));
        }
        if (k == steps) break;
    }
    return traj;
}

}  // namespace entdyn
