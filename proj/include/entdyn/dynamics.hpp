// dynamics.hpp — time evolution of the two-qubit Bloch matrix: the explicit
// ODE system, its closed-form solutions, a fixed-step RK4 integrator, and the
// Kossakowski-Lindblad dissipator in density-matrix form for cross-checks.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "entdyn/entanglement.hpp"
#include "entdyn/kossakowski.hpp"
#include "entdyn/pauli_algebra.hpp"

namespace entdyn {

struct BlochState {
    BlochMatrix coeffs;
    double tau = 0.0;
};

using BlochRates = std::array<std::array<double, 4>, 4>;

// How the concurrence column of a trajectory is evaluated.
enum class ConcurrenceColumn {
    Wootters,           // strict Wootters; unphysical states throw
    WoottersClamped,    // fall back to the clamped X-state form outside the
                        // Wootters validity window (non-CP regime), with a warning
    SingletClosedForm,  // exp(-2 tau (A1 + A2)); exact for kappa = 1 runs
};

struct TrajectorySample {
    double tau = 0.0;
    BlochMatrix state;
    double concurrence = 0.0;
    bool concurrence_clamped = false;
    double trace_err = 0.0;  // |Tr rho - 1|
    double herm_err = 0.0;   // max |rho - rho^dagger|
    double min_eig = 0.0;    // smallest eigenvalue of rho
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<std::string> warnings;
};

// Werner state kappa * rho_singlet + (1-kappa)/4 * identity at tau = 0.
// Valid density matrix for -1/3 <= kappa <= 1.
BlochState werner_state(double kappa);

// Right-hand side of the Bloch evolution equations. Entry (0,0) is zero.
BlochRates bloch_rhs(const BlochMatrix& b, const KossakowskiCoefficients& c);

// Exact solution of the Bloch ODE system at proper time tau >= 0.
BlochState closed_form(const BlochState& initial, const KossakowskiCoefficients& c, double tau);

// Dissipative part of the master equation,
//   L[rho] = (1/2) sum_a K^(a)_ij (2 s^j_a rho s^i_a - {s^i_a s^j_a, rho}),
// with s^i_1 = sigma^i (x) 1 and s^i_2 = 1 (x) sigma^i. Traceless, Hermitian.
Mat4 lindblad_dissipator(const Mat4& rho, const Mat3& k1, const Mat3& k2);

// Classical fixed-step fourth-order integration of bloch_rhs. Samples every
// `stride` steps (tau = 0 and the final step always included) and fills the
// per-sample diagnostics.
Trajectory integrate_rk4(const BlochState& initial, const KossakowskiCoefficients& c,
                         double tau_max, double dt, long stride = 1,
                         ConcurrenceColumn column = ConcurrenceColumn::Wootters);

// Same sampling grid and diagnostics, but states come from the closed-form
// solution instead of numerical integration.
Trajectory sample_closed_form(const BlochState& initial, const KossakowskiCoefficients& c,
                              double tau_max, double dt, long stride = 1,
                              ConcurrenceColumn column = ConcurrenceColumn::Wootters);

}  // namespace entdyn
