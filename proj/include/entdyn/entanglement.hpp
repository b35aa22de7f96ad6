// entanglement.hpp — Wootters concurrence of two-qubit states, the singlet
// closed form, and the X-state algebraic route used for cross-checks and as
// a clamped fallback outside the completely positive regime.
#pragma once

#include <array>

#include "entdyn/kossakowski.hpp"
#include "entdyn/pauli_algebra.hpp"

namespace entdyn {

struct ConcurrenceResult {
    double value = 0.0;                    // in [0, 1]
    std::array<double, 4> lambdas{};       // sorted descending, nonnegative
    bool clamped = false;                  // some numerical clipping occurred
};

// (sigma^2 (x) sigma^2) rho^T (sigma^2 (x) sigma^2). For Hermitian rho this
// is the standard spin-flipped state rho~.
Mat4 spin_flip(const Mat4& rho);

// Wootters concurrence: lambdas are the square roots of the eigenvalues of
// rho * spin_flip(rho), sorted descending; value = max(l1-l2-l3-l4, 0).
// Eigenvalues with real part in [-1e-7, 0) or imaginary part up to 1e-7 are
// clipped to real nonnegative (flagging `clamped`); anything worse throws
// UnphysicalState. Values in (1, 1+1e-9] clamp to 1; larger overshoots throw.
ConcurrenceResult concurrence(const Mat4& rho);

// Concurrence of the evolved singlet: exp(-2 tau (A1 + A2)). Throws
// RegimeError when the rate sum is negative (concurrence would exceed one).
double singlet_concurrence(double tau, const KossakowskiCoefficients& coeffs);

// True when only the diagonal and anti-diagonal are populated (within tol,
// relative to the largest entry).
bool is_x_state(const Mat4& rho, double tol = 1e-9);

// Closed-form concurrence of an X state,
//   2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)).
// Negative diagonal products are clipped to zero and the result is clamped
// into [0, 1], flagging `clamped`; this extends the formula continuously to
// the unphysical states produced by the non-CP regime. Throws
// InvalidArgument when rho is not of X form.
ConcurrenceResult xstate_concurrence(const Mat4& rho);

}  // namespace entdyn
