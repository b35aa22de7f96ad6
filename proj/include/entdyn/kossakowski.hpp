// kossakowski.hpp — dissipative coefficients of the two-cavity model, the
// Kossakowski matrix, and validity diagnostics for the disorder strength.
#pragma once

#include <array>

#include "entdyn/pauli_algebra.hpp"

namespace entdyn {

// Transition frequency and squared dipole-polarization norm of one atom.
struct AtomParams {
    double omega0 = 1.0;
    double p_sq = 1.0;
};

// Scalar decay rates of the two dissipation channels. atom1 couples to the
// empty cavity, atom2 to the disordered one; atom2's rate goes negative for
// sigma2 above 6 pi / omega0^3 (flagged, never silent).
struct KossakowskiCoefficients {
    double atom1 = 0.0;
    double atom2 = 0.0;
    bool cp_violation = false;

    double sum() const { return atom1 + atom2; }
};

enum class DisorderRegime {
    CpValid,    // sigma2 <= 6 pi / omega0^3: completely positive generator
    Extended,   // up to 12 pi / omega0^3: atom2 rate negative, non-CP generator
    OutOfModel  // beyond the critical strength: singlet concurrence would exceed 1
};

struct RegimeReport {
    DisorderRegime regime = DisorderRegime::CpValid;
    double cp_bound = 0.0;        // 6 pi / omega0^3
    double critical_sigma2 = 0.0; // 12 pi / omega0^3
    bool negative_rate = false;   // atom2 rate < 0 at this sigma2
};

// Rate of the empty cavity: omega0^3 p_sq / (12 pi).
double coeff_empty(const AtomParams& atom);

// Rate of the disordered cavity: omega0^3 p_sq (1 - sigma2 omega0^3 / 6 pi) / (12 pi).
// result.cp_violation is set when the rate is negative.
struct DisorderedRate {
    double rate = 0.0;
    bool cp_violation = false;
};
DisorderedRate coeff_disordered(const AtomParams& atom, double sigma2);

// Both rates packaged for the dynamics.
KossakowskiCoefficients make_coefficients(const AtomParams& atom1, const AtomParams& atom2,
                                          double sigma2);

// K_ij = A (delta_ij - n_i n_j - i eps_ijm n_m) for a unit vector n.
// Eigenvalues are {2A, 0, 0}.
Mat3 kossakowski_matrix(double rate, const std::array<double, 3>& n);

// Critical disorder strength 12 pi / omega0^3 at which the singlet becomes
// decoherence free (equal unit polarizations).
double critical_sigma(double omega0);

// Complete-positivity bound 6 pi / omega0^3 (zero crossing of the atom2 rate).
double cp_bound(double omega0);

// Classifies a parameter point against the two bounds. Comparisons carry a
// 1e-12 relative tolerance so exactly-critical inputs stay in model.
RegimeReport cp_validity(double omega0, double sigma2);

}  // namespace entdyn
