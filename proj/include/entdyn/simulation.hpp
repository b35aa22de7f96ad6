// simulation.hpp — one trajectory run: parameter validation, disorder-regime
// policy, evolution method selection, and the concurrence-column rules.
#pragma once

#include <string>
#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/kossakowski.hpp"

namespace entdyn {

enum class EvolutionMethod { Rk4, ClosedForm };

struct SimulationConfig {
    double kappa = 0.8;
    double omega0 = 5.0;
    double sigma2 = 0.0;
    double p1_sq = 1.0;
    double p2_sq = 1.0;
    double tau_max = 1.0;
    double dt = 1e-3;
    long stride = 1;
    EvolutionMethod method = EvolutionMethod::Rk4;
};

struct SimulationResult {
    Trajectory trajectory;
    KossakowskiCoefficients coefficients;
    RegimeReport regime;
};

// Runs a Werner-state trajectory under the configured parameters.
//
// Regime policy: kappa = 1 runs report the singlet closed-form concurrence
// and abort (RegimeError) above the critical disorder strength, where that
// expression would exceed one. Runs with kappa < 1 always proceed; outside
// the completely positive regime the Wootters column falls back to clamped
// X-state values and the violation is recorded in trajectory.warnings.
SimulationResult run_simulation(const SimulationConfig& cfg);

}  // namespace entdyn
