// verify.hpp — built-in numerical verification: quadrature oracles against the
// analytic spectral densities, the coincidence limit of the full disorder
// correlator, dissipator/ODE equivalence, closed-form vs RK4, and the
// Wootters vs X-state concurrence cross-check.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace entdyn {

struct CheckResult {
    std::string name;
    double measured = 0.0;   // measured error (or deviation from the target)
    double tolerance = 0.0;  // pass iff measured <= tolerance
    bool pass = false;
};

// Analytic spectral densities the quadrature is checked against. Injectable
// so a deliberately corrupted routine can be shown to fail the suite.
struct SpectralRoutines {
    std::function<double(int eta, double omega0)> free;
    std::function<double(int eta, double omega0, double sigma2)> disorder_correction;
};

SpectralRoutines default_spectral_routines();

// Runs every check; deterministic (fixed seeds, fixed grids).
std::vector<CheckResult> run_verification(const SpectralRoutines& routines);
std::vector<CheckResult> run_verification();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace entdyn
