#include "entdyn/simulation.hpp"

#include <cmath>

namespace entdyn {

SimulationResult run_simulation(const SimulationConfig& cfg) {
    if (!(cfg.omega0 > 0.0)) throw InvalidArgument("run_simulation: omega0 must be > 0");
    if (cfg.sigma2 < 0.0) throw InvalidArgument("run_simulation: sigma2 must be >= 0");
    if (!(cfg.p1_sq >= 0.0) || !(cfg.p2_sq >= 0.0))
        throw InvalidArgument("run_simulation: polarization norms must be >= 0");

    SimulationResult result;
    result.coefficients = make_coefficients({cfg.omega0, cfg.p1_sq}, {cfg.omega0, cfg.p2_sq},
                                            cfg.sigma2);
    result.regime = cp_validity(cfg.omega0, cfg.sigma2);

    const bool singlet = cfg.kappa == 1.0;
    if (singlet && result.regime.regime == DisorderRegime::OutOfModel)
        throw RegimeError("run_simulation: sigma2 = " + std::to_string(cfg.sigma2) +
                          " exceeds the critical strength " +
                          std::to_string(result.regime.critical_sigma2) +
                          "; the singlet concurrence would exceed 1");

    ConcurrenceColumn column;
    if (singlet)
        column = ConcurrenceColumn::SingletClosedForm;
    else if (result.regime.regime == DisorderRegime::CpValid)
        column = ConcurrenceColumn::Wootters;
    else
        column = ConcurrenceColumn::WoottersClamped;

    const BlochState initial = werner_state(cfg.kappa);
    result.trajectory =
        (cfg.method == EvolutionMethod::Rk4)
            ? integrate_rk4(initial, result.coefficients, cfg.tau_max, cfg.dt, cfg.stride,
                            column)
            : sample_closed_form(initial, result.coefficients, cfg.tau_max, cfg.dt,
                                 cfg.stride, column);

    if (result.regime.regime == DisorderRegime::Extended)
        result.trajectory.warnings.insert(
            result.trajectory.warnings.begin(),
            "sigma2 is above the complete-positivity bound; the atom-2 rate is negative");
    else if (result.regime.regime == DisorderRegime::OutOfModel)
        result.trajectory.warnings.insert(
            result.trajectory.warnings.begin(),
            "sigma2 exceeds the critical disorder strength; concurrence values are clamped");
    return result;
}

}  // namespace entdyn
