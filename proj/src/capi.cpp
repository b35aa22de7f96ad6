// capi.cpp — extern-C wrapper around the core library: opaque handles, status
// codes, thread-local error detail.
#include "entdyn/entdyn.h"

#include <memory>
#include <string>

#include "entdyn/dynamics.hpp"
#include "entdyn/entanglement.hpp"
#include "entdyn/kossakowski.hpp"
#include "entdyn/pauli_algebra.hpp"
#include "entdyn/simulation.hpp"
#include "entdyn/verify.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
    g_last_error = what;
    return code;
}

// Maps core exceptions onto status codes around any callable.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ENTDYN_OK;
    } catch (const entdyn::InvalidArgument& e) {
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, e.what());
    } catch (const entdyn::RegimeError& e) {
        return fail(ENTDYN_ERR_REGIME, e.what());
    } catch (const entdyn::UnphysicalState& e) {
        return fail(ENTDYN_ERR_UNPHYSICAL, e.what());
    } catch (const entdyn::NumericError& e) {
        return fail(ENTDYN_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(ENTDYN_ERR_NUMERIC, e.what());
    }
}

entdyn::BlochMatrix bloch_from_flat(const double flat[16]) {
    std::array<std::array<double, 4>, 4> c{};
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu) c[mu][nu] = flat[4 * mu + nu];
    return entdyn::BlochMatrix::from_coefficients(c);
}

void bloch_to_flat(const entdyn::BlochMatrix& b, double flat[16]) {
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu) flat[4 * mu + nu] = b.e[mu][nu];
}

}  // namespace

struct entdyn_model {
    double omega0;
    double p1_sq;
    double p2_sq;
    double sigma2;
    entdyn::KossakowskiCoefficients coefficients;
    entdyn::RegimeReport regime;
};

struct entdyn_trajectory {
    entdyn::Trajectory trajectory;
};

extern "C" {

const char* entdyn_status_string(int status) {
    switch (status) {
        case ENTDYN_OK: return "ok";
        case ENTDYN_ERR_INVALID_ARGUMENT: return "invalid argument";
        case ENTDYN_ERR_REGIME: return "physics-regime abort";
        case ENTDYN_ERR_NUMERIC: return "numerical failure";
        case ENTDYN_ERR_UNPHYSICAL: return "unphysical state";
        default: return "unknown status";
    }
}

const char* entdyn_last_error(void) { return g_last_error.c_str(); }

int entdyn_model_create(double omega0, double p1_sq, double p2_sq, double sigma2,
                        entdyn_model** out) {
    if (out == nullptr) return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        auto model = std::make_unique<entdyn_model>();
        model->omega0 = omega0;
        model->p1_sq = p1_sq;
        model->p2_sq = p2_sq;
        model->sigma2 = sigma2;
        model->coefficients =
            entdyn::make_coefficients({omega0, p1_sq}, {omega0, p2_sq}, sigma2);
        model->regime = entdyn::cp_validity(omega0, sigma2);
        *out = model.release();
    });
}

void entdyn_model_destroy(entdyn_model* model) { delete model; }

int entdyn_model_coefficients(const entdyn_model* model, double* a11, double* a22) {
    if (model == nullptr || a11 == nullptr || a22 == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    *a11 = model->coefficients.atom1;
    *a22 = model->coefficients.atom2;
    return ENTDYN_OK;
}

int entdyn_model_regime(const entdyn_model* model, int* regime) {
    if (model == nullptr || regime == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    *regime = static_cast<int>(model->regime.regime);
    return ENTDYN_OK;
}

int entdyn_critical_sigma(double omega0, double* out) {
    if (out == nullptr) return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = entdyn::critical_sigma(omega0); });
}

int entdyn_cp_bound(double omega0, double* out) {
    if (out == nullptr) return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = entdyn::cp_bound(omega0); });
}

int entdyn_classify_regime(double omega0, double sigma2, int* regime) {
    if (regime == nullptr) return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded(
        [&] { *regime = static_cast<int>(entdyn::cp_validity(omega0, sigma2).regime); });
}

int entdyn_singlet_concurrence(const entdyn_model* model, double tau, double* out) {
    if (model == nullptr || out == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] { *out = entdyn::singlet_concurrence(tau, model->coefficients); });
}

int entdyn_evolve_werner(const entdyn_model* model, double kappa, double tau,
                         double bloch_out[16]) {
    if (model == nullptr || bloch_out == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        const auto state = entdyn::closed_form(entdyn::werner_state(kappa),
                                               model->coefficients, tau);
        bloch_to_flat(state.coeffs, bloch_out);
    });
}

int entdyn_concurrence(const double bloch[16], double* value, int* clamped) {
    if (bloch == nullptr || value == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    return guarded([&] {
        const auto res = entdyn::concurrence(entdyn::bloch_to_density(bloch_from_flat(bloch)));
        *value = res.value;
        if (clamped != nullptr) *clamped = res.clamped ? 1 : 0;
    });
}

int entdyn_model_run(const entdyn_model* model, double kappa, double tau_max, double dt,
                     long stride, int method, entdyn_trajectory** out) {
    if (model == nullptr || out == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    if (method != ENTDYN_METHOD_RK4 && method != ENTDYN_METHOD_CLOSED_FORM)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "unknown evolution method");
    *out = nullptr;
    return guarded([&] {
        entdyn::SimulationConfig cfg;
        cfg.kappa = kappa;
        cfg.omega0 = model->omega0;
        cfg.sigma2 = model->sigma2;
        cfg.p1_sq = model->p1_sq;
        cfg.p2_sq = model->p2_sq;
        cfg.tau_max = tau_max;
        cfg.dt = dt;
        cfg.stride = stride;
        cfg.method = (method == ENTDYN_METHOD_RK4) ? entdyn::EvolutionMethod::Rk4
                                                   : entdyn::EvolutionMethod::ClosedForm;
        auto traj = std::make_unique<entdyn_trajectory>();
        traj->trajectory = entdyn::run_simulation(cfg).trajectory;
        *out = traj.release();
    });
}

int entdyn_trajectory_size(const entdyn_trajectory* traj, size_t* count) {
    if (traj == nullptr || count == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    *count = traj->trajectory.samples.size();
    return ENTDYN_OK;
}

int entdyn_trajectory_sample(const entdyn_trajectory* traj, size_t index,
                             entdyn_sample* out) {
    if (traj == nullptr || out == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    if (index >= traj->trajectory.samples.size())
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "sample index out of range");
    const auto& s = traj->trajectory.samples[index];
    out->tau = s.tau;
    bloch_to_flat(s.state, out->bloch);
    out->concurrence = s.concurrence;
    out->concurrence_clamped = s.concurrence_clamped ? 1 : 0;
    out->trace_err = s.trace_err;
    out->herm_err = s.herm_err;
    out->min_eig = s.min_eig;
    return ENTDYN_OK;
}

int entdyn_trajectory_warning_count(const entdyn_trajectory* traj, size_t* count) {
    if (traj == nullptr || count == nullptr)
        return fail(ENTDYN_ERR_INVALID_ARGUMENT, "null pointer");
    *count = traj->trajectory.warnings.size();
    return ENTDYN_OK;
}

const char* entdyn_trajectory_warning(const entdyn_trajectory* traj, size_t index) {
    if (traj == nullptr || index >= traj->trajectory.warnings.size()) return nullptr;
    return traj->trajectory.warnings[index].c_str();
}

void entdyn_trajectory_destroy(entdyn_trajectory* traj) { delete traj; }

int entdyn_verify_run(entdyn_verify_callback callback, void* user) {
    bool failed = false;
    const int rc = guarded([&] {
        const auto results = entdyn::run_verification();
        for (const auto& r : results) {
            if (callback != nullptr)
                callback(r.name.c_str(), r.measured, r.tolerance, r.pass ? 1 : 0, user);
            if (!r.pass) failed = true;
        }
    });
    if (rc != ENTDYN_OK) return rc;
    if (failed) return fail(ENTDYN_ERR_NUMERIC, "one or more verification checks failed");
    return ENTDYN_OK;
}

}  // extern "C"
