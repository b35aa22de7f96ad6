#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "entdyn/entdyn.h"

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("status strings and error reporting") {
    CHECK(std::string(entdyn_status_string(ENTDYN_OK)) == "ok");
    CHECK(std::string(entdyn_status_string(ENTDYN_ERR_REGIME)) == "physics-regime abort");

    entdyn_model* model = nullptr;
    CHECK(entdyn_model_create(-1.0, 1.0, 1.0, 0.0, &model) == ENTDYN_ERR_INVALID_ARGUMENT);
    CHECK(model == nullptr);
    CHECK(std::strlen(entdyn_last_error()) > 0);

    CHECK(entdyn_model_create(5.0, 1.0, 1.0, 0.0, nullptr) == ENTDYN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("model handles expose rates and regimes") {
    entdyn_model* model = nullptr;
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, 0.1, &model) == ENTDYN_OK);
    double a11 = 0.0, a22 = 0.0;
    CHECK(entdyn_model_coefficients(model, &a11, &a22) == ENTDYN_OK);
    CHECK(a11 == doctest::Approx(125.0 / (12.0 * kPi)).epsilon(1e-15));
    CHECK(a22 == doctest::Approx(125.0 / (12.0 * kPi) * (1.0 - 0.1 * 125.0 / (6.0 * kPi)))
                     .epsilon(1e-15));

    int regime = -1;
    CHECK(entdyn_model_regime(model, &regime) == ENTDYN_OK);
    CHECK(regime == ENTDYN_REGIME_CP_VALID);
    entdyn_model_destroy(model);

    CHECK(entdyn_classify_regime(5.0, 0.2, &regime) == ENTDYN_OK);
    CHECK(regime == ENTDYN_REGIME_EXTENDED);
    CHECK(entdyn_classify_regime(5.0, 0.4, &regime) == ENTDYN_OK);
    CHECK(regime == ENTDYN_REGIME_OUT_OF_MODEL);

    double critical = 0.0, bound = 0.0;
    CHECK(entdyn_critical_sigma(5.0, &critical) == ENTDYN_OK);
    CHECK(critical == doctest::Approx(12.0 * kPi / 125.0).epsilon(1e-15));
    CHECK(entdyn_cp_bound(5.0, &bound) == ENTDYN_OK);
    CHECK(critical == doctest::Approx(2.0 * bound).epsilon(1e-15));
    CHECK(entdyn_critical_sigma(0.0, &critical) == ENTDYN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("singlet concurrence through the C surface") {
    entdyn_model* df = nullptr;
    double critical = 0.0;
    REQUIRE(entdyn_critical_sigma(5.0, &critical) == ENTDYN_OK);
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, critical, &df) == ENTDYN_OK);
    for (double tau : {0.0, 0.5, 1.0}) {
        double c = 0.0;
        CHECK(entdyn_singlet_concurrence(df, tau, &c) == ENTDYN_OK);
        CHECK(std::abs(c - 1.0) <= 1e-9);
    }
    entdyn_model_destroy(df);

    entdyn_model* beyond = nullptr;
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, 0.4, &beyond) == ENTDYN_OK);
    double c = 0.0;
    CHECK(entdyn_singlet_concurrence(beyond, 0.5, &c) == ENTDYN_ERR_REGIME);
    entdyn_model_destroy(beyond);
}

TEST_CASE("werner evolution and concurrence round-trip") {
    entdyn_model* model = nullptr;
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, 0.0, &model) == ENTDYN_OK);

    double bloch[16];
    REQUIRE(entdyn_evolve_werner(model, 0.8, 0.0, bloch) == ENTDYN_OK);
    CHECK(bloch[0] == 1.0);
    CHECK(bloch[5] == -0.8);   // rho_11
    CHECK(bloch[10] == -0.8);  // rho_22
    CHECK(bloch[15] == -0.8);  // rho_33

    double value = 0.0;
    int clamped = -1;
    CHECK(entdyn_concurrence(bloch, &value, &clamped) == ENTDYN_OK);
    CHECK(value == doctest::Approx(0.7).epsilon(1e-10));

    CHECK(entdyn_evolve_werner(model, 2.0, 0.1, bloch) == ENTDYN_ERR_INVALID_ARGUMENT);
    entdyn_model_destroy(model);
}

TEST_CASE("trajectory handles") {
    entdyn_model* model = nullptr;
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, 0.0, &model) == ENTDYN_OK);

    entdyn_trajectory* traj = nullptr;
    REQUIRE(entdyn_model_run(model, 0.8, 1.0, 1e-3, 1, ENTDYN_METHOD_RK4, &traj) ==
            ENTDYN_OK);
    size_t count = 0;
    CHECK(entdyn_trajectory_size(traj, &count) == ENTDYN_OK);
    CHECK(count == 1001);

    entdyn_sample first;
    CHECK(entdyn_trajectory_sample(traj, 0, &first) == ENTDYN_OK);
    CHECK(first.tau == 0.0);
    CHECK(std::abs(first.concurrence - 0.7) <= 1e-9);
    CHECK(first.trace_err <= 1e-12);

    entdyn_sample last;
    CHECK(entdyn_trajectory_sample(traj, count - 1, &last) == ENTDYN_OK);
    CHECK(last.tau == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(last.concurrence < first.concurrence);
    CHECK(last.min_eig >= -1e-8);

    entdyn_sample oob;
    CHECK(entdyn_trajectory_sample(traj, count, &oob) == ENTDYN_ERR_INVALID_ARGUMENT);

    size_t warnings = 0;
    CHECK(entdyn_trajectory_warning_count(traj, &warnings) == ENTDYN_OK);
    CHECK(warnings == 0);
    entdyn_trajectory_destroy(traj);
    entdyn_model_destroy(model);
}

TEST_CASE("regime policy through the run interface") {
    entdyn_model* beyond = nullptr;
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, 0.4, &beyond) == ENTDYN_OK);
    entdyn_trajectory* traj = nullptr;
    CHECK(entdyn_model_run(beyond, 1.0, 1.0, 1e-3, 1, ENTDYN_METHOD_RK4, &traj) ==
          ENTDYN_ERR_REGIME);
    CHECK(traj == nullptr);
    entdyn_model_destroy(beyond);

    // Paper-extended non-singlet runs succeed and carry warnings.
    entdyn_model* extended = nullptr;
    REQUIRE(entdyn_model_create(5.0, 1.0, 1.0, 0.2, &extended) == ENTDYN_OK);
    REQUIRE(entdyn_model_run(extended, 0.8, 0.5, 1e-3, 10, ENTDYN_METHOD_CLOSED_FORM,
                             &traj) == ENTDYN_OK);
    size_t warnings = 0;
    CHECK(entdyn_trajectory_warning_count(traj, &warnings) == ENTDYN_OK);
    CHECK(warnings >= 1);
    CHECK(entdyn_trajectory_warning(traj, 0) != nullptr);
    entdyn_trajectory_destroy(traj);
    entdyn_model_destroy(extended);

    CHECK(entdyn_model_run(nullptr, 0.8, 1.0, 1e-3, 1, ENTDYN_METHOD_RK4, &traj) ==
          ENTDYN_ERR_INVALID_ARGUMENT);
}
