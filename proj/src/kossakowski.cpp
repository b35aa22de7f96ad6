#include "entdyn/kossakowski.hpp"

#include <cmath>
#include <numbers>

namespace entdyn {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const AtomParams& atom, const char* who) {
    if (!(atom.omega0 > 0.0))
        throw InvalidArgument(std::string(who) + ": omega0 must be > 0");
    if (!(atom.p_sq >= 0.0))
        throw InvalidArgument(std::string(who) + ": p_sq must be >= 0");
}

}  // namespace

double coeff_empty(const AtomParams& atom) {
    validate(atom, "coeff_empty");
    const double w3 = atom.omega0 * atom.omega0 * atom.omega0;
    return w3 / (12.0 * kPi) * atom.p_sq;
}

DisorderedRate coeff_disordered(const AtomParams& atom, double sigma2) {
    validate(atom, "coeff_disordered");
    if (sigma2 < 0.0) throw InvalidArgument("coeff_disordered: sigma2 must be >= 0");
    const double w3 = atom.omega0 * atom.omega0 * atom.omega0;
    const double rate = w3 / (12.0 * kPi) * (1.0 - sigma2 * w3 / (6.0 * kPi)) * atom.p_sq;
    return DisorderedRate{rate, rate < 0.0};
}

KossakowskiCoefficients make_coefficients(const AtomParams& atom1, const AtomParams& atom2,
                                          double sigma2) {
    const double a1 = coeff_empty(atom1);
    const auto a2 = coeff_disordered(atom2, sigma2);
    return KossakowskiCoefficients{a1, a2.rate, a2.cp_violation};
}

Mat3 kossakowski_matrix(double rate, const std::array<double, 3>& n) {
    const double norm2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw InvalidArgument("kossakowski_matrix: n must be a unit vector");
    Mat3 k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double delta = (i == j) ? 1.0 : 0.0;
            double levi = 0.0;  // eps_ijm n_m
            if (i != j) {
                const int m = 3 - i - j;
                const double sign = (j == (i + 1) % 3) ? 1.0 : -1.0;
                levi = sign * n[static_cast<std::size_t>(m)];
            }
            k(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                rate * complexd(delta - n[static_cast<std::size_t>(i)] *
                                            n[static_cast<std::size_t>(j)],
                                -levi);
        }
    return k;
}

double critical_sigma(double omega0) {
    if (!(omega0 > 0.0)) throw InvalidArgument("critical_sigma: omega0 must be > 0");
    return 12.0 * kPi / (omega0 * omega0 * omega0);
}

double cp_bound(double omega0) {
    if (!(omega0 > 0.0)) throw InvalidArgument("cp_bound: omega0 must be > 0");
    return 6.0 * kPi / (omega0 * omega0 * omega0);
}

RegimeReport cp_validity(double omega0, double sigma2) {
    if (sigma2 < 0.0) throw InvalidArgument("cp_validity: sigma2 must be >= 0");
    RegimeReport rep;
    rep.cp_bound = cp_bound(omega0);
    rep.critical_sigma2 = critical_sigma(omega0);
    constexpr double kRelTol = 1e-12;
    if (sigma2 <= rep.cp_bound * (1.0 + kRelTol)) {
        rep.regime = DisorderRegime::CpValid;
    } else if (sigma2 <= rep.critical_sigma2 * (1.0 + kRelTol)) {
        rep.regime = DisorderRegime::Extended;
        rep.negative_rate = true;
    } else {
        rep.regime = DisorderRegime::OutOfModel;
        rep.negative_rate = true;
    }
    return rep;
}

}  // namespace entdyn
