// correlators.hpp — electric-field Wightman functions for a static atom with
// and without light-cone disorder, their spectral densities, and a numerical
// Fourier-transform oracle used by the verification suite.
#pragma once

#include <array>
#include <complex>
#include <functional>

#include "entdyn/pauli_algebra.hpp"

namespace entdyn {

// Disorder strength sigma2 (>= 0) is the intensity of the white-noise
// susceptibility; eps (> 0) is the i*epsilon regulator of position-space
// evaluation. Both are validated by every operation that takes them.

// Vacuum Wightman function of the electric field on a static worldline,
// delta_ij coefficient: 1 / (pi^2 (dtau - i eps)^4).
complexd wightman_free_static(double dtau, double eps);

// First-order disorder correction on a static worldline, delta_ij
// coefficient: -20 i sigma^2 / (pi^3 (dtau - i eps)^7).
complexd wightman_disorder_static(double dtau, double eps, double sigma2);

// Full position-space disorder correction <D^1+_ab(x,x')> for spatial indices
// a,b in {1,2,3}. The time arguments inside the polynomial brackets carry the
// same dt - i eps regulator as the prefactor, so the coincidence limit dx -> 0
// reproduces wightman_disorder_static identically at finite eps.
complexd wightman_disorder_full(double dt, const std::array<double, 3>& dx, double eps,
                                double sigma2, int a, int b);

// Spectral density of the free field at eta*omega0 (delta_kl coefficient):
// eta^3 omega0^3 theta(eta) / (3 pi).
double spectral_free(int eta, double omega0);

// Disorder correction to the spectral density (delta_kl coefficient):
// -sigma^2 eta^6 omega0^6 theta(eta) / (18 pi^2).
double spectral_disorder_correction(int eta, double omega0, double sigma2);

// Photon self-energy in the disordered medium, delta_jm coefficient:
// sigma^2 (k0)^3 / (3 pi).
double self_energy(double k0, double sigma2);

// Numerical Fourier transform  int_{-T}^{T} e^{i omega u} f(u, eps) du  by
// composite trapezoid with compensated summation. (T, n) set the initial
// grid; the rule is refined (n x4, T x2) until two successive values agree
// to 1e-4 relative, so a coarse starting grid still converges. Verification
// only; production paths use the analytic spectral densities.
complexd fourier_quadrature(const std::function<complexd(double, double)>& correlator,
                            double omega, double eps, double T, long n);

}  // namespace entdyn
