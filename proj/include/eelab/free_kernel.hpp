#pragma once

#include <complex>
#include <span>
#include <vector>

namespace eelab {

/// Fermi energy E > 0 in units hbar^2/2m = 1.
struct EnergyParams {
    double fermi_energy;
    explicit EnergyParams(double e);
};

/// Square root of z with nonnegative imaginary part. For Im z > 0 this is the
/// principal branch; for Im z < 0 it is minus the principal branch. This is
/// the root for which the free resolvent kernel decays at infinity.
std::complex<double> sqrt_upper(std::complex<double> z);

/// |Im sqrt(E + i eta)| in closed form: (E^2+eta^2)^{1/4} sin(arctan(|eta|/E)/2).
double im_sqrt_closed_form(double fermi_energy, double eta);

/// Kernel of the free Fermi projection 1_{<E}(-Laplacian) at separation r,
/// dimensions 1..3. Diagonal r=0 equals the Weyl density omega_d E^{d/2}/(2 pi)^d.
double fermi_kernel_free_radial(double r, double fermi_energy, int dim);

/// Point form of the projection kernel; x and y must both have size dim.
double fermi_kernel_free(std::span<const double> x, std::span<const double> y,
                         double fermi_energy, int dim);

/// Free-space Green's function G_0(x, y; z) of (-Laplacian - z)^{-1} at
/// separation r = |x - y|, nonreal z. Coincident points are rejected for
/// dim >= 2 where the kernel is singular.
std::complex<double> green_free_radial(double r, std::complex<double> z, int dim);

std::complex<double> green_free(std::span<const double> x, std::span<const double> y,
                                std::complex<double> z, int dim);

/// Hankel function H0^(1)(w) for Im w >= 0, accurate to ~1e-12 relative.
std::complex<double> hankel1_0(std::complex<double> w);

/// Macdonald function K0(zeta) for Re zeta >= 0 (zeta not on ]-inf,0]).
std::complex<double> bessel_k0(std::complex<double> zeta);

struct DecayFitReport {
    double fitted_rate = 0.0;     // slope of -log|G| - ((d-1)/2) log r vs r
    double predicted_rate = 0.0;  // |Im sqrt z|
    double relative_rate_error = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
};

/// Fit the exponential decay rate of |G_0| over the given separations and
/// compare with |Im sqrt z|. Requires nonreal z and at least 10 separations
/// spanning a decade.
DecayFitReport verify_green_decay(std::complex<double> z, int dim,
                                  std::span<const double> separations);

} // namespace eelab
