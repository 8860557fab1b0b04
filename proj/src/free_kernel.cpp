#include "eelab/free_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace eelab {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = 0.57721566490153286061;

// ---------------------------------------------------------------------------
// H0^(1)(w) on the closed upper half plane.
//
// Four regimes, each validated against high-precision references:
//   |w| <= 3                    power series of K0(-i w)
//   |w| <= 16, |Im w| <= 0.4    Taylor step off the real axis, coefficients
//                               from the Bessel ODE, seeds from std J0/Y0
//   |w| <= 16, Im w  >  0.4     integral (2/(i pi)) int_0^inf e^{i w cosh t} dt,
//                               composite Gauss-Legendre with a phase budget
//   |w| >  16                   large-argument expansion
// Re w < 0 is folded into Re w >= 0 through H0^(1)(w) = -conj(H0^(1)(-conj w)).
// ---------------------------------------------------------------------------

cplx k0_series(cplx zeta) {
    // K0 = -(log(zeta/2) + gamma) I0(zeta) + sum_{k>=1} H_k (zeta^2/4)^k / (k!)^2
    const cplx q = 0.25 * zeta * zeta;
    cplx term(1.0, 0.0);
    cplx i0 = term;
    cplx hsum(0.0, 0.0);
    double harmonic = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / static_cast<double>(k * k);
        harmonic += 1.0 / k;
        i0 += term;
        hsum += harmonic * term;
        if (std::abs(term) < 1e-20 * (std::abs(i0) + 1.0)) break;
    }
    return -(std::log(0.5 * zeta) + euler_gamma) * i0 + hsum;
}

cplx hankel_asymptotic(cplx w) {
    // H0^(1)(w) ~ sqrt(2/(pi w)) e^{i(w - pi/4)} sum_k i^k a_k / w^k,
    // a_k = prod_{j<=k} (2j-1)^2 / (8^k k!)
    cplx sum(1.0, 0.0);
    cplx term(1.0, 0.0);
    const cplx iw = cplx(0.0, 1.0) / w;
    double prev = 1.0;
    for (int k = 0; k < 40; ++k) {
        const double num = (2.0 * k + 1.0) * (2.0 * k + 1.0);
        term *= iw * (num / (8.0 * (k + 1.0)));
        const double mag = std::abs(term);
        if (mag > prev) break;  // divergent tail reached
        sum += term;
        prev = mag;
        if (mag < 1e-18) break;
    }
    const cplx phase = std::exp(cplx(0.0, 1.0) * (w - cplx(pi / 4.0, 0.0)));
    return std::sqrt(2.0 / (pi * w)) * phase * sum;
}

cplx hankel_taylor_near_axis(cplx w) {
    // Taylor around x0 = Re w; coefficients c_n of H0 about x0 satisfy
    // x0 (n+2)(n+1) c_{n+2} + (n+1)^2 c_{n+1} + x0 c_n + c_{n-1} = 0.
    const double x0 = w.real();
    const cplx delta(0.0, w.imag());
    std::vector<cplx> c(30);
    c[0] = cplx(std::cyl_bessel_j(0.0, x0), std::cyl_neumann(0.0, x0));
    c[1] = -cplx(std::cyl_bessel_j(1.0, x0), std::cyl_neumann(1.0, x0));
    for (int n = 0; n + 2 < static_cast<int>(c.size()); ++n) {
        const cplx prev = (n >= 1) ? c[n - 1] : cplx(0.0, 0.0);
        c[n + 2] = -((n + 1.0) * (n + 1.0) * c[n + 1] + x0 * c[n] + prev) /
                   (x0 * (n + 2.0) * (n + 1.0));
    }
    cplx acc(0.0, 0.0);
    cplx pw(1.0, 0.0);
    for (const cplx& cn : c) {
        acc += cn * pw;
        pw *= delta;
    }
    return acc;
}

cplx hankel_cosh_integral(cplx w) {
    // (2/(i pi)) int_0^T e^{i w cosh t} dt, T chosen so the tail is < 1e-18.
    const double decay = w.imag();
    const double tail = 41.5 / decay;  // cosh T
    const double T = std::log(tail + std::sqrt(tail * tail - 1.0));
    const double rate = std::abs(w.real()) * std::sinh(T) + decay * std::sinh(T);
    const int panels = std::max(24, static_cast<int>(rate * T / 2.5) + 1);
    static const double gl_x[8] = {
        -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
        0.7966664774136267,  0.9602898564975362};
    static const double gl_w[8] = {
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
        0.2223810344533745, 0.1012285362903763};
    const double h = T / panels;
    cplx acc(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        cplx local(0.0, 0.0);
        for (int q = 0; q < 8; ++q) {
            const double t = a + 0.5 * h * (gl_x[q] + 1.0);
            local += gl_w[q] * std::exp(cplx(0.0, 1.0) * w * std::cosh(t));
        }
        acc += 0.5 * h * local;
    }
    return 2.0 / (cplx(0.0, 1.0) * pi) * acc;
}

} // namespace

cplx bessel_k0(cplx zeta) {
    if (zeta.real() < 0.0 || (zeta.real() == 0.0 && zeta.imag() == 0.0))
        throw std::domain_error("bessel_k0: need Re zeta >= 0, zeta != 0");
    // K0(zeta) = (i pi / 2) H0^(1)(i zeta)
    return cplx(0.0, pi / 2.0) * hankel1_0(cplx(0.0, 1.0) * zeta);
}

cplx hankel1_0(cplx w) {
    if (w.imag() < 0.0)
        throw std::domain_error("hankel1_0: need Im w >= 0");
    if (w == cplx(0.0, 0.0))
        throw std::domain_error("hankel1_0: singular at w = 0");
    if (w.real() < 0.0)
        return -std::conj(hankel1_0(-std::conj(w)));
    const double mag = std::abs(w);
    if (mag <= 3.0)
        return 2.0 / (cplx(0.0, 1.0) * pi) * k0_series(cplx(0.0, -1.0) * w);
    if (mag > 16.0)
        return hankel_asymptotic(w);
    if (w.imag() <= 0.4)
        return hankel_taylor_near_axis(w);
    return hankel_cosh_integral(w);
}

EnergyParams::EnergyParams(double e) : fermi_energy(e) {
    if (!(e > 0.0))
        throw std::domain_error("EnergyParams: fermi_energy must be positive");
}

cplx sqrt_upper(cplx z) {
    const cplx w = std::sqrt(z);
    return w.imag() >= 0.0 ? w : -w;
}

double im_sqrt_closed_form(double fermi_energy, double eta) {
    if (!(fermi_energy > 0.0))
        throw std::domain_error("im_sqrt_closed_form: need E > 0");
    const double mod = std::pow(fermi_energy * fermi_energy + eta * eta, 0.25);
    return mod * std::sin(0.5 * std::atan(std::abs(eta) / fermi_energy));
}

namespace {

double unit_ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return pi;
        case 3: return 4.0 * pi / 3.0;
        default: throw std::invalid_argument("unsupported dimension");
    }
}

void require_dim(int dim, const char* fn) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument(std::string(fn) + ": dimension must be 1, 2 or 3");
}

} // namespace

double fermi_kernel_free_radial(double r, double fermi_energy, int dim) {
    require_dim(dim, "fermi_kernel_free_radial");
    EnergyParams params(fermi_energy);
    const double k = std::sqrt(fermi_energy);
    const double diag = unit_ball_volume(dim) * std::pow(fermi_energy, 0.5 * dim) /
                        std::pow(2.0 * pi, dim);
    r = std::abs(r);
    const double kr = k * r;
    if (kr < 1e-3) {
        // two-term Taylor of the ball Fourier transform about r = 0
        return diag * (1.0 - kr * kr / (2.0 * (dim + 2.0)));
    }
    switch (dim) {
        case 1: return std::sin(kr) / (pi * r);
        case 2: return k / (2.0 * pi * r) * std::cyl_bessel_j(1.0, kr);
        case 3: return std::pow(k / (2.0 * pi * r), 1.5) * std::cyl_bessel_j(1.5, kr);
    }
    return 0.0;  // unreachable
}

double fermi_kernel_free(std::span<const double> x, std::span<const double> y,
                         double fermi_energy, int dim) {
    require_dim(dim, "fermi_kernel_free");
    if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
        throw std::invalid_argument("fermi_kernel_free: point size must match dimension");
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) r2 += (x[i] - y[i]) * (x[i] - y[i]);
    return fermi_kernel_free_radial(std::sqrt(r2), fermi_energy, dim);
}

cplx green_free_radial(double r, cplx z, int dim) {
    require_dim(dim, "green_free_radial");
    if (z.imag() == 0.0)
        throw std::domain_error("green_free_radial: spectral parameter must be nonreal");
    const cplx w = sqrt_upper(z);
    r = std::abs(r);
    switch (dim) {
        case 1:
            return cplx(0.0, 1.0) / (2.0 * w) * std::exp(cplx(0.0, 1.0) * w * r);
        case 2:
            if (r == 0.0)
                throw std::domain_error("green_free_radial: singular at coincident points");
            return cplx(0.0, 0.25) * hankel1_0(w * r);
        case 3:
            if (r == 0.0)
                throw std::domain_error("green_free_radial: singular at coincident points");
            return std::exp(cplx(0.0, 1.0) * w * r) / (4.0 * pi * r);
    }
    return {};
}

cplx green_free(std::span<const double> x, std::span<const double> y, cplx z, int dim) {
    require_dim(dim, "green_free");
    if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
        throw std::invalid_argument("green_free: point size must match dimension");
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) r2 += (x[i] - y[i]) * (x[i] - y[i]);
    return green_free_radial(std::sqrt(r2), z, dim);
}

DecayFitReport verify_green_decay(cplx z, int dim, std::span<const double> separations) {
    if (z.imag() == 0.0)
        throw std::domain_error("verify_green_decay: spectral parameter must be nonreal");
    if (separations.size() < 10)
        throw std::invalid_argument("verify_green_decay: need at least 10 separations");
    double r_min = separations.front(), r_max = separations.front();
    for (double r : separations) {
        r_min = std::min(r_min, r);
        r_max = std::max(r_max, r);
    }
    if (r_max < 10.0 * r_min)
        throw std::invalid_argument("verify_green_decay: separations must span a decade");

    // least squares on  log|G| + ((d-1)/2) log r = b - rate * r
    double sr = 0, sy = 0, srr = 0, sry = 0;
    const double n = static_cast<double>(separations.size());
    for (double r : separations) {
        const double y = std::log(std::abs(green_free_radial(r, z, dim))) +
                         0.5 * (dim - 1) * std::log(r);
        sr += r;
        sy += y;
        srr += r * r;
        sry += r * y;
    }
    const double slope = (n * sry - sr * sy) / (n * srr - sr * sr);
    DecayFitReport report;
    report.fitted_rate = -slope;
    report.predicted_rate = std::abs(sqrt_upper(z).imag());
    report.relative_rate_error =
        std::abs(report.fitted_rate - report.predicted_rate) / report.predicted_rate;
    report.r_min = r_min;
    report.r_max = r_max;
    return report;
}

} // namespace eelab
