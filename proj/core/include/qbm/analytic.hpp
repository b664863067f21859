#pragma once

#include <complex>
#include <optional>

#include "qbm/coefficients.hpp"
#include "qbm/grid.hpp"

namespace qbm::analytic {

using cplx = std::complex<double>;

/// Free evolution of a unit-norm Gaussian of width sigma_x0 and zero mean
/// momentum, initially centred at `center`.
cplx free_packet(double center, const SuperpositionParams& p, double x, double t);

/// sigma(t) = sigma_x0 sqrt(1 + t^2 / (4 M^2 sigma_x0^4)).
double packet_width(const SuperpositionParams& p, double t);

/// Overlap integral of the two unit-norm packets at +-L0; constant under
/// free evolution.
double packet_overlap(const SuperpositionParams& p);

/// |N (phi(+L0) + phi(-L0))|^2 with continuum normalisation.
double free_superposition_density(const SuperpositionParams& p, double x, double t);

/// Free y-packet with width sigma_y0 and momentum k_y.
cplx chi_envelope(const SuperpositionParams& p, double y, double t);
double chi_center(const SuperpositionParams& p, double t);

/// int_0^t D(s) ds. Exact for constant coefficients, composite Simpson otherwise.
double integrated_diffusion(const BathModel& bath, double t);

/// exp(-dx^2 kappa int_0^t D ds), kappa from the convention.
double gamma_factor(const BathModel& bath, double dx, double t, GammaConvention conv);

/// (|phi1|^2 + |phi2|^2 + 2 G Re(phi1* phi2)) |chi|^2 / (2 + 2 G overlap),
/// with G = gamma_factor(bath, dx, t, conv) and dx = 2 L0 unless given.
/// The denominator keeps the (x, y) integral at one for every G.
double decohered_pattern(const SuperpositionParams& p, const BathModel& bath, double x, double y,
                         double t, GammaConvention conv, std::optional<double> dx = {});

/// Same bracket with an arbitrary constant attenuation in place of Gamma(t).
double attenuated_pattern(const SuperpositionParams& p, double attenuation, double x, double y,
                          double t);

/// t_D = 1 / (D dx^2 kappa); +infinity when D = 0. Requires constant D.
double decoherence_time(const BathModel& bath, double dx, GammaConvention conv);

/// Exact diagonal of rho under free motion plus the (x-x')^2 diffusion term
/// with constant coefficient `kappa_d` (= kappa * D), gamma = f = 0:
///
///   rho_ab(x,x,t) = w/(2 pi) sqrt(pi/alpha) exp(-d^2/(2 s^2) + (i y - beta)^2 / (4 alpha))
///
/// where a, b are packet centres, y = x - (a+b)/2, d = (a-b)/2,
/// alpha = s^2/2 + t^2/(8 M^2 s^2) + kappa_d t^3 / (3 M^2), beta = t d / (2 M s^2),
/// w the superposition weight. Obtained by Fourier transforming along x+x'
/// and integrating the characteristics of the relative coordinate.
struct DiffusiveComponents {
  double rho11;  // packet at +L0, weighted
  double rho22;  // packet at -L0, weighted
  cplx rho12;    // interference amplitude; rho_int = 2 Re rho12
  double total() const { return rho11 + rho22 + 2.0 * rho12.real(); }
};
DiffusiveComponents diffusive_components(const SuperpositionParams& p, double kappa_d, double x,
                                         double t);

}  // namespace qbm::analytic
