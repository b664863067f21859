#include "qbm/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qbm/errors.hpp"

namespace qbm::analytic {
namespace {

constexpr double kPi = std::numbers::pi;

// Unit-norm free Gaussian with initial width sigma, centre c, momentum k.
cplx gaussian_packet(double sigma, double mass, double c, double k, double x, double t) {
  const double tau = t / (2.0 * mass * sigma * sigma);
  const cplx spread{1.0, tau};
  const double v = k / mass;
  const double u = x - c - v * t;
  const cplx exponent = -u * u / (4.0 * sigma * sigma * spread) + cplx{0.0, k * (x - c - 0.5 * v * t)};
  return std::pow(2.0 * kPi * sigma * sigma, -0.25) / std::sqrt(spread) * std::exp(exponent);
}

}  // namespace

cplx free_packet(double center, const SuperpositionParams& p, double x, double t) {
  return gaussian_packet(p.sigma_x0, p.mass, center, 0.0, x, t);
}

double packet_width(const SuperpositionParams& p, double t) {
  const double s2 = p.sigma_x0 * p.sigma_x0;
  return p.sigma_x0 * std::sqrt(1.0 + t * t / (4.0 * p.mass * p.mass * s2 * s2));
}

double packet_overlap(const SuperpositionParams& p) {
  return std::exp(-p.L0 * p.L0 / (2.0 * p.sigma_x0 * p.sigma_x0));
}

double free_superposition_density(const SuperpositionParams& p, double x, double t) {
  const cplx psi = free_packet(p.L0, p, x, t) + free_packet(-p.L0, p, x, t);
  return std::norm(psi) / (2.0 + 2.0 * packet_overlap(p));
}

cplx chi_envelope(const SuperpositionParams& p, double y, double t) {
  // The y-packet starts at the origin.
  return gaussian_packet(p.sigma_y0, p.mass, 0.0, p.k_y, y, t);
}

double chi_center(const SuperpositionParams& p, double t) { return p.k_y / p.mass * t; }

double integrated_diffusion(const BathModel& bath, double t) {
  if (t <= 0.0) return 0.0;
  if (bath.time_constant) return bath.diffusion(0.0) * t;
  constexpr int intervals = 256;
  const double h = t / intervals;
  double sum = bath.diffusion(0.0) + bath.diffusion(t);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * bath.diffusion(k * h);
  return sum * h / 3.0;
}

double gamma_factor(const BathModel& bath, double dx, double t, GammaConvention conv) {
  return std::exp(-dx * dx * diffusion_weight(conv) * integrated_diffusion(bath, t));
}

double attenuated_pattern(const SuperpositionParams& p, double attenuation, double x, double y,
                          double t) {
  const cplx phi1 = free_packet(p.L0, p, x, t);
  const cplx phi2 = free_packet(-p.L0, p, x, t);
  const double bracket =
      std::norm(phi1) + std::norm(phi2) + 2.0 * attenuation * (std::conj(phi1) * phi2).real();
  const double norm = 2.0 + 2.0 * attenuation * packet_overlap(p);
  return bracket * std::norm(chi_envelope(p, y, t)) / norm;
}

double decohered_pattern(const SuperpositionParams& p, const BathModel& bath, double x, double y,
                         double t, GammaConvention conv, std::optional<double> dx) {
  const double separation = dx.value_or(2.0 * p.L0);
  return attenuated_pattern(p, gamma_factor(bath, separation, t, conv), x, y, t);
}

double decoherence_time(const BathModel& bath, double dx, GammaConvention conv) {
  if (!bath.time_constant) {
    throw ConfigError("decoherence_time: requires a time-constant diffusion coefficient");
  }
  const double d = bath.diffusion(0.0);
  if (d == 0.0 || dx == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (d * dx * dx * diffusion_weight(conv));
}

DiffusiveComponents diffusive_components(const SuperpositionParams& p, double kappa_d, double x,
                                         double t) {
  const double s = p.sigma_x0;
  const double m = p.mass;
  const double alpha = 0.5 * s * s + t * t / (8.0 * m * m * s * s) + kappa_d * t * t * t / (3.0 * m * m);
  const double w = 1.0 / (2.0 + 2.0 * packet_overlap(p));

  auto component = [&](double a, double b) {
    const double y = x - 0.5 * (a + b);
    const double d = 0.5 * (a - b);
    const double beta = t * d / (2.0 * m * s * s);
    const cplx q{-beta, y};
    const cplx exponent = -d * d / (2.0 * s * s) + q * q / (4.0 * alpha);
    return w / (2.0 * kPi) * std::sqrt(kPi / alpha) * std::exp(exponent);
  };
  DiffusiveComponents out;
  out.rho11 = component(p.L0, p.L0).real();
  out.rho22 = component(-p.L0, -p.L0).real();
  out.rho12 = component(p.L0, -p.L0);
  return out;
}

}  // namespace qbm::analytic
