#include "qbm/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qbm {
namespace {

// J0(z) = sum_k (-1)^k (z^2/4)^k / (k!)^2. At |z| = 12 the largest term is
// about 4e3, so cancellation costs four digits at most.
double ascending_series(double z) {
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > q) break;
  }
  return sum;
}

// Hankel expansion J0(z) = sqrt(2/(pi z)) (P cos chi - Q sin chi), chi = z - pi/4,
// a_k = prod_{m=1..k} (2m-1)^2 / (k! 8^k). Summed until the terms stop shrinking.
double hankel_asymptotic(double z) {
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= odd * odd / (8.0 * k * z);
    if (a >= previous) break;
    previous = a;
    // P takes k = 0, 2, 4, ... with signs +, -, +; Q takes k = 1, 3, 5, ... with -, +, -.
    const int r = k % 4;
    if (k % 2 == 0) p += (r == 0 ? a : -a);
    else q += (r == 3 ? a : -a);
    if (a < 1e-17) break;
  }
  const double chi = z - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double z) {
  const double x = std::abs(z);
  if (!(x <= kBesselJ0MaxArgument)) {
    throw std::domain_error("bessel_j0: |z| = " + std::to_string(x) + " is beyond the supported range 50");
  }
  return x <= kBesselJ0SeriesLimit ? ascending_series(x) : hankel_asymptotic(x);
}

}  // namespace qbm
