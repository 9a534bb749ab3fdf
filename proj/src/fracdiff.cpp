#include "perarfima/fracdiff.hpp"

#include <cmath>
#include <stdexcept>

#include "perarfima/kernels.hpp"

namespace perarfima {

namespace {

std::vector<double> ratio_recurrence(double d, std::size_t m, double sign) {
  std::vector<double> c(m + 1);
  c[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double jd = static_cast<double>(j);
    c[j] = c[j - 1] * (jd - 1.0 + sign * d) / jd;
  }
  return c;
}

}  // namespace

FracCoeffs pi_coeffs(double d, std::size_t m) {
  if (!std::isfinite(d)) throw std::invalid_argument("pi_coeffs: order must be finite");
  return {d, FilterKind::Difference, ratio_recurrence(d, m, -1.0)};
}

FracCoeffs psi_coeffs(double d, std::size_t m) {
  if (!std::isfinite(d)) throw std::invalid_argument("psi_coeffs: order must be finite");
  return {d, FilterKind::Integration, ratio_recurrence(d, m, +1.0)};
}

std::vector<double> apply_seasonal(std::span<const double> series, int season_count, double d, FilterKind kind) {
  if (season_count < 1) throw std::invalid_argument("apply_seasonal: season count must be >= 1");
  if (series.empty()) throw std::invalid_argument("apply_seasonal: empty series");
  const std::size_t m = (series.size() - 1) / static_cast<std::size_t>(season_count);
  const FracCoeffs fc = kind == FilterKind::Difference ? pi_coeffs(d, m) : psi_coeffs(d, m);
  std::vector<double> out(series.size());
  kernels::strided_causal_filter(series, fc.coeffs, season_count, out);
  return out;
}

}  // namespace perarfima
