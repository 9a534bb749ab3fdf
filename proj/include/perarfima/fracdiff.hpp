#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace perarfima {

enum class FilterKind { Difference, Integration };

// Coefficient sequence of a fractional filter, index j = 0..M:
//   Difference:  (1-z)^d  ->  coeffs[j] = Gamma(j-d) / (Gamma(j+1) Gamma(-d))
//   Integration: (1-z)^-d ->  coeffs[j] = Gamma(j+d) / (Gamma(j+1) Gamma(d))
// Both are generated by one-term ratio recurrences, never by evaluating the
// Gamma function at nonpositive arguments.
struct FracCoeffs {
  double order = 0.0;
  FilterKind kind = FilterKind::Difference;
  std::vector<double> coeffs;

  std::size_t truncation() const { return coeffs.size() - 1; }
};

// Expansion of (1-z)^d: c_0 = 1, c_j = c_{j-1} (j-1-d)/j.
FracCoeffs pi_coeffs(double d, std::size_t m);

// Expansion of (1-z)^-d: c_0 = 1, c_j = c_{j-1} (j-1+d)/j.
FracCoeffs psi_coeffs(double d, std::size_t m);

// Truncated action of (1-L^S)^{+-d} using in-sample history only:
//   out[t] = sum_{j=0}^{floor(t/S)} c_j * series[t - S*j]
std::vector<double> apply_seasonal(std::span<const double> series, int season_count, double d, FilterKind kind);

}  // namespace perarfima
