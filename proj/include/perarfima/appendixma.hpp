#pragma once

#include <cstddef>
#include <vector>

namespace perarfima {

// Moving-average coefficients Psi_j(t) of the unit-lag periodically
// fractionally differenced equation
//
//   y_t + sum_{j>=1} pi_j(-d_t) y_{t-j} = u_t,
//
// with d_t repeating with period S. psi[t-1][j] stores Psi_j(t) for seasons
// t = 1..S; the coefficients satisfy Psi_j(t) = Psi_j(t+S) by construction
// (d is indexed modulo S throughout, negative times included).
struct MaTable {
  int S = 1;
  std::vector<double> d;
  long jmax = 0;
  std::vector<std::vector<double>> psi;

  double at(int season, long j) const { return psi[season - 1][j]; }
};

// Triangular recursion
//   Psi_0(t) = 1,
//   Psi_h(t) = -( pi_h(-d_t) + sum_{j=1}^{h-1} pi_j(-d_t) Psi_{h-j}(t-j) ),
// cost O(S jmax^2). This is the production path.
MaTable ma_recursion(const std::vector<double>& d, long jmax);

struct CompositionSum {
  double value = 0.0;
  long composition_count = 0;
};

// Direct evaluation of Psi_j(t) as the signed sum over all 2^{j-1} ordered
// compositions (i_1, ..., i_k) of j:
//   sum_k (-1)^k sum_{i_1+...+i_k=j} pi_{i_1}(-d_t) pi_{i_2}(-d_{t-i_1}) ...
// Exponential cost, test/verification only; j is capped at 14.
CompositionSum ma_composition_sum(const std::vector<double>& d, long j, int season);

// Independent check: builds the lower-triangular autoregressive operator rows
// and reads Psi_j(t) off unit-impulse responses by forward substitution.
MaTable ma_oracle(const std::vector<double>& d, long jmax);

}  // namespace perarfima
