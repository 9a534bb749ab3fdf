#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perarfima/parmodel.hpp"
#include "perarfima/simulate.hpp"

namespace perarfima {

// Arithmetic mapping a univariate lag j > 0 of season s onto an entry of the
// stacked covariance matrices: j = block_lag*S + offset, with carry = 1 when
// season + offset spills past S (the boundary season + offset == S stays in
// the current block, carry = 0). The referenced matrix entry is
// (season, target_season) at block lag block_lag + carry.
struct LagDecomposition {
  long lag = 0;
  int season = 1;
  long block_lag = 0;
  int offset = 0;
  int carry = 0;
  int target_season = 1;
};

LagDecomposition decompose_lag(long j, int season, int S);

enum class PacvfMethod { Exact, AsymptoticFivar, AsymptoticVarfi, Empirical };

std::string to_string(PacvfMethod method);

// Entry annotations for the asymptotic grids.
enum : std::uint8_t {
  kPacvfOk = 0,
  kPacvfStructuralZero = 1,  // rate prefactor vanishes because the relevant D is 0
  kPacvfUndefined = 2,       // value stored as NaN (lag outside the formula's domain)
};

// Periodic autocovariance grid gamma[s-1][j], s = 1..S, j = 0..jmax.
struct Pacvf {
  int S = 1;
  long jmax = 0;
  PacvfMethod method = PacvfMethod::Exact;
  std::vector<std::vector<double>> gamma;
  std::vector<std::vector<std::uint8_t>> flags;
  std::string meta;

  double at(int season, long j) const { return gamma[season - 1][j]; }
};

enum class TailMode {
  None,         // plain truncation at M
  Extrapolate,  // add the analytic tail of the truncated moving-average sum
};

// Exact periodic autocovariances from the stacked moving-average
// representation, truncated at M coefficient blocks. With
// TailMode::Extrapolate the discarded tail is restored from the hyperbolic
// asymptote of the coefficients via an Euler-Maclaurin integral estimate,
// which is what theory tables want; TailMode::None matches the covariance of
// a simulated path whose integration used the same truncation.
Pacvf exact_pacvf(const PeriodicModelSpec& spec, long jmax, long truncation = 100000,
                  TailMode tail = TailMode::Extrapolate);

// Large-lag approximations. Entries whose block lag (plus carry) is zero lie
// outside the asymptotic regime and are stored as NaN with kPacvfUndefined.
Pacvf asymptotic_pacvf_fivar(const PeriodicModelSpec& spec, long jmax);
Pacvf asymptotic_pacvf_varfi(const PeriodicModelSpec& spec, long jmax);

// Per-season sample autocovariances with per-season demeaning and divisor
// equal to the number of summands.
Pacvf empirical_pacvf(const SeriesSample& sample, long jmax);

// Mean and Monte Carlo standard error of the empirical grid over `reps`
// independent replications (seeds seed, seed+1, ...). Replications run in
// parallel; the reduction order is fixed, so results do not depend on the
// thread count.
struct EmpiricalSummary {
  Pacvf mean;
  std::vector<std::vector<double>> se;  // same shape as mean.gamma
  int reps = 0;
};

EmpiricalSummary replicated_empirical_pacvf(const PeriodicModelSpec& spec, long T, long jmax, std::uint64_t seed,
                                            int reps, long burnin = 2000, long truncation = 10000);

// Exact finite-sample expectation of empirical_pacvf over length-T paths of
// the truncation-matched process (simulate with burnin >= truncation so every
// retained point is a full-length moving average). Per-season demeaning makes
// the estimator biased by O(N^{2D-1}) at desk-scale sample sizes, which for
// strong memory is far outside Monte Carlo bands; this grid is the correct
// reference when averaging replications.
Pacvf expected_empirical_pacvf(const PeriodicModelSpec& spec, long T, long jmax, long truncation);

// Least-squares slope of log gamma^(s)(S h + offset) against log(h + carry)
// over h = hmin..hmax. Throws std::domain_error when a value in the range is
// not positive.
double decay_slope(const Pacvf& pacv, int season, int offset, long hmin, long hmax);

// Amplitude factors of the two asymptotic forms, l, m = 1..S:
//   fivar: row_l(Pi) * diag(sigma2) * row_m(Pi)'
//   varfi: sum over seasons i attaining max D of Pi(l,i) Pi(m,i) sigma2_i
// (Ties in D are detected by exact equality of the stored values.)
Matrix fivar_amplitude_grid(const PeriodicModelSpec& spec);
Matrix varfi_amplitude_grid(const PeriodicModelSpec& spec);

}  // namespace perarfima
