#include "perarfima/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "perarfima/fracdiff.hpp"
#include "perarfima/kernels.hpp"

namespace perarfima {

double GaussianRng::uniform01() {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::operator()() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

namespace {

using SeasonSeries = std::vector<std::vector<double>>;  // [season][block]

// Phi0 X_tau = sum_i Phi_i X_{tau-i} + driver_tau, zero presample, solved by
// forward substitution down the unit lower triangular Phi0.
SeasonSeries var_recursion(const CompanionForm& c, const SeasonSeries& driver, long nblocks) {
  const int S = c.S;
  const int P = c.P;
  SeasonSeries x(S, std::vector<double>(nblocks, 0.0));
  for (long tau = 0; tau < nblocks; ++tau) {
    for (int s = 0; s < S; ++s) {
      double rhs = driver[s][tau];
      for (int i = 1; i <= P; ++i) {
        if (tau - i < 0) break;
        const Matrix& phi = c.phi[i - 1];
        for (int col = 0; col < S; ++col) rhs += phi(s, col) * x[col][tau - i];
      }
      for (int col = 0; col < s; ++col) rhs -= c.phi0(s, col) * x[col][tau];
      x[s][tau] = rhs;
    }
  }
  return x;
}

// Per-season truncated fractional integration over the block index.
void integrate_seasons(SeasonSeries& x, const std::vector<double>& D, long truncation) {
  const long nblocks = static_cast<long>(x[0].size());
  const std::size_t m = static_cast<std::size_t>(std::min(nblocks - 1, truncation));
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (D[s] == 0.0) continue;
    const FracCoeffs fc = psi_coeffs(D[s], m);
    std::vector<double> out(nblocks);
    kernels::strided_causal_filter(x[s], fc.coeffs, 1, out);
    x[s] = std::move(out);
  }
}

}  // namespace

SeriesSample simulate(const PeriodicModelSpec& spec, long T, std::uint64_t seed, long burnin, long truncation) {
  spec.validate();
  if (T <= 0) throw std::invalid_argument("simulate: T must be >= 1");
  if (burnin < 0) throw std::invalid_argument("simulate: burnin must be >= 0");
  if (truncation < 1) throw std::invalid_argument("simulate: truncation must be >= 1");
  const CompanionForm companion = build_companion(spec);
  if (!is_stationary(companion)) throw std::invalid_argument("simulate: spec is not periodically stationary");

  const int S = spec.S;
  const long out_blocks = (T + S - 1) / S;
  const long nblocks = burnin + out_blocks;

  GaussianRng rng(seed);
  SeasonSeries u(S, std::vector<double>(nblocks));
  std::vector<double> sd(S);
  for (int s = 0; s < S; ++s) sd[s] = std::sqrt(spec.sigma2[s]);
  for (long tau = 0; tau < nblocks; ++tau)
    for (int s = 0; s < S; ++s) u[s][tau] = sd[s] * rng();

  SeasonSeries x;
  switch (spec.kind) {
    case ModelKind::ModelA:
    case ModelKind::ModelB_Fivar:
      x = var_recursion(companion, u, nblocks);
      integrate_seasons(x, spec.D, truncation);
      break;
    case ModelKind::ModelC_Varfi:
      integrate_seasons(u, spec.D, truncation);
      x = var_recursion(companion, u, nblocks);
      break;
  }

  SeriesSample sample;
  sample.S = S;
  sample.seed = seed;
  sample.model = spec.kind;
  sample.burnin = burnin;
  sample.truncation = truncation;
  sample.values.resize(T);
  for (long t = 0; t < T; ++t) sample.values[t] = x[t % S][burnin + t / S];
  return sample;
}

}  // namespace perarfima
