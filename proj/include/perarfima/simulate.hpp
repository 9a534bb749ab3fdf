#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "perarfima/parmodel.hpp"

namespace perarfima {

// Standard-normal stream: mt19937_64 feeding the basic Box-Muller transform,
// two 53-bit uniforms per pair of variates. Fixed algorithm so a given seed
// reproduces the same sequence bit-for-bit within one implementation.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double operator()();

 private:
  double uniform01();

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// One simulated path, stored interleaved: values[t-1] belongs to season
// ((t-1) mod S) + 1, t = 1..T.
struct SeriesSample {
  std::vector<double> values;
  int S = 1;
  std::uint64_t seed = 0;
  ModelKind model = ModelKind::ModelA;
  long burnin = 0;
  long truncation = 0;

  int season_of(long t) const { return static_cast<int>((t - 1) % S) + 1; }
};

// Draws a length-T path of the given model.
//
// Innovations u_{s,tau} are independent N(0, sigma_s^2), generated season-
// within-block. The first `burnin` stacked blocks are generated and dropped.
// Fractional integration is the truncated moving average with at most
// `truncation`+1 terms, acting on the generated history only.
//
// Model B runs the autoregression first and integrates its output per
// season; model C integrates the innovations per season and then runs the
// autoregression. The two orders are intentionally kept as separate paths.
SeriesSample simulate(const PeriodicModelSpec& spec, long T, std::uint64_t seed, long burnin = 2000,
                      long truncation = 10000);

}  // namespace perarfima
