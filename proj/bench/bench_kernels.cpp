// Wall-time comparison of the serial reference kernels against their OpenMP
// counterparts. Outputs agree bit-for-bit; only the timing differs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "perarfima/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int repeats) {
  const auto t0 = clock_type::now();
  for (int i = 0; i < repeats; ++i) f();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main() {
  using namespace perarfima;
  std::mt19937_64 eng(7);
  std::normal_distribution<double> normal;

  std::printf("threads: %d\n\n", kernels::thread_count());

  {
    const long n = 200000, m = 4000;
    std::vector<double> x(n), c(m), y(n), y2(n);
    for (double& v : x) v = normal(eng);
    for (long j = 0; j < m; ++j) c[j] = std::pow(j + 1.0, -0.6);
    const double ts = time_ms([&] { kernels::strided_causal_filter_serial(x, c, 1, y); }, 3);
    const double tp = time_ms([&] { kernels::strided_causal_filter_parallel(x, c, 1, y2); }, 3);
    bool same = true;
    for (long i = 0; i < n; ++i) same = same && y[i] == y2[i];
    std::printf("causal filter       n=%ld m=%ld   serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   %s\n", n, m,
                ts, tp, ts / tp, same ? "bit-identical" : "MISMATCH");
  }

  {
    const int S = 4;
    const long jcount = 100000, hmax = 25;
    std::vector<double> coef((jcount + hmax) * S * S), w(S, 1.0);
    std::vector<double> g1((hmax + 1) * S * S), g2((hmax + 1) * S * S);
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] = std::pow(i / (S * S) + 1.0, -0.55);
    const double ts = time_ms([&] { kernels::ma_cross_covariance_serial(coef, jcount, S, w, hmax, g1); }, 3);
    const double tp = time_ms([&] { kernels::ma_cross_covariance_parallel(coef, jcount, S, w, hmax, g2); }, 3);
    bool same = true;
    for (std::size_t i = 0; i < g1.size(); ++i) same = same && g1[i] == g2[i];
    std::printf("cross-covariance    M=%ld hmax=%ld  serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   %s\n",
                jcount, hmax, ts, tp, ts / tp, same ? "bit-identical" : "MISMATCH");
  }
  return 0;
}
