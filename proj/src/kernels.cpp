#include "perarfima/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perarfima::kernels {

int thread_count() {
#ifdef _OPENMP
  static const int cached = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("PERARFIMA_THREADS")) {
      const long cap = std::strtol(env, nullptr, 10);
      if (cap > 0) n = static_cast<int>(std::min<long>(n, cap));
    }
    return std::max(n, 1);
  }();
  return cached;
#else
  return 1;
#endif
}

namespace {

inline double filter_point(const double* x, const double* c, long nc, long stride, long i) {
  const long jmax = std::min(i / stride, nc - 1);
  double acc = 0.0;
  for (long j = 0; j <= jmax; ++j) acc += c[j] * x[i - j * stride];
  return acc;
}

}  // namespace

void strided_causal_filter_serial(std::span<const double> x, std::span<const double> c, long stride,
                                  std::span<double> y) {
  if (stride < 1) throw std::invalid_argument("filter: stride must be >= 1");
  if (y.size() != x.size()) throw std::invalid_argument("filter: output size mismatch");
  if (c.empty()) throw std::invalid_argument("filter: empty coefficient sequence");
  const long n = static_cast<long>(x.size());
  const long nc = static_cast<long>(c.size());
  for (long i = 0; i < n; ++i) y[i] = filter_point(x.data(), c.data(), nc, stride, i);
}

void strided_causal_filter_parallel(std::span<const double> x, std::span<const double> c, long stride,
                                    std::span<double> y) {
  if (stride < 1) throw std::invalid_argument("filter: stride must be >= 1");
  if (y.size() != x.size()) throw std::invalid_argument("filter: output size mismatch");
  if (c.empty()) throw std::invalid_argument("filter: empty coefficient sequence");
  const long n = static_cast<long>(x.size());
  const long nc = static_cast<long>(c.size());
  const double* xp = x.data();
  const double* cp = c.data();
  double* yp = y.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (long i = 0; i < n; ++i) yp[i] = filter_point(xp, cp, nc, stride, i);
}

void strided_causal_filter(std::span<const double> x, std::span<const double> c, long stride, std::span<double> y) {
  const long work = static_cast<long>(x.size()) * static_cast<long>(std::min(c.size(), x.size()));
  if (thread_count() > 1 && work > (1L << 16)) {
    strided_causal_filter_parallel(x, c, stride, y);
  } else {
    strided_causal_filter_serial(x, c, stride, y);
  }
}

namespace {

inline void accumulate_lag(const double* coef, long jcount, int S, const double* w, long h, double* g) {
  const long ss = static_cast<long>(S) * S;
  std::vector<double> wa(static_cast<std::size_t>(S));
  std::fill(g, g + ss, 0.0);
  for (long j = 0; j < jcount; ++j) {
    const double* A = coef + j * ss;
    const double* B = coef + (j + h) * ss;
    for (int a = 0; a < S; ++a) {
      const double* arow = A + static_cast<long>(a) * S;
      for (int c = 0; c < S; ++c) wa[c] = arow[c] * w[c];
      double* grow = g + static_cast<long>(a) * S;
      for (int b = 0; b < S; ++b) {
        const double* brow = B + static_cast<long>(b) * S;
        double acc = 0.0;
        for (int c = 0; c < S; ++c) acc += wa[c] * brow[c];
        grow[b] += acc;
      }
    }
  }
}

void check_cross_cov_args(std::span<const double> coef, long jcount, int S, std::span<const double> w, long hmax,
                          std::span<double> gamma) {
  if (S < 1 || jcount < 0 || hmax < 0) throw std::invalid_argument("cross-covariance: bad sizes");
  const long ss = static_cast<long>(S) * S;
  if (static_cast<long>(coef.size()) < (jcount + hmax) * ss)
    throw std::invalid_argument("cross-covariance: coefficient buffer too small");
  if (static_cast<long>(w.size()) != S) throw std::invalid_argument("cross-covariance: variance size mismatch");
  if (static_cast<long>(gamma.size()) != (hmax + 1) * ss)
    throw std::invalid_argument("cross-covariance: output size mismatch");
}

}  // namespace

void ma_cross_covariance_serial(std::span<const double> coef, long jcount, int S, std::span<const double> w,
                                long hmax, std::span<double> gamma) {
  check_cross_cov_args(coef, jcount, S, w, hmax, gamma);
  const long ss = static_cast<long>(S) * S;
  for (long h = 0; h <= hmax; ++h) accumulate_lag(coef.data(), jcount, S, w.data(), h, gamma.data() + h * ss);
}

void ma_cross_covariance_parallel(std::span<const double> coef, long jcount, int S, std::span<const double> w,
                                  long hmax, std::span<double> gamma) {
  check_cross_cov_args(coef, jcount, S, w, hmax, gamma);
  const long ss = static_cast<long>(S) * S;
  const double* cp = coef.data();
  const double* wp = w.data();
  double* gp = gamma.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (long h = 0; h <= hmax; ++h) accumulate_lag(cp, jcount, S, wp, h, gp + h * ss);
}

void ma_cross_covariance(std::span<const double> coef, long jcount, int S, std::span<const double> w, long hmax,
                         std::span<double> gamma) {
  const long work = jcount * (hmax + 1) * S * S;
  if (thread_count() > 1 && work > (1L << 18)) {
    ma_cross_covariance_parallel(coef, jcount, S, w, hmax, gamma);
  } else {
    ma_cross_covariance_serial(coef, jcount, S, w, hmax, gamma);
  }
}

}  // namespace perarfima::kernels
