#pragma once

#include <cstddef>
#include <span>

namespace perarfima::kernels {

// Worker count for the parallel kernels: OpenMP's maximum, capped by the
// PERARFIMA_THREADS environment variable when set. 1 in serial builds.
int thread_count();

// y[i] = sum_{j=0}^{min(i/stride, c.size()-1)} c[j] * x[i - j*stride]
//
// The parallel variant splits the output index across threads; each output
// element is accumulated in the same order as the serial variant, so the two
// produce bit-identical results.
void strided_causal_filter_serial(std::span<const double> x, std::span<const double> c, long stride,
                                  std::span<double> y);
void strided_causal_filter_parallel(std::span<const double> x, std::span<const double> c, long stride,
                                    std::span<double> y);
void strided_causal_filter(std::span<const double> x, std::span<const double> c, long stride, std::span<double> y);

// Cross-covariance accumulation for a vector moving average with coefficient
// blocks coef[0..jcount+hmax-1] (row-major S x S each) and diagonal innovation
// variances w:
//
//   gamma[h] = sum_{j=0}^{jcount-1} coef[j] * diag(w) * coef[j+h]',  h = 0..hmax
//
// gamma must hold (hmax+1)*S*S doubles. The parallel variant distributes h;
// per-h accumulation order matches the serial variant exactly.
void ma_cross_covariance_serial(std::span<const double> coef, long jcount, int S, std::span<const double> w,
                                long hmax, std::span<double> gamma);
void ma_cross_covariance_parallel(std::span<const double> coef, long jcount, int S, std::span<const double> w,
                                  long hmax, std::span<double> gamma);
void ma_cross_covariance(std::span<const double> coef, long jcount, int S, std::span<const double> w, long hmax,
                         std::span<double> gamma);

}  // namespace perarfima::kernels
