#include "perarfima/acvf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "perarfima/fracdiff.hpp"
#include "perarfima/kernels.hpp"

namespace perarfima {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

LagDecomposition decompose_lag(long j, int season, int S) {
  if (j <= 0) throw std::invalid_argument("decompose_lag: lag must be > 0");
  if (S < 1 || season < 1 || season > S) throw std::invalid_argument("decompose_lag: season out of range");
  LagDecomposition d;
  d.lag = j;
  d.season = season;
  d.block_lag = j / S;
  d.offset = static_cast<int>(j % S);
  d.carry = (season + d.offset > S) ? 1 : 0;
  d.target_season = season + d.offset - S * d.carry;
  return d;
}

std::string to_string(PacvfMethod method) {
  switch (method) {
    case PacvfMethod::Exact: return "exact";
    case PacvfMethod::AsymptoticFivar: return "asymptotic-fivar";
    case PacvfMethod::AsymptoticVarfi: return "asymptotic-varfi";
    case PacvfMethod::Empirical: return "empirical";
  }
  throw std::logic_error("unreachable pacvf method");
}

namespace {

Pacvf make_grid(int S, long jmax, PacvfMethod method) {
  Pacvf p;
  p.S = S;
  p.jmax = jmax;
  p.method = method;
  p.gamma.assign(S, std::vector<double>(jmax + 1, 0.0));
  p.flags.assign(S, std::vector<std::uint8_t>(jmax + 1, kPacvfOk));
  return p;
}

// Tail of sum_{j>M} psi_j(a) psi_{j+h}(b) for fractional integration
// coefficients psi_j(d) = Gamma(j+d)/(Gamma(j+1) Gamma(d)), orders a, b in
// (0, 0.5). Midpoint Euler-Maclaurin on the integrand
//   x^{a+b-2} (1 + kappa/x) / (Gamma(a) Gamma(b)),
// kappa collecting the 1/x corrections of both coefficient asymptotes and of
// the lag shift h << M. Remaining error is O(M^{a+b-3}).
double psi_product_tail(double a, double b, long h, long m) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const double x0 = static_cast<double>(m) + 0.5;
  const double e = a + b - 2.0;
  const double kappa = (b - 1.0) * static_cast<double>(h) + 0.5 * a * (a - 1.0) + 0.5 * b * (b - 1.0);
  const double integral = std::pow(x0, e + 1.0) / (-(e + 1.0)) + kappa * std::pow(x0, e) / (-e);
  return integral / (std::tgamma(a) * std::tgamma(b));
}

struct StackedCovariances {
  int S = 0;
  long hmax = 0;
  std::vector<double> gamma;  // (hmax+1) row-major S x S blocks

  double at(long h, int row, int col) const { return gamma[(h * S + row) * S + col]; }
};

StackedCovariances stacked_ma_covariances(const PeriodicModelSpec& spec, long hmax, long trunc, TailMode tail) {
  const int S = spec.S;
  const CompanionForm companion = build_companion(spec);
  if (!is_stationary(companion)) throw std::invalid_argument("exact_pacvf: spec is not periodically stationary");
  const PiSequence pis = pi_sequence_adaptive(companion);
  const long npi = static_cast<long>(pis.matrices.size());

  const long nblocks = trunc + hmax + 1;
  std::vector<std::vector<double>> psi(S);
  for (int s = 0; s < S; ++s) psi[s] = psi_coeffs(spec.D[s], static_cast<std::size_t>(nblocks - 1)).coeffs;

  // Coefficient blocks of the stacked moving average. The autoregressive
  // inverse decays geometrically, so each block only mixes the last npi
  // fractional coefficients.
  const bool varfi = spec.kind == ModelKind::ModelC_Varfi;
  std::vector<double> coef(static_cast<std::size_t>(nblocks) * S * S, 0.0);
  for (long j = 0; j < nblocks; ++j) {
    double* block = coef.data() + static_cast<std::size_t>(j) * S * S;
    for (long mlag = 0; mlag <= std::min<long>(j, npi - 1); ++mlag) {
      const Matrix& pim = pis.matrices[mlag];
      const long k = j - mlag;
      for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b) block[a * S + b] += varfi ? pim(a, b) * psi[b][k] : psi[a][k] * pim(a, b);
    }
  }

  StackedCovariances cov;
  cov.S = S;
  cov.hmax = hmax;
  cov.gamma.assign(static_cast<std::size_t>(hmax + 1) * S * S, 0.0);
  kernels::ma_cross_covariance(coef, trunc + 1, S, spec.sigma2, hmax, cov.gamma);

  if (tail == TailMode::Extrapolate) {
    const Matrix pi = pi_total(companion);
    for (long h = 0; h <= hmax; ++h) {
      double* block = cov.gamma.data() + static_cast<std::size_t>(h) * S * S;
      for (int a = 0; a < S; ++a) {
        for (int b = 0; b < S; ++b) {
          double t = 0.0;
          if (varfi) {
            for (int c = 0; c < S; ++c)
              t += pi(a, c) * spec.sigma2[c] * pi(b, c) * psi_product_tail(spec.D[c], spec.D[c], h, trunc);
          } else {
            double amp = 0.0;
            for (int c = 0; c < S; ++c) amp += pi(a, c) * spec.sigma2[c] * pi(b, c);
            t = amp * psi_product_tail(spec.D[a], spec.D[b], h, trunc);
          }
          block[a * S + b] += t;
        }
      }
    }
  }
  return cov;
}

}  // namespace

Pacvf exact_pacvf(const PeriodicModelSpec& spec, long jmax, long truncation, TailMode tail) {
  spec.validate();
  if (jmax < 0) throw std::invalid_argument("exact_pacvf: jmax must be >= 0");
  if (truncation < 1) throw std::invalid_argument("exact_pacvf: truncation must be >= 1");
  const int S = spec.S;
  const long hmax = jmax / S + 1;
  const StackedCovariances cov = stacked_ma_covariances(spec, hmax, truncation, tail);

  Pacvf grid = make_grid(S, jmax, PacvfMethod::Exact);
  for (int s = 1; s <= S; ++s) {
    grid.gamma[s - 1][0] = cov.at(0, s - 1, s - 1);
    for (long j = 1; j <= jmax; ++j) {
      const LagDecomposition d = decompose_lag(j, s, S);
      grid.gamma[s - 1][j] = cov.at(d.block_lag + d.carry, s - 1, d.target_season - 1);
    }
  }
  std::ostringstream meta;
  meta << "exact M=" << truncation << " tail=" << (tail == TailMode::Extrapolate ? "extrapolate" : "none");
  grid.meta = meta.str();
  return grid;
}

namespace {

Pacvf asymptotic_grid(const PeriodicModelSpec& spec, long jmax, bool varfi) {
  spec.validate();
  if (jmax < 0) throw std::invalid_argument("asymptotic_pacvf: jmax must be >= 0");
  const int S = spec.S;
  const Matrix pi = pi_total(build_companion(spec));

  const double dmax = *std::max_element(spec.D.begin(), spec.D.end());
  std::vector<int> f1;
  for (int i = 0; i < S; ++i)
    if (spec.D[i] == dmax) f1.push_back(i);

  Pacvf grid = make_grid(S, jmax, varfi ? PacvfMethod::AsymptoticVarfi : PacvfMethod::AsymptoticFivar);
  for (int s = 1; s <= S; ++s) {
    grid.gamma[s - 1][0] = kNan;
    grid.flags[s - 1][0] = kPacvfUndefined;
    for (long j = 1; j <= jmax; ++j) {
      const LagDecomposition d = decompose_lag(j, s, S);
      const long hd = d.block_lag + d.carry;
      if (hd == 0) {
        grid.gamma[s - 1][j] = kNan;
        grid.flags[s - 1][j] = kPacvfUndefined;
        continue;
      }
      const int t = d.target_season;
      double rate_order, prefactor, amplitude;
      if (varfi) {
        rate_order = 2.0 * dmax - 1.0;
        if (dmax == 0.0) {
          grid.gamma[s - 1][j] = 0.0;
          grid.flags[s - 1][j] = kPacvfStructuralZero;
          continue;
        }
        prefactor = std::tgamma(1.0 - 2.0 * dmax) / (std::tgamma(dmax) * std::tgamma(1.0 - dmax));
        amplitude = 0.0;
        for (int i : f1) amplitude += pi(s - 1, i) * pi(t - 1, i) * spec.sigma2[i];
      } else {
        const double ds = spec.D[s - 1];
        const double dt = spec.D[t - 1];
        rate_order = ds + dt - 1.0;
        if (dt == 0.0) {
          grid.gamma[s - 1][j] = 0.0;
          grid.flags[s - 1][j] = kPacvfStructuralZero;
          continue;
        }
        prefactor = std::tgamma(1.0 - ds - dt) / (std::tgamma(dt) * std::tgamma(1.0 - dt));
        amplitude = 0.0;
        for (int c = 0; c < S; ++c) amplitude += pi(s - 1, c) * spec.sigma2[c] * pi(t - 1, c);
      }
      grid.gamma[s - 1][j] = std::pow(static_cast<double>(hd), rate_order) * prefactor * amplitude;
    }
  }
  grid.meta = varfi ? "asymptotic varfi" : "asymptotic fivar";
  return grid;
}

}  // namespace

Pacvf asymptotic_pacvf_fivar(const PeriodicModelSpec& spec, long jmax) { return asymptotic_grid(spec, jmax, false); }

Pacvf asymptotic_pacvf_varfi(const PeriodicModelSpec& spec, long jmax) { return asymptotic_grid(spec, jmax, true); }

Pacvf empirical_pacvf(const SeriesSample& sample, long jmax) {
  const int S = sample.S;
  const long T = static_cast<long>(sample.values.size());
  if (jmax < 0) throw std::invalid_argument("empirical_pacvf: jmax must be >= 0");
  if (T < S * (jmax / S + 2)) throw std::invalid_argument("empirical_pacvf: sample too short for requested jmax");

  std::vector<double> mean(S, 0.0);
  std::vector<long> count(S, 0);
  for (long t = 0; t < T; ++t) {
    mean[t % S] += sample.values[t];
    ++count[t % S];
  }
  for (int s = 0; s < S; ++s) mean[s] /= static_cast<double>(count[s]);

  Pacvf grid = make_grid(S, jmax, PacvfMethod::Empirical);
  for (int s = 0; s < S; ++s) {
    for (long j = 0; j <= jmax; ++j) {
      double acc = 0.0;
      long n = 0;
      for (long t = s; t + j < T; t += S) {
        acc += (sample.values[t] - mean[t % S]) * (sample.values[t + j] - mean[(t + j) % S]);
        ++n;
      }
      if (n == 0) throw std::invalid_argument("empirical_pacvf: no complete pairs at requested lag");
      grid.gamma[s][j] = acc / static_cast<double>(n);
    }
  }
  std::ostringstream meta;
  meta << "empirical T=" << T;
  grid.meta = meta.str();
  return grid;
}

EmpiricalSummary replicated_empirical_pacvf(const PeriodicModelSpec& spec, long T, long jmax, std::uint64_t seed,
                                            int reps, long burnin, long truncation) {
  if (reps < 1) throw std::invalid_argument("replicated_empirical_pacvf: reps must be >= 1");
  std::vector<Pacvf> grids(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
#endif
  for (int r = 0; r < reps; ++r) {
    const SeriesSample sample = simulate(spec, T, seed + static_cast<std::uint64_t>(r), burnin, truncation);
    grids[r] = empirical_pacvf(sample, jmax);
  }

  EmpiricalSummary out;
  out.reps = reps;
  out.mean = make_grid(spec.S, jmax, PacvfMethod::Empirical);
  out.se.assign(spec.S, std::vector<double>(jmax + 1, 0.0));
  for (int s = 0; s < spec.S; ++s) {
    for (long j = 0; j <= jmax; ++j) {
      double m = 0.0;
      for (int r = 0; r < reps; ++r) m += grids[r].gamma[s][j];
      m /= reps;
      out.mean.gamma[s][j] = m;
      if (reps > 1) {
        double ss = 0.0;
        for (int r = 0; r < reps; ++r) {
          const double d = grids[r].gamma[s][j] - m;
          ss += d * d;
        }
        out.se[s][j] = std::sqrt(ss / (reps - 1)) / std::sqrt(static_cast<double>(reps));
      }
    }
  }
  std::ostringstream meta;
  meta << "empirical mean T=" << T << " reps=" << reps << " seed=" << seed;
  out.mean.meta = meta.str();
  return out;
}

Pacvf expected_empirical_pacvf(const PeriodicModelSpec& spec, long T, long jmax, long truncation) {
  spec.validate();
  if (jmax < 0) throw std::invalid_argument("expected_empirical_pacvf: jmax must be >= 0");
  const int S = spec.S;
  if (T < S * (jmax / S + 2)) throw std::invalid_argument("expected_empirical_pacvf: T too short for requested jmax");
  const long nmax = (T + S - 1) / S;
  const long hspan = nmax + jmax / S + 1;
  const StackedCovariances cov = stacked_ma_covariances(spec, hspan, truncation, TailMode::None);

  // signed-lag covariances per season pair, with prefix sums for O(1) window
  // averages: G(a,b,h) = Cov(x_a(tau), x_b(tau+h)), h in [-hspan, hspan]
  const long width = 2 * hspan + 1;
  std::vector<std::vector<double>> prefix(static_cast<std::size_t>(S) * S, std::vector<double>(width + 1, 0.0));
  auto g_signed = [&](int a, int b, long h) { return h >= 0 ? cov.at(h, a, b) : cov.at(-h, b, a); };
  for (int a = 0; a < S; ++a)
    for (int b = 0; b < S; ++b) {
      auto& p = prefix[static_cast<std::size_t>(a) * S + b];
      for (long i = 0; i < width; ++i) p[i + 1] = p[i] + g_signed(a, b, i - hspan);
    }
  auto window_sum = [&](int a, int b, long h1, long h2) {
    const auto& p = prefix[static_cast<std::size_t>(a) * S + b];
    return p[h2 + hspan + 1] - p[h1 + hspan];
  };

  std::vector<long> season_count(S);
  for (int a = 0; a < S; ++a) season_count[a] = (T - 1 - a) / S + 1;

  Pacvf grid = make_grid(S, jmax, PacvfMethod::Empirical);
  for (int a = 0; a < S; ++a) {
    const long na = season_count[a];
    for (long j = 0; j <= jmax; ++j) {
      const int b = static_cast<int>((a + j) % S);
      const long hb = (a + j) / S;
      const long nb = season_count[b];
      const long npair = (T - 1 - j - a) / S + 1;

      // E[x_a(tau) m_b] and E[m_a x_b(tau+hb)], summed over the paired taus
      double a_sum = 0.0, b_sum = 0.0;
      for (long tau = 0; tau < npair; ++tau) {
        a_sum += window_sum(a, b, -tau, nb - 1 - tau) / static_cast<double>(nb);
        b_sum += window_sum(a, b, tau + hb - (na - 1), tau + hb) / static_cast<double>(na);
      }
      // E[m_a m_b]
      double c_sum = 0.0;
      for (long h = -(na - 1); h <= nb - 1; ++h) {
        const long count = std::min(na - 1, nb - 1 - h) - std::max<long>(0, -h) + 1;
        if (count > 0) c_sum += static_cast<double>(count) * g_signed(a, b, h);
      }
      c_sum /= static_cast<double>(na) * static_cast<double>(nb);

      grid.gamma[a][j] = cov.at(hb, a, b) - (a_sum + b_sum) / static_cast<double>(npair) + c_sum;
    }
  }
  std::ostringstream meta;
  meta << "expected empirical T=" << T << " M=" << truncation;
  grid.meta = meta.str();
  return grid;
}

double decay_slope(const Pacvf& pacv, int season, int offset, long hmin, long hmax) {
  if (season < 1 || season > pacv.S) throw std::invalid_argument("decay_slope: season out of range");
  if (offset < 0 || offset >= pacv.S) throw std::invalid_argument("decay_slope: offset out of range");
  if (hmin < 0 || hmax <= hmin) throw std::invalid_argument("decay_slope: need hmin < hmax, hmin >= 0");
  if (static_cast<long>(pacv.S) * hmax + offset > pacv.jmax)
    throw std::invalid_argument("decay_slope: fit range exceeds the grid");
  if (static_cast<long>(pacv.S) * hmin + offset < 1) throw std::invalid_argument("decay_slope: range includes lag 0");

  const int carry = (season + offset > pacv.S) ? 1 : 0;
  std::vector<double> xs, ys;
  for (long h = hmin; h <= hmax; ++h) {
    const double g = pacv.at(season, pacv.S * h + offset);
    if (!(g > 0.0)) throw std::domain_error("decay_slope: nonpositive autocovariance in fit range");
    xs.push_back(std::log(static_cast<double>(h + carry)));
    ys.push_back(std::log(g));
  }
  const std::size_t n = xs.size();
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
  }
  return sxy / sxx;
}

Matrix fivar_amplitude_grid(const PeriodicModelSpec& spec) {
  spec.validate();
  const Matrix pi = pi_total(build_companion(spec));
  const int S = spec.S;
  Matrix g(S, S);
  for (int l = 0; l < S; ++l)
    for (int m = 0; m < S; ++m) {
      double acc = 0.0;
      for (int c = 0; c < S; ++c) acc += pi(l, c) * spec.sigma2[c] * pi(m, c);
      g(l, m) = acc;
    }
  return g;
}

Matrix varfi_amplitude_grid(const PeriodicModelSpec& spec) {
  spec.validate();
  const Matrix pi = pi_total(build_companion(spec));
  const int S = spec.S;
  const double dmax = *std::max_element(spec.D.begin(), spec.D.end());
  Matrix g(S, S);
  for (int l = 0; l < S; ++l)
    for (int m = 0; m < S; ++m) {
      double acc = 0.0;
      for (int i = 0; i < S; ++i)
        if (spec.D[i] == dmax) acc += pi(l, i) * pi(m, i) * spec.sigma2[i];
      g(l, m) = acc;
    }
  return g;
}

}  // namespace perarfima
