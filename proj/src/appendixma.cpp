#include "perarfima/appendixma.hpp"

#include <stdexcept>

#include "perarfima/fracdiff.hpp"

namespace perarfima {

namespace {

int wrap_season(long t, int S) { return static_cast<int>(((t % S) + S) % S); }

std::vector<std::vector<double>> pi_tables(const std::vector<double>& d, long jmax) {
  std::vector<std::vector<double>> pi(d.size());
  for (std::size_t s = 0; s < d.size(); ++s) pi[s] = pi_coeffs(d[s], static_cast<std::size_t>(jmax)).coeffs;
  return pi;
}

void check_d(const std::vector<double>& d) {
  if (d.empty()) throw std::invalid_argument("appendix ma: d must have at least one entry");
}

}  // namespace

MaTable ma_recursion(const std::vector<double>& d, long jmax) {
  check_d(d);
  if (jmax < 0) throw std::invalid_argument("ma_recursion: jmax must be >= 0");
  const int S = static_cast<int>(d.size());
  const auto pi = pi_tables(d, jmax);

  MaTable table;
  table.S = S;
  table.d = d;
  table.jmax = jmax;
  table.psi.assign(S, std::vector<double>(jmax + 1, 0.0));
  for (int t = 0; t < S; ++t) table.psi[t][0] = 1.0;

  for (long h = 1; h <= jmax; ++h) {
    for (int t = 0; t < S; ++t) {
      double beta = pi[t][h];
      for (long j = 1; j < h; ++j) beta += pi[t][j] * table.psi[wrap_season(t - j, S)][h - j];
      table.psi[t][h] = -beta;
    }
  }
  return table;
}

CompositionSum ma_composition_sum(const std::vector<double>& d, long j, int season) {
  check_d(d);
  const int S = static_cast<int>(d.size());
  if (season < 1 || season > S) throw std::invalid_argument("ma_composition_sum: season out of range");
  if (j < 1) throw std::invalid_argument("ma_composition_sum: j must be >= 1");
  if (j > 14) throw std::invalid_argument("ma_composition_sum: j too large (2^{j-1} terms)");
  const auto pi = pi_tables(d, j);
  const int t0 = season - 1;

  // Compositions of j are in bijection with subsets of the j-1 interior cut
  // points; bit b set means a part boundary after position b+1.
  CompositionSum out;
  const long masks = 1L << (j - 1);
  for (long mask = 0; mask < masks; ++mask) {
    double prod = 1.0;
    int k = 0;
    long part_start = 0;
    long consumed = 0;
    for (long pos = 0; pos < j; ++pos) {
      const bool cut = pos == j - 1 || (mask >> pos) & 1;
      if (!cut) continue;
      const long part = pos + 1 - part_start;
      prod *= pi[wrap_season(t0 - consumed, S)][part];
      consumed += part;
      part_start = pos + 1;
      ++k;
    }
    out.value += (k % 2 == 0 ? 1.0 : -1.0) * prod;
    ++out.composition_count;
  }
  return out;
}

MaTable ma_oracle(const std::vector<double>& d, long jmax) {
  check_d(d);
  if (jmax < 0) throw std::invalid_argument("ma_oracle: jmax must be >= 0");
  const int S = static_cast<int>(d.size());
  const auto pi = pi_tables(d, jmax);

  MaTable table;
  table.S = S;
  table.d = d;
  table.jmax = jmax;
  table.psi.assign(S, std::vector<double>(jmax + 1, 0.0));

  // Unit impulse at calendar time a; forward substitution through the
  // operator rows gives the responses y_{a+m} = Psi_m(a+m).
  std::vector<double> y(jmax + 1);
  for (int a = 0; a < S; ++a) {
    y[0] = 1.0;
    for (long m = 1; m <= jmax; ++m) {
      const int t = wrap_season(a + m, S);
      double acc = 0.0;
      for (long j = 1; j <= m; ++j) acc += pi[t][j] * y[m - j];
      y[m] = -acc;
    }
    for (long m = 0; m <= jmax; ++m) table.psi[wrap_season(a + m, S)][m] = y[m];
  }
  return table;
}

}  // namespace perarfima
