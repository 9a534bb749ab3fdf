#include "perarfima/parmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace perarfima {

namespace {
constexpr double kUnitRootTol = 1e-9;
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ModelA: return "A";
    case ModelKind::ModelB_Fivar: return "B";
    case ModelKind::ModelC_Varfi: return "C";
  }
  throw std::logic_error("unreachable model kind");
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "A") return ModelKind::ModelA;
  if (s == "B") return ModelKind::ModelB_Fivar;
  if (s == "C") return ModelKind::ModelC_Varfi;
  throw std::invalid_argument("unknown model kind '" + s + "' (expected A, B or C)");
}

void PeriodicModelSpec::validate() const {
  if (S < 1) throw std::invalid_argument("spec: S must be >= 1");
  if (p < 0) throw std::invalid_argument("spec: p must be >= 0");
  if (kind == ModelKind::ModelA && p != 0) throw std::invalid_argument("spec: model A requires p = 0");
  if (static_cast<int>(phi.size()) != S && !(p == 0 && phi.empty()))
    throw std::invalid_argument("spec: phi must have S rows");
  for (const auto& row : phi)
    if (static_cast<int>(row.size()) != p) throw std::invalid_argument("spec: each phi row must have p entries");
  if (static_cast<int>(D.size()) != S) throw std::invalid_argument("spec: D must have S entries");
  for (double d : D) {
    if (!(d >= 0.0 && d < 0.5)) throw std::invalid_argument("spec: D out of [0, 0.5)");
  }
  if (static_cast<int>(sigma2.size()) != S) throw std::invalid_argument("spec: sigma2 must have S entries");
  for (double v : sigma2)
    if (!(v > 0.0)) throw std::invalid_argument("spec: sigma2 entries must be > 0");
}

std::string to_json(const PeriodicModelSpec& spec) {
  nlohmann::json j;
  j["S"] = spec.S;
  j["p"] = spec.p;
  j["phi"] = spec.phi;
  j["D"] = spec.D;
  j["sigma2"] = spec.sigma2;
  j["kind"] = to_string(spec.kind);
  return j.dump(2);
}

PeriodicModelSpec spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec: invalid JSON: ") + e.what());
  }
  PeriodicModelSpec spec;
  try {
    spec.S = j.at("S").get<int>();
    spec.p = j.at("p").get<int>();
    spec.phi = j.value("phi", std::vector<std::vector<double>>{});
    spec.D = j.at("D").get<std::vector<double>>();
    spec.sigma2 = j.at("sigma2").get<std::vector<double>>();
    spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec: missing or mistyped field: ") + e.what());
  }
  if (spec.p == 0 && spec.phi.empty()) spec.phi.assign(spec.S, {});
  spec.validate();
  return spec;
}

PeriodicModelSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("spec: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return spec_from_json(ss.str());
}

Matrix CompanionForm::at_unity() const {
  Matrix m = phi0;
  for (const Matrix& pi : phi) m -= pi;
  return m;
}

CompanionForm build_companion(const PeriodicModelSpec& spec) {
  spec.validate();
  const int S = spec.S;
  const int p = spec.p;
  // ceil((p+1)/S); trailing all-zero lag matrices are kept.
  const int P = (p + 1 + S - 1) / S;

  auto coeff = [&](int season, int lag) -> double {
    if (lag < 1 || lag > p) return 0.0;
    return spec.phi[season - 1][lag - 1];
  };

  CompanionForm c;
  c.S = S;
  c.P = P;
  c.phi0 = Matrix(S, S);
  for (int s = 1; s <= S; ++s) {
    for (int j = 1; j <= S; ++j) {
      if (s == j)
        c.phi0(s - 1, j - 1) = 1.0;
      else if (s > j)
        c.phi0(s - 1, j - 1) = -coeff(s, s - j);
    }
  }
  c.phi.assign(P, Matrix(S, S));
  for (int i = 1; i <= P; ++i)
    for (int s = 1; s <= S; ++s)
      for (int j = 1; j <= S; ++j) c.phi[i - 1](s - 1, j - 1) = coeff(s, i * S + s - j);
  return c;
}

std::vector<double> stationarity_roots(const CompanionForm& c) {
  const int S = c.S;
  const int P = c.P;
  const int n = S * P;
  Matrix block(n, n);
  for (int i = 1; i <= P; ++i) {
    const Matrix a = solve(c.phi0, c.phi[i - 1]);
    for (int r = 0; r < S; ++r)
      for (int col = 0; col < S; ++col) block(r, (i - 1) * S + col) = a(r, col);
  }
  for (int i = S; i < n; ++i) block(i, i - S) = 1.0;

  const auto ev = eigenvalues(block);
  std::vector<double> moduli(ev.size());
  std::transform(ev.begin(), ev.end(), moduli.begin(), [](const std::complex<double>& z) { return std::abs(z); });
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli;
}

bool is_stationary(const CompanionForm& c) {
  const auto moduli = stationarity_roots(c);
  return moduli.empty() || moduli.front() < 1.0 - kUnitRootTol;
}

Matrix PiSequence::partial_sum() const {
  Matrix total = matrices.front();
  for (std::size_t j = 1; j < matrices.size(); ++j) total += matrices[j];
  return total;
}

namespace {

PiSequence pi_run(const CompanionForm& c, std::size_t count, bool adaptive, double tol, std::size_t cap) {
  if (!is_stationary(c)) throw std::domain_error("pi_sequence: companion form is not stationary");
  const int S = c.S;
  const int P = c.P;
  PiSequence seq;
  seq.matrices.reserve(adaptive ? 64 : count + 1);
  seq.matrices.push_back(solve(c.phi0, Matrix::identity(S)));
  const double scale = std::max(seq.matrices[0].max_abs(), 1.0);

  std::size_t small_streak = 0;
  for (std::size_t j = 1;; ++j) {
    if (!adaptive && j > count) break;
    if (adaptive && j > cap) break;
    Matrix rhs(S, S);
    for (int i = 1; i <= std::min<int>(static_cast<int>(j), P); ++i) rhs += c.phi[i - 1] * seq.matrices[j - i];
    seq.matrices.push_back(solve(c.phi0, rhs));
    if (adaptive) {
      if (seq.matrices.back().max_abs() < tol * scale) {
        if (++small_streak >= static_cast<std::size_t>(P)) break;
      } else {
        small_streak = 0;
      }
    }
  }
  return seq;
}

}  // namespace

PiSequence pi_sequence(const CompanionForm& c, std::size_t count) { return pi_run(c, count, false, 0.0, 0); }

PiSequence pi_sequence_adaptive(const CompanionForm& c, double tol, std::size_t cap) {
  return pi_run(c, 0, true, tol, cap);
}

Matrix pi_total(const CompanionForm& c) {
  try {
    return solve(c.at_unity(), Matrix::identity(c.S));
  } catch (const std::domain_error&) {
    throw std::domain_error("pi_total: Phi(1) is singular (nonstationary at unity)");
  }
}

}  // namespace perarfima
