#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "perarfima/linalg.hpp"

namespace perarfima {

enum class ModelKind { ModelA, ModelB_Fivar, ModelC_Varfi };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

// Full parameterization of the three model classes. Seasons are 1-based in
// the file format and the docs; phi[s][i] is stored 0-based as
// phi[s-1][i-1] = coefficient of season s on lag i.
//
// ModelA applies the seasonal fractional filter alone (p must be 0).
// ModelB_Fivar applies the periodic AR filter after seasonal fractional
// differencing; ModelC_Varfi drives the periodic AR filter with seasonally
// fractionally integrated innovations.
struct PeriodicModelSpec {
  int S = 1;
  int p = 0;
  std::vector<std::vector<double>> phi;  // S rows, p columns
  std::vector<double> D;                 // size S, each in [0, 0.5)
  std::vector<double> sigma2;            // size S, positive
  ModelKind kind = ModelKind::ModelA;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

std::string to_json(const PeriodicModelSpec& spec);
PeriodicModelSpec spec_from_json(const std::string& text);
PeriodicModelSpec load_spec(const std::string& path);

// S-variate stacked representation: Phi0 is unit lower triangular, Phi[i-1]
// holds the lag-i matrix, i = 1..P with P = ceil((p+1)/S).
struct CompanionForm {
  int S = 1;
  int P = 1;
  Matrix phi0;
  std::vector<Matrix> phi;

  // Phi(1) = Phi0 - sum_i Phi_i
  Matrix at_unity() const;
};

CompanionForm build_companion(const PeriodicModelSpec& spec);

// Moduli of the roots of det(I z^P - sum_i Phi0^{-1} Phi_i z^{P-i}) = 0,
// via the eigenvalues of the block companion matrix; sorted descending.
// The stacked model is periodically stationary iff all moduli < 1 (and all
// D_s < 0.5, which the spec validation enforces).
std::vector<double> stationarity_roots(const CompanionForm& c);

bool is_stationary(const CompanionForm& c);

// Coefficients of [Phi(L)]^{-1}.
struct PiSequence {
  std::vector<Matrix> matrices;  // Pi_0 .. Pi_J

  Matrix partial_sum() const;
};

// Pi_0 = Phi0^{-1}; Pi_j = Phi0^{-1} sum_{i<=min(j,P)} Phi_i Pi_{j-i}.
// Rejects companions whose roots are not inside the unit circle.
PiSequence pi_sequence(const CompanionForm& c, std::size_t count);

// Adaptive variant: stops once P consecutive blocks fall below
// tol * max_abs(Pi_0), never exceeding the hard cap.
PiSequence pi_sequence_adaptive(const CompanionForm& c, double tol = 1e-16, std::size_t cap = 20000);

// Pi = [Phi(1)]^{-1} by direct solve; singular Phi(1) is reported as
// nonstationarity at unity.
Matrix pi_total(const CompanionForm& c);

}  // namespace perarfima
