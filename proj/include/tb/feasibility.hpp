#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tb/bundle.hpp"
#include "tb/manifold.hpp"

namespace tb {

struct ConditionAudit {
  int m = 0;
  std::vector<std::pair<int, Int>> sign_values;  // (i, (-1)^i chi_i^(m)) for 2 <= i <= floor((n-m)/2)
  std::optional<std::pair<int, Int>> middle;     // (degree, chi^(m)) when n-m is even
  Int chi_n;
  bool ok = false;
};

struct FeasibilityReport {
  int k = 0;
  std::vector<ConditionAudit> per_m;
  bool verdict = false;    // all iterated-characteristic conditions hold
  bool stagewise = false;  // quotient profiles obtained one circle at a time are valid and verify
};

struct TowerStage {
  BettiProfile base;
  ConnectedSumExpr base_expr;
  IntVec euler;
  BettiProfile total;
  bool verified = false;
};

// Ordered from the quotient up to M.
struct Tower {
  std::vector<TowerStage> stages;
};

struct Cohom4Witness {
  FourManifoldSpec base;
  EulerMatrix E;
};

Int chi_iter(const BettiProfile& M, int m, int i);
FeasibilityReport free_torus_feasible(const BettiProfile& M, int k);

// Quotient of a free circle action with form (*) quotient, if one exists (non-spin quotient).
std::optional<BettiProfile> circle_quotient(const BettiProfile& P);

Tower quotient_tower(const BettiProfile& M, int k);
std::optional<Cohom4Witness> cohom4_classify(const BettiProfile& M);
bool cohom2_check(const BettiProfile& M);
int max_star_quotient_torus(const BettiProfile& M);

}  // namespace tb
