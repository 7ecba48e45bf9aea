#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tb/bundle.hpp"
#include "tb/manifold.hpp"

namespace tb {

struct RowParams {
  int p = 0, q = 0, r = 0, s = 0;
  int a = 0, b = 0;  // split of q for the rows that leave it free
};

struct SummandCount {
  Summand summand;
  int count = 0;
};

// One row of the dimension 7-10 circle-action table.
struct TableRow {
  std::string id;
  int n = 0;
  bool spin = true;
  std::string betti;      // Betti pattern of M in row parameters
  std::string condition;  // side conditions as printed
  std::string base;       // base template as printed
  bool has_choice = false;
  std::function<bool(const RowParams&)> applies;
  std::function<std::vector<SummandCount>(const RowParams&)> parts;
};

const std::vector<TableRow>& table1_rows();

// Row parameters (p, q, r, s) read off a profile of dimension 7-10.
RowParams row_params(const BettiProfile& M);
// Profile described by a row's header for the given parameters.
BettiProfile row_profile(const TableRow& row, const RowParams& x);
// Admissible (a, b) splits in tie-break order; a single default entry for rows without a choice.
std::vector<RowParams> row_choices(const TableRow& row, const RowParams& x);
ConnectedSumExpr row_base(const TableRow& row, const RowParams& x);

// Generator on CP^m and S^2-type summands, pullback generator on E, tautological class on P(E).
IntVec standard_euler(const ConnectedSumExpr& base);

struct CircleWitness {
  std::string source;  // "four_manifold", "quotient_tower" or "table_row"
  std::string row_id;
  std::optional<ConnectedSumExpr> base;
  std::optional<FourManifoldSpec> base4;
  IntVec euler;
  BettiProfile total;
  std::vector<std::string> notes;
};

std::optional<CircleWitness> table1_base(const BettiProfile& M);

struct RowInstance {
  const TableRow* row = nullptr;
  RowParams params;
  BettiProfile expected;
  ConnectedSumExpr base;
  IntVec euler;
};

// Every row instance with p, q, r, s <= bound satisfying the row's side conditions and describing a valid profile.
std::vector<RowInstance> enumerate_row_instances(int bound);

struct StabilizationInstance {
  int m = 0;
  int l = 0;
  ConnectedSumExpr base;
  IntVec euler;
  BettiProfile total;
};

struct StabilizationResult {
  int m0 = 0;
  bool twisted = false;
  std::string family;
  std::vector<StabilizationInstance> checked;  // m0 .. m0+3
};

// Base of the stabilization family with l copies of the middle projective space.
ConnectedSumExpr stabilization_base(const BettiProfile& M, int l, bool nonspin_target);
BettiProfile stabilization_target(const BettiProfile& M, int m, bool twisted);
std::optional<StabilizationInstance> stabilization_instance(const BettiProfile& M, int m, bool twisted);
StabilizationResult stabilization_m0(const BettiProfile& M, bool twisted);

}  // namespace tb
