#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tb/lattice.hpp"

namespace tb {

// Declaration order is the canonical tag order used for sorting.
enum class SummandKind {
  TwistedS2,
  SphereProduct,
  ComplexProjective,
  CPSphereBundle,
  ProjBundleS2,
  Sphere,
};

struct Summand {
  SummandKind kind = SummandKind::Sphere;
  int k = 0;  // SphereProduct: first factor (k <= l)
  int l = 0;  // SphereProduct: second factor
  int m = 0;  // ComplexProjective / CPSphereBundle: complex dimension of the base
  int r = 0;  // CPSphereBundle: fiber sphere; ProjBundleS2: fiber CP^r
  bool twisted = false;  // CPSphereBundle: the non-spin member of the pair
  int n = 0;  // TwistedS2 / Sphere: dimension

  static Summand sphere_product(int k, int l);
  static Summand twisted_s2(int n);
  static Summand complex_projective(int m);
  static Summand cp_sphere_bundle(int m, int r, bool twisted);
  static Summand proj_bundle_s2(int r);
  static Summand sphere(int n);

  int dim() const;
  bool spin() const;
  bool form_star() const;
  // b_0..b_dim
  std::vector<Int> betti() const;
  std::size_t h2_rank() const;
  // w2 coordinates over this summand's degree-2 generators
  std::vector<int> w2() const;
  int first_degree() const;
  std::string name() const;

  auto sort_key() const { return std::tuple(first_degree(), static_cast<int>(kind), k, l, m, r, twisted, n); }
  friend bool operator==(const Summand&, const Summand&) = default;
};

struct ConnectedSumExpr {
  int dim = 0;
  std::vector<Summand> summands;

  std::string name() const;
  friend bool operator==(const ConnectedSumExpr&, const ConnectedSumExpr&) = default;
};

struct BettiProfile {
  int dim = 0;
  std::vector<Int> betti;  // b_0..b_dim
  bool spin = true;

  // Fills b_0, b_1 and the upper half by duality from b_2..b_{floor(dim/2)}.
  static BettiProfile from_lower(int dim, const std::vector<Int>& lower, bool spin);

  const Int& b(int i) const { return betti.at(static_cast<std::size_t>(i)); }
  Int euler_characteristic() const;
  std::string name() const;

  friend bool operator==(const BettiProfile&, const BettiProfile&) = default;
};

struct H2Generator {
  std::size_t summand = 0;
  int w2 = 0;
};

struct H2Basis {
  std::vector<H2Generator> generators;

  std::size_t size() const { return generators.size(); }
  IntVec w2() const;
};

void validate(const ConnectedSumExpr& expr);
bool is_form_star(const ConnectedSumExpr& expr);
// Shape checks valid for any closed simply-connected manifold profile.
void validate_profile(const BettiProfile& p);
// Adds the form (*) constraints: n >= 5, even middle Betti number, non-spin needs b_2 >= 1.
void validate_form_star(const BettiProfile& p);

BettiProfile betti_profile(const ConnectedSumExpr& expr);
ConnectedSumExpr from_betti(const BettiProfile& p);
ConnectedSumExpr canonicalize(const ConnectedSumExpr& expr);
bool is_diffeomorphic(const ConnectedSumExpr& a, const ConnectedSumExpr& b);
H2Basis h2_basis(const ConnectedSumExpr& expr);

// Summand indices in canonical order (stable).
std::vector<std::size_t> canonical_order(const ConnectedSumExpr& expr);
// Coordinates of e on each summand, in expression order.
std::vector<IntVec> restrictions(const ConnectedSumExpr& expr, const IntVec& e);

ConnectedSumExpr connected_sum(int dim, std::vector<ConnectedSumExpr> parts);

}  // namespace tb
