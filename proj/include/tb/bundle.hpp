#pragma once

#include <optional>
#include <vector>

#include "tb/lattice.hpp"
#include "tb/manifold.hpp"

namespace tb {

using EulerMatrix = IntMat;

// Closed simply-connected 4-manifold with torsion-free H^2 of rank b2.
struct FourManifoldSpec {
  std::size_t b2 = 0;
  IntVec w2;

  friend bool operator==(const FourManifoldSpec&, const FourManifoldSpec&) = default;
};

struct BundleResult {
  BettiProfile total;
  std::vector<BettiProfile> stages;  // P_1 .. P_k
};

Int binomial(long n, long k);

// (i-2) C(k,i-1) + r C(k,i-2) + (2+k-i) C(k,i-3), for 2 <= i <= k+2.
Int a_ki(int k, int i, const Int& r);

// Total space of the circle bundle over a single summand with a knowledge-base Euler class.
// standalone marks a summand that is the whole base.
std::optional<ConnectedSumExpr> known_total_space(const Summand& s, const IntVec& restriction, bool standalone);

// Twisted suspension (twisted = true) or plain suspension of one summand.
ConnectedSumExpr suspend(const Summand& s, const IntVec& e, bool twisted);
// Applied summand by summand.
ConnectedSumExpr suspend(const ConnectedSumExpr& base, const IntVec& e, bool twisted);

// One step of the Betti recurrence for a primitive Euler class over a form (*) base.
BettiProfile circle_step(const BettiProfile& base, bool total_spin);

BettiProfile circle_bundle(const ConnectedSumExpr& base, const IntVec& e);

// P_1 # suspensions of the remaining summands, P_1 the first admissible summand in canonical order.
ConnectedSumExpr decomposition_path(const ConnectedSumExpr& base, const IntVec& e);

// Spin test phrased through divisibilities on S^2-type summands of a form (*) base.
bool divisibility_spin_clause(const ConnectedSumExpr& base, const IntVec& e);

// Applies a unimodular change of coordinates fixing w2 mod 2 so that some coordinate equals +-content(e).
IntVec normalize_euler(const IntVec& w2, const IntVec& e);

BundleResult torus_bundle(const ConnectedSumExpr& base, const EulerMatrix& E);
BettiProfile torus_bundle_over_4(const FourManifoldSpec& base, const EulerMatrix& E);

// Throws NotPrimitive with cokernel diagnostics unless e is primitive.
void require_primitive(const IntVec& e);
// Throws NotBasisExtending with cokernel diagnostics unless E extends to a basis.
void require_basis_extending(const EulerMatrix& E);

}  // namespace tb
