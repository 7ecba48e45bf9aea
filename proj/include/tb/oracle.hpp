#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tb/manifold.hpp"

namespace tb {

struct InversionCandidate {
  BettiProfile base;              // dimension n-1, non-spin
  bool euler_matches_w2 = false;  // e = w2 mod 2 exactly when the target is spin
};

// Gysin sequence for a primitive class whose cup products vanish outside degrees 0 and N-2:
// b_i(P) = b_i + b_{i-1} - r_{i-2} - r_{i-1}, r_0 = r_{N-2} = 1. Input and output are full Betti vectors.
std::vector<Int> gysin_step(const std::vector<Int>& base_betti);

std::optional<InversionCandidate> invert_recurrence(const BettiProfile& P);

// b_0..b_{k+4} of a k-fold iterated circle bundle over a 4-manifold with b_2 = r + k.
std::vector<Int> aki_via_stages(int k, const Int& r);

// Closed-form iterated characteristic: sum_j C(i-j+m-1, m-1) (-1)^j b_j.
Int chi_direct(const std::vector<Int>& betti, int m, int i);

// Form (*) profiles of dimension n with sum of b_2..b_{floor(n/2)} at most bound, spin and non-spin.
std::vector<BettiProfile> enumerate_profiles(int n, int bound);

struct SweepReport {
  std::size_t cases = 0;
  std::vector<std::string> counterexamples;
};

// Feasibility against inversion, table coverage, vanishing Euler characteristic and duality for dimensions 5-10.
SweepReport exhaustive_row_sweep(int bound);

}  // namespace tb
