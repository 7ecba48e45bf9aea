#pragma once

#include <doctest.h>

#include <random>

#include "tb/error.hpp"
#include "tb/manifold.hpp"

namespace tbtest {

using namespace tb;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline IntVec vec(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

inline IntMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVec> r;
  std::size_t cols = 0;
  for (auto row : rows) {
    r.push_back(vec(row));
    cols = row.size();
  }
  return IntMat::from_rows(r, cols);
}

inline BettiProfile profile(int n, std::initializer_list<long> lower, bool spin) {
  std::vector<Int> l;
  for (long x : lower) l.push_back(Int(x));
  return BettiProfile::from_lower(n, l, spin);
}

inline ConnectedSumExpr sum(int n, std::vector<Summand> parts) { return ConnectedSumExpr{n, std::move(parts)}; }

inline ConnectedSumExpr repeat(int n, const Summand& s, int count) { return ConnectedSumExpr{n, std::vector<Summand>(count, s)}; }

inline IntMat random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  IntMat a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform(rng, -bound, bound);
  return a;
}

// Product of random elementary operations applied to the identity.
inline IntMat random_unimodular(Rng& rng, std::size_t n, int steps) {
  IntMat u = IntMat::identity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 2));
    if (j >= i) ++j;
    u.add_row(i, j, Int(uniform(rng, -2, 2)));
  }
  return u;
}

// Random form (*) expression with dimension in [lo, hi] and at most max_parts summands.
inline ConnectedSumExpr random_star_expr(Rng& rng, int lo, int hi, int max_parts) {
  const int n = uniform(rng, lo, hi);
  ConnectedSumExpr e{n, {}};
  const int parts = uniform(rng, 1, max_parts);
  for (int p = 0; p < parts; ++p) {
    const int k = uniform(rng, 2, n / 2);
    if (k == 2 && uniform(rng, 0, 2) == 0) e.summands.push_back(Summand::twisted_s2(n));
    else e.summands.push_back(Summand::sphere_product(k, n - k));
  }
  return e;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace tbtest
