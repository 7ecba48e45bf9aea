#include "tb/oracle.hpp"

#include <functional>

#include "tb/bundle.hpp"
#include "tb/catalog.hpp"
#include "tb/error.hpp"
#include "tb/feasibility.hpp"

namespace tb {

namespace {

Int get(const std::vector<Int>& v, int i) {
  if (i < 0 || i >= static_cast<int>(v.size())) return 0;
  return v[static_cast<std::size_t>(i)];
}

bool dual(const std::vector<Int>& b) {
  const std::size_t n = b.size() - 1;
  for (std::size_t i = 0; i <= n; ++i)
    if (b[i] != b[n - i] || b[i] < 0) return false;
  return true;
}

Int chi_of(const std::vector<Int>& b) {
  Int c = 0;
  for (std::size_t i = 0; i < b.size(); ++i) c += (i % 2 == 0) ? b[i] : Int(-b[i]);
  return c;
}

}  // namespace

std::vector<Int> gysin_step(const std::vector<Int>& base) {
  const int N = static_cast<int>(base.size()) - 1;
  auto rank = [&](int j) { return (j == 0 || j == N - 2) ? Int(1) : Int(0); };
  std::vector<Int> out(static_cast<std::size_t>(N + 2));
  for (int i = 0; i <= N + 1; ++i) {
    Int v = get(base, i) + get(base, i - 1);
    if (i - 2 >= 0) v -= rank(i - 2);
    if (i - 1 >= 0 && i - 1 <= N) v -= rank(i - 1);
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

std::optional<InversionCandidate> invert_recurrence(const BettiProfile& P) {
  const int n = P.dim;
  const int N = n - 1;
  if (N < 5) return std::nullopt;
  std::vector<Int> b(static_cast<std::size_t>(N + 1), 0);
  b[0] = b[static_cast<std::size_t>(N)] = 1;
  Int prev = P.b(2) + 1;
  b[2] = b[static_cast<std::size_t>(N - 2)] = prev;
  for (int i = 3; i <= N / 2; ++i) {
    prev = P.b(i) - prev;
    b[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(N - i)] = prev;
  }
  for (const Int& x : b)
    if (x < 0) return std::nullopt;
  if (N % 2 == 0 && mpz_odd_p(b[static_cast<std::size_t>(N / 2)].get_mpz_t())) return std::nullopt;
  if (gysin_step(b) != P.betti) return std::nullopt;
  InversionCandidate c;
  c.base.dim = N;
  c.base.betti = b;
  c.base.spin = false;
  c.euler_matches_w2 = P.spin;
  return c;
}

std::vector<Int> aki_via_stages(int k, const Int& r) {
  if (k < 1) throw Error(ErrorCode::OutOfRange, "stage iteration requires k >= 1");
  std::vector<Int> b{1, 0, r + k, 0, 1};
  for (int j = 0; j < k; ++j) b = gysin_step(b);
  return b;
}

Int chi_direct(const std::vector<Int>& betti, int m, int i) {
  if (m == 0) return (i % 2 == 0) ? get(betti, i) : Int(-get(betti, i));
  Int total = 0;
  for (int j = 0; j <= i; ++j) {
    Int c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(i - j + m - 1), static_cast<unsigned long>(m - 1));
    total += (j % 2 == 0 ? c : Int(-c)) * get(betti, j);
  }
  return total;
}

std::vector<BettiProfile> enumerate_profiles(int n, int bound) {
  std::vector<BettiProfile> out;
  const int h = n / 2;
  std::vector<Int> lower(static_cast<std::size_t>(h - 1), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == h - 1) {
      if (n % 2 == 0 && mpz_odd_p(lower.back().get_mpz_t())) return;
      out.push_back(BettiProfile::from_lower(n, lower, true));
      if (lower.front() >= 1) out.push_back(BettiProfile::from_lower(n, lower, false));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      lower[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, bound);
  return out;
}

SweepReport exhaustive_row_sweep(int bound) {
  if (bound < 0 || bound > 6) throw Error(ErrorCode::OutOfRange, "sweep bound must be between 0 and 6");
  SweepReport rep;
  auto fail = [&](const BettiProfile& M, const std::string& what) { rep.counterexamples.push_back(M.name() + ": " + what); };
  for (int n = 5; n <= 10; ++n) {
    for (const BettiProfile& M : enumerate_profiles(n, bound)) {
      ++rep.cases;
      if (n >= 6) {
        const bool feasible = free_torus_feasible(M, 1).verdict;
        const bool inverted = invert_recurrence(M).has_value();
        if (feasible != inverted) fail(M, "feasibility and inversion disagree");
      }
      const bool hyp = (n % 2 == 1 || M.euler_characteristic() == 0) && (n != 9 || chi_direct(M.betti, 1, 4) >= 0);
      try {
        const std::optional<CircleWitness> w = table1_base(M);
        if (hyp != w.has_value()) {
          fail(M, hyp ? "no witness although hypotheses hold" : "witness although hypotheses fail");
          continue;
        }
        if (!w) {
          if (n == 9 && free_torus_feasible(M, 1).verdict) fail(M, "absent but feasible");
          continue;
        }
        const BettiProfile got = w->base4 ? torus_bundle_over_4(*w->base4, IntMat::from_rows({w->euler}, w->euler.size()))
                                          : circle_bundle(*w->base, w->euler);
        if (got != M) fail(M, "witness does not reproduce the profile");
        if (chi_of(got.betti) != 0) fail(M, "witness total space has nonzero Euler characteristic");
        if (!dual(got.betti)) fail(M, "witness total space violates duality");
      } catch (const Error& e) {
        fail(M, std::string("error: ") + e.what());
      }
    }
  }
  return rep;
}

}  // namespace tb
