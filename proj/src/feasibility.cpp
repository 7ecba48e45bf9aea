#include "tb/feasibility.hpp"

#include "tb/error.hpp"

namespace tb {

namespace {

std::vector<Int> chi_table(const BettiProfile& M, int m) {
  std::vector<Int> c(M.betti.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (i % 2 == 0) ? M.betti[i] : Int(-M.betti[i]);
  for (int step = 0; step < m; ++step)
    for (std::size_t i = 1; i < c.size(); ++i) c[i] += c[i - 1];
  return c;
}

Int sign(int i, const Int& x) { return i % 2 == 0 ? x : Int(-x); }

IntVec unit(std::size_t size, std::size_t at) {
  IntVec v(size, 0);
  v[at] = 1;
  return v;
}

}  // namespace

Int chi_iter(const BettiProfile& M, int m, int i) {
  validate_profile(M);
  if (m < 0 || i < 0 || i > M.dim)
    throw Error(ErrorCode::OutOfRange, "chi_iter requires m >= 0 and 0 <= i <= n",
                {{"m", std::to_string(m)}, {"i", std::to_string(i)}});
  return chi_table(M, m)[static_cast<std::size_t>(i)];
}

std::optional<BettiProfile> circle_quotient(const BettiProfile& P) {
  validate_form_star(P);
  const int N = P.dim - 1;
  if (N < 5) return std::nullopt;
  const std::vector<Int> c = chi_table(P, 1);
  std::vector<Int> lower;
  for (int i = 2; i <= N / 2; ++i) {
    const Int b = sign(i, c[static_cast<std::size_t>(i)]);
    if (b < 0) return std::nullopt;
    lower.push_back(b);
  }
  if (lower.empty() || lower.front() < 1) return std::nullopt;
  if (N % 2 == 0 && mpz_odd_p(lower.back().get_mpz_t())) return std::nullopt;
  BettiProfile B = BettiProfile::from_lower(N, lower, false);
  if (circle_step(B, P.spin) != P) return std::nullopt;
  return B;
}

FeasibilityReport free_torus_feasible(const BettiProfile& M, int k) {
  validate_form_star(M);
  const int n = M.dim;
  if (k < 1 || k > n - 5)
    throw Error(ErrorCode::OutOfRange, "torus rank must satisfy 1 <= k <= n-5",
                {{"k", std::to_string(k)}, {"n", std::to_string(n)}});
  FeasibilityReport rep;
  rep.k = k;
  rep.verdict = true;
  for (int m = 1; m <= k; ++m) {
    const std::vector<Int> c = chi_table(M, m);
    ConditionAudit a;
    a.m = m;
    a.ok = true;
    for (int i = 2; i <= (n - m) / 2; ++i) {
      a.sign_values.emplace_back(i, sign(i, c[static_cast<std::size_t>(i)]));
      if (a.sign_values.back().second < 0) a.ok = false;
    }
    if ((n - m) % 2 == 0) {
      const int d = (n - m) / 2;
      a.middle = std::make_pair(d, c[static_cast<std::size_t>(d)]);
      if (mpz_odd_p(a.middle->second.get_mpz_t())) a.ok = false;
    }
    a.chi_n = c[static_cast<std::size_t>(n)];
    if (a.chi_n != 0) a.ok = false;
    rep.verdict = rep.verdict && a.ok;
    rep.per_m.push_back(std::move(a));
  }
  rep.stagewise = true;
  BettiProfile cur = M;
  for (int m = 1; m <= k && rep.stagewise; ++m) {
    std::optional<BettiProfile> q = circle_quotient(cur);
    if (!q) rep.stagewise = false;
    else cur = *q;
  }
  return rep;
}

Tower quotient_tower(const BettiProfile& M, int k) {
  const FeasibilityReport rep = free_torus_feasible(M, k);
  if (!rep.verdict)
    throw Error(ErrorCode::Infeasible, "iterated Euler characteristic conditions fail",
                {{"profile", M.name()}, {"k", std::to_string(k)}});
  std::vector<TowerStage> down;
  BettiProfile cur = M;
  for (int m = 1; m <= k; ++m) {
    std::optional<BettiProfile> q = circle_quotient(cur);
    if (!q)
      throw Error(ErrorCode::Infeasible, "no valid form (*) quotient at this stage",
                  {{"profile", M.name()}, {"stage", std::to_string(m)}, {"stage_total", cur.name()}});
    TowerStage st;
    st.base = *q;
    st.base_expr = from_betti(st.base);
    const std::size_t b2 = h2_basis(st.base_expr).size();
    st.euler = cur.spin ? unit(b2, 0) : unit(b2, 1);
    st.total = cur;
    st.verified = circle_bundle(st.base_expr, st.euler) == cur;
    if (!st.verified)
      throw Error(ErrorCode::InvariantViolation, "tower stage fails forward verification",
                  {{"base", st.base.name()}, {"total", cur.name()}});
    cur = st.base;
    down.push_back(std::move(st));
  }
  return Tower{std::vector<TowerStage>(down.rbegin(), down.rend())};
}

std::optional<Cohom4Witness> cohom4_classify(const BettiProfile& M) {
  validate_form_star(M);
  const int n = M.dim;
  const int k = n - 4;
  for (int i = 2; i <= n - 2; ++i)
    if (M.b(i) != a_ki(k, i, M.b(2))) return std::nullopt;
  if (!M.b(2).fits_ulong_p()) throw Error(ErrorCode::OutOfRange, "b_2 too large");
  const std::size_t b2 = M.b(2).get_ui() + static_cast<std::size_t>(k);
  Cohom4Witness w;
  w.base = FourManifoldSpec{b2, IntVec(b2, 1)};
  std::vector<IntVec> rows;
  rows.push_back(M.spin ? IntVec(b2, 1) : unit(b2, 0));
  for (int j = 1; j < k; ++j) rows.push_back(unit(b2, static_cast<std::size_t>(j)));
  w.E = IntMat::from_rows(rows, b2);
  if (torus_bundle_over_4(w.base, w.E) != M)
    throw Error(ErrorCode::InvariantViolation, "cohomogeneity-four witness fails to round-trip", {{"profile", M.name()}});
  return w;
}

bool cohom2_check(const BettiProfile& M) {
  if (M.dim < 6) throw Error(ErrorCode::OutOfRange, "cohomogeneity-two check requires n >= 6");
  return cohom4_classify(M).has_value();
}

int max_star_quotient_torus(const BettiProfile& M) {
  validate_form_star(M);
  if (cohom4_classify(M)) return M.dim - 4;
  for (int k = M.dim - 5; k >= 1; --k) {
    const FeasibilityReport rep = free_torus_feasible(M, k);
    if (rep.verdict && rep.stagewise) return k;
  }
  return 0;
}

}  // namespace tb
