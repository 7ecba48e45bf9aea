#include "tb/acceptance.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tb/bundle.hpp"
#include "tb/catalog.hpp"
#include "tb/error.hpp"
#include "tb/feasibility.hpp"
#include "tb/oracle.hpp"

namespace tb {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string counts(std::size_t ok, std::size_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

// Fraction-free elimination; returns (rank, determinant when square).
std::pair<std::size_t, Int> bareiss(IntMat a) {
  const std::size_t n = a.rows(), m = a.cols();
  std::size_t rank = 0;
  Int prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c < m && rank < n; ++c) {
    std::size_t p = rank;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) continue;
    if (p != rank) {
      a.swap_rows(p, rank);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m; ++j) {
        Int v = a(i, j) * a(rank, c) - a(i, c) * a(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  Int det = 0;
  if (n == m && rank == n) det = sign * a(n - 1, n - 1);
  return {rank, det};
}

// Lower-triangular column Hermite form of a nonsingular square matrix.
IntMat column_hermite(IntMat h) {
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      std::size_t piv = n;
      for (std::size_t j = i; j < n; ++j)
        if (h(i, j) != 0 && (piv == n || abs(h(i, j)) < abs(h(i, piv)))) piv = j;
      h.swap_cols(i, piv);
      bool done = true;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (h(i, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, i).get_mpz_t());
        h.add_col(j, i, -q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, i) < 0)
      for (std::size_t r = 0; r < n; ++r) h(r, i) = -h(r, i);
  }
  return h;
}

void reduce_mod(IntVec& v, const IntMat& h) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), h(i, i).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t r = i; r < v.size(); ++r) v[r] -= q * h(r, i);
  }
}

// Histogram of element orders of Z^n / A Z^n by listing coset representatives.
std::map<long, long> order_histogram_lattice(const IntMat& a) {
  const IntMat h = column_hermite(a);
  const std::size_t n = h.rows();
  std::map<long, long> hist;
  IntVec x(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      long t = 1;
      for (;; ++t) {
        IntVec y(n);
        for (std::size_t j = 0; j < n; ++j) y[j] = x[j] * t;
        reduce_mod(y, h);
        if (std::all_of(y.begin(), y.end(), [](const Int& z) { return z == 0; })) break;
      }
      ++hist[t];
      return;
    }
    for (Int v = 0; v < h(i, i); ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return hist;
}

std::map<long, long> order_histogram_cyclic(const std::vector<Int>& torsion) {
  std::map<long, long> hist;
  std::vector<long> d;
  for (const Int& t : torsion) d.push_back(t.get_si());
  std::vector<long> x(d.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == d.size()) {
      long ord = 1;
      for (std::size_t j = 0; j < d.size(); ++j) ord = std::lcm(ord, d[j] / std::gcd(x[j], d[j]));
      ++hist[ord];
      return;
    }
    for (long v = 0; v < d[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return hist;
}

// Form (*) summand types of dimension n.
std::vector<Summand> star_types(int n) {
  std::vector<Summand> t{Summand::twisted_s2(n)};
  for (int k = 2; 2 * k <= n; ++k) t.push_back(Summand::sphere_product(k, n - k));
  return t;
}

int lower_sum(const BettiProfile& p) {
  int s = 0;
  for (int i = 2; i <= p.dim / 2; ++i) s += static_cast<int>(p.b(i).get_si());
  return s;
}

IntVec random_primitive(Rng& rng, std::size_t g, int bound) {
  for (;;) {
    IntVec e(g);
    for (Int& x : e) x = uniform(rng, -bound, bound);
    if (is_primitive(e)) return e;
  }
}

// Random form (*) expression: canonical realization of a random profile, with extra twisted summands swapped in.
ConnectedSumExpr random_star_expr(Rng& rng, int max_sum) {
  for (;;) {
    const int n = uniform(rng, 5, 10);
    std::vector<Int> lower;
    int left = uniform(rng, 1, max_sum);
    for (int i = 2; i <= n / 2; ++i) {
      int v = uniform(rng, 0, left);
      if (2 * i == n) v -= v % 2;
      lower.push_back(v);
      left -= v;
    }
    if (lower.front() == 0) continue;
    const bool spin = uniform(rng, 0, 1) == 0;
    ConnectedSumExpr e = from_betti(BettiProfile::from_lower(n, lower, spin));
    for (Summand& s : e.summands)
      if (s.kind == SummandKind::SphereProduct && s.k == 2 && uniform(rng, 0, 3) == 0) s = Summand::twisted_s2(n);
    std::shuffle(e.summands.begin(), e.summands.end(), rng);
    return e;
  }
}

struct Context {
  std::vector<BettiProfile> outputs;  // bundle evaluations from criteria 2-4
};

CriterionResult c1() {
  std::size_t checks = 0, bad = 0;
  for (int k = 0; k <= 8; ++k)
    for (int r = 0; r <= 10; ++r) {
      const std::vector<Int> stages = k >= 1 ? aki_via_stages(k, r) : std::vector<Int>{1, 0, r, 0, 1};
      for (int i = 2; i <= k + 2; ++i) {
        const Int closed = a_ki(k, i, r);
        ++checks;
        if (closed != stages[static_cast<std::size_t>(i)]) ++bad;
        ++checks;
        if (closed != a_ki(k, k + 4 - i, r)) ++bad;
        if (k <= 7 && r >= 1 && i >= 3) {
          ++checks;
          if (a_ki(k + 1, i, r - 1) != a_ki(k, i - 1, r) + a_ki(k, i, r)) ++bad;
        }
      }
    }
  return {1, "a_ki closed form = stage recurrence = stage oracle, with symmetry", bad == 0,
          counts(checks - bad, checks) + " identities exact"};
}

CriterionResult c2(Context& ctx) {
  const std::vector<RowInstance> all = enumerate_row_instances(4);
  std::size_t ok = 0;
  std::map<std::string, std::size_t> failing;
  std::string example;
  for (const RowInstance& inst : all) {
    try {
      const BettiProfile got = circle_bundle(inst.base, inst.euler);
      ctx.outputs.push_back(got);
      if (got == inst.expected) {
        ++ok;
        continue;
      }
      if (example.empty()) example = "; e.g. " + inst.base.name() + " gives " + got.name() + ", row says " + inst.expected.name();
    } catch (const Error& e) {
      if (example.empty()) example = std::string("; e.g. ") + inst.base.name() + ": " + e.what();
    }
    ++failing[inst.row->id];
  }
  std::string detail = counts(ok, all.size()) + " row instances reproduce M";
  if (!failing.empty()) {
    detail += "; failing rows:";
    for (const auto& [id, c] : failing) detail += " " + id + " (" + std::to_string(c) + ")";
    detail += example;
  }
  return {2, "circle-action table reproduction", failing.empty() && !all.empty(), detail};
}

CriterionResult c3(Context& ctx) {
  Rng rng(3);
  std::size_t forward = 0, converse = 0, rejected = 0, bad = 0;
  for (int n = 5; n <= 12; ++n) {
    const int k = n - 4;
    for (int b2 = 0; b2 <= 6; ++b2) {
      std::vector<Int> lower;
      for (int i = 2; i <= n / 2; ++i) lower.push_back(a_ki(k, i, b2));
      for (bool spin : {true, false}) {
        if (!spin && b2 == 0) continue;
        const BettiProfile M = BettiProfile::from_lower(n, lower, spin);
        ++forward;
        try {
          const std::optional<Cohom4Witness> w = cohom4_classify(M);
          if (!w || torus_bundle_over_4(w->base, w->E) != M) ++bad;
          else ctx.outputs.push_back(M);
        } catch (const Error&) {
          ++bad;
        }
        for (int i = 3; i <= n / 2; ++i) {
          std::vector<Int> off = lower;
          off[static_cast<std::size_t>(i - 2)] += 2;
          ++rejected;
          if (cohom4_classify(BettiProfile::from_lower(n, off, spin))) ++bad;
        }
      }
      const std::size_t B = static_cast<std::size_t>(b2 + k);
      const FourManifoldSpec base{B, IntVec(B, 1)};
      int produced = 0;
      for (int attempt = 0; attempt < 400 && produced < 12; ++attempt) {
        std::vector<IntVec> rows;
        for (int j = 0; j < k; ++j) {
          IntVec row(B);
          for (Int& x : row) x = uniform(rng, -2, 2);
          rows.push_back(row);
        }
        const IntMat E = IntMat::from_rows(rows, B);
        if (!extends_to_basis(E)) continue;
        ++produced;
        ++converse;
        const BettiProfile P = torus_bundle_over_4(base, E);
        ctx.outputs.push_back(P);
        if (!cohom4_classify(P)) ++bad;
      }
    }
  }
  return {3, "cohomogeneity-four classification round trip", bad == 0 && converse > 0,
          std::to_string(forward) + " closed-form profiles round-trip, " + std::to_string(rejected) +
              " perturbed profiles rejected, " + std::to_string(converse) + " random basis-extending bundles accepted, " +
              std::to_string(bad) + " mismatches"};
}

CriterionResult c4(Context& ctx) {
  std::size_t cases = 0, feasible = 0, bad = 0;
  for (int n = 6; n <= 10; ++n)
    for (const BettiProfile& M : enumerate_profiles(n, 8)) {
      ++cases;
      const bool v = free_torus_feasible(M, 1).verdict;
      const bool inv = invert_recurrence(M).has_value();
      if (v != inv) {
        ++bad;
        continue;
      }
      if (!v) continue;
      ++feasible;
      try {
        const Tower t = quotient_tower(M, 1);
        const TowerStage& s = t.stages.front();
        const BettiProfile again = circle_bundle(s.base_expr, s.euler);
        ctx.outputs.push_back(again);
        if (!s.verified || again != M) ++bad;
      } catch (const Error&) {
        ++bad;
      }
    }
  return {4, "single-circle feasibility agrees with recurrence inversion", bad == 0,
          std::to_string(cases) + " profiles (n = 6..10, lower Betti sum <= 8), " + std::to_string(feasible) +
              " feasible towers verified, " + std::to_string(bad) + " mismatches"};
}

CriterionResult c5() {
  std::size_t bad = 0;
  for (int m = 2; m <= 9; ++m) {
    const BettiProfile M = BettiProfile::from_lower(9, {0, m, 0}, true);
    if (free_torus_feasible(M, 1).verdict) ++bad;
  }
  return {5, "#_m(S^3xS^6) has no circle action with form (*) quotient, 2 <= m <= 9", bad == 0,
          counts(8 - bad, 8) + " infeasible"};
}

CriterionResult c6(const Context& ctx) {
  std::size_t bad = 0;
  for (const BettiProfile& p : ctx.outputs)
    if (p.euler_characteristic() != 0) ++bad;
  return {6, "vanishing Euler characteristic of bundle total spaces", bad == 0 && !ctx.outputs.empty(),
          counts(ctx.outputs.size() - bad, ctx.outputs.size()) + " outputs with chi = 0"};
}

bool dual_path_agrees(const ConnectedSumExpr& base, const IntVec& e) {
  return circle_bundle(base, e) == betti_profile(decomposition_path(base, e));
}

CriterionResult c7() {
  std::size_t exhaustive = 0, sampled = 0, bad = 0;
  std::string example;
  auto run = [&](const ConnectedSumExpr& base, const IntVec& e) {
    try {
      if (dual_path_agrees(base, e)) return;
    } catch (const Error& err) {
      if (example.empty()) example = std::string("; ") + err.what();
    }
    ++bad;
    if (example.empty()) example = "; e.g. " + base.name() + " e=" + to_string(e);
  };
  for (int n = 5; n <= 10; ++n) {
    const std::vector<Summand> types = star_types(n);
    std::function<void(std::size_t, ConnectedSumExpr&)> rec = [&](std::size_t from, ConnectedSumExpr& cur) {
      const std::size_t g = h2_basis(cur).size();
      if (g >= 1 && lower_sum(betti_profile(cur)) <= 6) {
        IntVec e(g, -3);
        for (;;) {
          if (is_primitive(e)) {
            ++exhaustive;
            run(cur, e);
          }
          std::size_t j = 0;
          while (j < g && e[j] == 3) e[j++] = -3;
          if (j == g) break;
          e[j] += 1;
        }
      }
      if (cur.summands.size() == 3) return;
      for (std::size_t t = from; t < types.size(); ++t) {
        cur.summands.push_back(types[t]);
        rec(t, cur);
        cur.summands.pop_back();
      }
    };
    ConnectedSumExpr start{n, {}};
    rec(0, start);
  }
  Rng rng(7);
  while (sampled < 1000) {
    const ConnectedSumExpr base = random_star_expr(rng, 6);
    ++sampled;
    run(base, random_primitive(rng, h2_basis(base).size(), 3));
  }
  return {7, "recurrence path equals suspension decomposition path", bad == 0,
          std::to_string(exhaustive) + " exhaustive cases (<= 3 summands) and " + std::to_string(sampled) +
              " random cases, " + std::to_string(bad) + " disagreements" + example};
}

CriterionResult c8() {
  Rng rng(8);
  std::size_t bad = 0;
  const std::size_t total = 500;
  for (std::size_t c = 0; c < total; ++c) {
    const ConnectedSumExpr base = random_star_expr(rng, 6);
    const H2Basis basis = h2_basis(base);
    const IntVec e = random_primitive(rng, basis.size(), 5);
    if (gf2_in_span(basis.w2(), IntMat::from_rows({e}, e.size())) != divisibility_spin_clause(base, e)) ++bad;
  }
  return {8, "GF(2) span spin test equals divisibility-parity spin clause", bad == 0, counts(total - bad, total) + " random cases agree"};
}

CriterionResult c9() {
  Rng rng(9);
  std::size_t bad = 0, groups = 0;
  const std::size_t total = 1000;
  for (std::size_t c = 0; c < total; ++c) {
    const std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 6));
    const std::size_t cols = c % 3 == 0 ? rows : static_cast<std::size_t>(uniform(rng, 1, 6));
    IntMat A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) A(i, j) = uniform(rng, -9, 9);
    const SNFDecomposition s = smith_normal_form(A);
    bool ok = s.U * A * s.V == s.D;
    ok = ok && abs(bareiss(s.U).second) == 1 && abs(bareiss(s.V).second) == 1;
    const IntVec d = s.diagonal();
    for (std::size_t i = 0; i < rows && ok; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j && s.D(i, j) != 0) ok = false;
    for (std::size_t i = 0; i < d.size() && ok; ++i) {
      if (d[i] < 0) ok = false;
      if (i + 1 < d.size() && !(d[i] == 0 ? d[i + 1] == 0 : mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t())))
        ok = false;
    }
    const Cokernel ck = cokernel(A);
    const auto [rank, det] = bareiss(A);
    if (ck.free_rank != rows - rank) ok = false;
    if (ok && rows == cols && det != 0 && abs(det) <= 24) {
      ++groups;
      if (order_histogram_lattice(A) != order_histogram_cyclic(ck.torsion)) ok = false;
    }
    if (!ok) ++bad;
  }
  return {9, "Smith normal form properties and cokernel group check", bad == 0,
          counts(total - bad, total) + " matrices pass, " + std::to_string(groups) + " finite cokernels checked element by element"};
}

CriterionResult c10() {
  const std::vector<std::pair<std::string, BettiProfile>> cases{
      {"S^7", BettiProfile::from_lower(7, {0, 0}, true)},
      {"#_2(S^3xS^4)", BettiProfile::from_lower(7, {0, 2}, true)},
      {"S^9", BettiProfile::from_lower(9, {0, 0, 0}, true)},
      {"S^3xS^6", BettiProfile::from_lower(9, {0, 1, 0}, true)},
  };
  std::size_t bad = 0;
  std::string detail;
  for (const auto& [label, M] : cases)
    for (bool twisted : {false, true}) {
      std::string m0 = "?";
      try {
        const StabilizationResult res = stabilization_m0(M, twisted);
        m0 = std::to_string(res.m0);
        for (int m = res.m0; m <= res.m0 + 3; ++m) {
          const auto it = std::find_if(res.checked.begin(), res.checked.end(),
                                       [&](const StabilizationInstance& i) { return i.m == m; });
          if (it == res.checked.end()) {
            ++bad;
            continue;
          }
          const BettiProfile again = circle_bundle(it->base, standard_euler(it->base));
          if (again != stabilization_target(M, m, twisted)) ++bad;
        }
      } catch (const Error&) {
        ++bad;
      }
      detail += (detail.empty() ? "" : ", ") + label + (twisted ? " twisted" : "") + " m0=" + m0;
    }
  return {10, "stabilization bound verifies on m0..m0+3", bad == 0, detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  Context ctx;
  std::vector<CriterionResult> out;
  out.push_back(c1());
  out.push_back(c2(ctx));
  out.push_back(c3(ctx));
  out.push_back(c4(ctx));
  out.push_back(c5());
  out.push_back(c6(ctx));
  out.push_back(c7());
  out.push_back(c8());
  out.push_back(c9());
  out.push_back(c10());
  return out;
}

std::string format_line(const CriterionResult& r) {
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail;
}

}  // namespace tb
