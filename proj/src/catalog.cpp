#include "tb/catalog.hpp"

#include <algorithm>

#include "tb/error.hpp"
#include "tb/feasibility.hpp"

namespace tb {

namespace {

Summand SP(int k, int l) { return Summand::sphere_product(k, l); }
Summand TW(int n) { return Summand::twisted_s2(n); }
Summand CP(int m) { return Summand::complex_projective(m); }
Summand E(int m, int r) { return Summand::cp_sphere_bundle(m, r, false); }
Summand TE(int m, int r) { return Summand::cp_sphere_bundle(m, r, true); }
Summand PE(int r) { return Summand::proj_bundle_s2(r); }

bool even(int x) { return x % 2 == 0; }

std::vector<TableRow> build_rows() {
  using P = const RowParams&;
  std::vector<TableRow> rows;
  auto add = [&](std::string id, int n, bool spin, std::string betti, std::string cond, std::string base, bool choice,
                 std::function<bool(P)> applies, std::function<std::vector<SummandCount>(P)> parts) {
    rows.push_back(TableRow{std::move(id), n, spin, std::move(betti), std::move(cond), std::move(base), choice,
                             std::move(applies), std::move(parts)});
  };

  const std::string b7 = "b2=p, b3=q";
  add("7.1", 7, true, b7, "q even", "#_{p+1} CP^3 # #_{q/2} (S^3xS^3)", false,
      [](P x) { return even(x.q); },
      [](P x) { return std::vector<SummandCount>{{CP(3), x.p + 1}, {SP(3, 3), x.q / 2}}; });
  add("7.2", 7, true, b7, "q odd", "(S^2xS^4) # #_p CP^3 # #_{(q-1)/2} (S^3xS^3)", false,
      [](P x) { return !even(x.q); },
      [](P x) { return std::vector<SummandCount>{{SP(2, 4), 1}, {CP(3), x.p}, {SP(3, 3), (x.q - 1) / 2}}; });
  add("7.3", 7, false, b7, "q >= 2 even, p >= 1",
      "(S^2~xS^4) # (S^2xS^4) # #_{p-1} CP^3 # #_{(q-2)/2} (S^3xS^3)", false,
      [](P x) { return x.q >= 2 && even(x.q) && x.p >= 1; },
      [](P x) {
        return std::vector<SummandCount>{{TW(6), 1}, {SP(2, 4), 1}, {CP(3), x.p - 1}, {SP(3, 3), (x.q - 2) / 2}};
      });
  add("7.4", 7, false, b7, "q odd, p >= 1", "(S^2~xS^4) # #_p CP^3 # #_{(q-1)/2} (S^3xS^3)", false,
      [](P x) { return !even(x.q) && x.p >= 1; },
      [](P x) { return std::vector<SummandCount>{{TW(6), 1}, {CP(3), x.p}, {SP(3, 3), (x.q - 1) / 2}}; });
  add("7.5", 7, false, "b2=p, b3=0", "p > 1", "~E_2^2 # #_{p-1} CP^3", false,
      [](P x) { return x.q == 0 && x.p > 1; },
      [](P x) { return std::vector<SummandCount>{{TE(2, 2), 1}, {CP(3), x.p - 1}}; });
  add("7.6", 7, false, "b2=1, b3=0", "", "P(E)", false,
      [](P x) { return x.p == 1 && x.q == 0; },
      [](P) { return std::vector<SummandCount>{{PE(2), 1}}; });

  const std::string b8 = "b2=p, b3=q, b4=2r";
  add("8.1", 8, true, b8, "p+r+1 = q", "#_{p+1} (S^2xS^5) # #_r (S^3xS^4)", false,
      [](P x) { return x.p + x.r + 1 == x.q; },
      [](P x) { return std::vector<SummandCount>{{SP(2, 5), x.p + 1}, {SP(3, 4), x.r}}; });
  // printed with p further twisted summands; the canonical form with one twisted summand is used
  add("8.2", 8, false, b8, "p+r+1 = q", "(S^2~xS^5) # #_p (S^2~xS^5) # #_r (S^3xS^4)", false,
      [](P x) { return x.p + x.r + 1 == x.q; },
      [](P x) { return std::vector<SummandCount>{{TW(7), 1}, {SP(2, 5), x.p}, {SP(3, 4), x.r}}; });

  const std::string b9 = "b2=p, b3=q, b4=r";
  add("9.1", 9, true, b9, "q > 0, 1+p+r >= q; a+b = q, a <= p+1, b <= r, r-b even",
      "#_{p+1-a} CP^4 # #_a (S^2~xS^6) # #_b (S^3xS^5) # #_{(r-b)/2} (S^4xS^4)", true,
      [](P x) { return x.q > 0 && 1 + x.p + x.r >= x.q; },
      [](P x) {
        return std::vector<SummandCount>{
            {CP(4), x.p + 1 - x.a}, {TW(8), x.a}, {SP(3, 5), x.b}, {SP(4, 4), (x.r - x.b) / 2}};
      });
  add("9.2", 9, true, "b2=p, b3=0, b4=r", "r even", "#_{p+1} CP^4 # #_{r/2} (S^4xS^4)", false,
      [](P x) { return x.q == 0 && even(x.r); },
      [](P x) { return std::vector<SummandCount>{{CP(4), x.p + 1}, {SP(4, 4), x.r / 2}}; });
  add("9.3", 9, true, "b2=p, b3=0, b4=r", "r odd", "~E_2^4 # #_p CP^4 # #_{(r-1)/2} (S^4xS^4)", false,
      [](P x) { return x.q == 0 && !even(x.r); },
      [](P x) { return std::vector<SummandCount>{{TE(2, 4), 1}, {CP(4), x.p}, {SP(4, 4), (x.r - 1) / 2}}; });
  add("9.4", 9, false, b9, "p > 0, q > 1, 1+p+r >= q; a+b = q, 1 <= a <= p+1, b <= r, r-b even",
      "#_{p+1-a} CP^4 # #_a (S^2xS^6) # #_b (S^3xS^5) # #_{(r-b)/2} (S^4xS^4)", true,
      [](P x) { return x.p > 0 && x.q > 1 && 1 + x.p + x.r >= x.q; },
      [](P x) {
        return std::vector<SummandCount>{
            {CP(4), x.p + 1 - x.a}, {SP(2, 6), x.a}, {SP(3, 5), x.b}, {SP(4, 4), (x.r - x.b) / 2}};
      });
  add("9.5", 9, false, "b2=p, b3=1, b4=r", "p > 0, r even", "#_p CP^4 # (S^2xS^6) # #_{r/2} (S^4xS^4)", false,
      [](P x) { return x.p > 0 && x.q == 1 && even(x.r); },
      [](P x) { return std::vector<SummandCount>{{CP(4), x.p}, {SP(2, 6), 1}, {SP(4, 4), x.r / 2}}; });
  add("9.6", 9, false, "b2=p, b3=1, b4=r", "p > 0, r odd",
      "#_{p-1} CP^4 # (S^2~xS^6) # E_2^4 # #_{(r-1)/2} (S^4xS^4)", false,
      [](P x) { return x.p > 0 && x.q == 1 && !even(x.r); },
      [](P x) {
        return std::vector<SummandCount>{{CP(4), x.p - 1}, {TW(8), 1}, {E(2, 4), 1}, {SP(4, 4), (x.r - 1) / 2}};
      });
  add("9.7", 9, false, "b2=p, b3=0, b4=r", "p > 0, r >= 2 even",
      "E_2^4 # ~E_2^4 # #_{p-1} CP^4 # #_{(r-2)/2} (S^4xS^4)", false,
      [](P x) { return x.p > 0 && x.q == 0 && x.r >= 2 && even(x.r); },
      [](P x) {
        return std::vector<SummandCount>{{E(2, 4), 1}, {TE(2, 4), 1}, {CP(4), x.p - 1}, {SP(4, 4), (x.r - 2) / 2}};
      });
  add("9.8", 9, false, "b2=p, b3=0, b4=r", "p > 0, r odd", "E_2^4 # #_p CP^4 # #_{(r-1)/2} (S^4xS^4)", false,
      [](P x) { return x.p > 0 && x.q == 0 && !even(x.r); },
      [](P x) { return std::vector<SummandCount>{{E(2, 4), 1}, {CP(4), x.p}, {SP(4, 4), (x.r - 1) / 2}}; });
  add("9.9", 9, false, "b2=p, b3=0, b4=0", "p > 1", "E_3^2 # #_{p-1} CP^4", false,
      [](P x) { return x.p > 1 && x.q == 0 && x.r == 0; },
      [](P x) { return std::vector<SummandCount>{{E(3, 2), 1}, {CP(4), x.p - 1}}; });
  add("9.10", 9, false, "b2=1, b3=0, b4=0", "", "P(E)", false,
      [](P x) { return x.p == 1 && x.q == 0 && x.r == 0; },
      [](P) { return std::vector<SummandCount>{{PE(3), 1}}; });

  const std::string b10 = "b2=p, b3=q, b4=r, b5=2s";
  add("10.1", 10, true, b10, "p+r+1 = q+s, s >= r", "#_q (S^2xS^7) # #_r (S^4xS^5) # #_{s-r} E_2^5", false,
      [](P x) { return x.p + x.r + 1 == x.q + x.s && x.s >= x.r; },
      [](P x) { return std::vector<SummandCount>{{SP(2, 7), x.q}, {SP(4, 5), x.r}, {E(2, 5), x.s - x.r}}; });
  add("10.2", 10, true, b10, "p+r+1 = q+s, s < r", "#_{p+1} (S^2xS^7) # #_{r-s} (S^3xS^6) # #_s (S^4xS^5)", false,
      [](P x) { return x.p + x.r + 1 == x.q + x.s && x.s < x.r; },
      [](P x) { return std::vector<SummandCount>{{SP(2, 7), x.p + 1}, {SP(3, 6), x.r - x.s}, {SP(4, 5), x.s}}; });
  // printed with q-1 further twisted summands; the canonical form with one twisted summand is used
  add("10.3", 10, false, b10, "p+r+1 = q+s, s >= r, p,q > 0",
      "(S^2~xS^7) # #_{q-1} (S^2~xS^7) # #_r (S^4xS^5) # #_{s-r} E_2^5", false,
      [](P x) { return x.p + x.r + 1 == x.q + x.s && x.s >= x.r && x.p > 0 && x.q > 0; },
      [](P x) {
        return std::vector<SummandCount>{{TW(9), 1}, {SP(2, 7), x.q - 1}, {SP(4, 5), x.r}, {E(2, 5), x.s - x.r}};
      });
  add("10.4", 10, false, b10, "p+r+1 = q+s, s < r, p > 0",
      "(S^2xS^7) # #_p (S^2~xS^7) # #_{r-s} (S^3xS^6) # #_s (S^4xS^5)", false,
      [](P x) { return x.p + x.r + 1 == x.q + x.s && x.s < x.r && x.p > 0; },
      [](P x) {
        return std::vector<SummandCount>{{SP(2, 7), 1}, {TW(9), x.p}, {SP(3, 6), x.r - x.s}, {SP(4, 5), x.s}};
      });
  add("10.5", 10, false, "b2=p, b3=0, b4=r, b5=2s", "p+r+1 = s, p > 0",
      "#_r (S^4xS^5) # ~E_2^5 # #_{s-r-1} E_2^5", false,
      [](P x) { return x.q == 0 && x.p + x.r + 1 == x.s && x.p > 0; },
      [](P x) { return std::vector<SummandCount>{{SP(4, 5), x.r}, {TE(2, 5), 1}, {E(2, 5), x.s - x.r - 1}}; });
  return rows;
}

int small(const Int& x) {
  if (!x.fits_sint_p()) throw Error(ErrorCode::OutOfRange, "Betti number too large for the table", {{"value", x.get_str()}});
  return static_cast<int>(x.get_si());
}

std::string choice_label(const TableRow& row, const RowParams& x) {
  std::string s = "row " + row.id;
  if (row.has_choice) s += " (a=" + std::to_string(x.a) + ", b=" + std::to_string(x.b) + ")";
  return s;
}

}  // namespace

const std::vector<TableRow>& table1_rows() {
  static const std::vector<TableRow> rows = build_rows();
  return rows;
}

RowParams row_params(const BettiProfile& M) {
  RowParams x;
  const int n = M.dim;
  if (n < 7 || n > 10) throw Error(ErrorCode::OutOfRange, "table rows cover dimensions 7 to 10");
  x.p = small(M.b(2));
  x.q = small(M.b(3));
  if (n == 8) x.r = small(M.b(4)) / 2;
  if (n >= 9) x.r = small(M.b(4));
  if (n == 10) x.s = small(M.b(5)) / 2;
  return x;
}

BettiProfile row_profile(const TableRow& row, const RowParams& x) {
  std::vector<Int> lower{x.p, x.q};
  if (row.n == 8) lower.push_back(2 * x.r);
  if (row.n >= 9) lower.push_back(x.r);
  if (row.n == 10) lower.push_back(2 * x.s);
  return BettiProfile::from_lower(row.n, lower, row.spin);
}

std::vector<RowParams> row_choices(const TableRow& row, const RowParams& x) {
  if (!row.has_choice) return {x};
  std::vector<RowParams> out;
  const int min_a = row.spin ? 0 : 1;
  for (int b = std::min(x.q, x.r); b >= 0; --b) {
    const int a = x.q - b;
    if (!even(x.r - b) || a < min_a || a > x.p + 1) continue;
    RowParams y = x;
    y.a = a;
    y.b = b;
    out.push_back(y);
  }
  return out;
}

ConnectedSumExpr row_base(const TableRow& row, const RowParams& x) {
  ConnectedSumExpr e{row.n - 1, {}};
  for (const SummandCount& sc : row.parts(x)) {
    if (sc.count < 0)
      throw Error(ErrorCode::InvalidInput, "negative summand count for row parameters", {{"row", row.id}});
    for (int j = 0; j < sc.count; ++j) e.summands.push_back(sc.summand);
  }
  return e;
}

IntVec standard_euler(const ConnectedSumExpr& base) {
  IntVec e;
  for (const Summand& s : base.summands) {
    const std::size_t rank = s.h2_rank();
    if (rank == 0) continue;
    if (s.kind == SummandKind::ProjBundleS2) {
      e.push_back(0);
      e.push_back(1);
      continue;
    }
    e.push_back(1);
    for (std::size_t j = 1; j < rank; ++j) e.push_back(0);
  }
  return e;
}

std::optional<CircleWitness> table1_base(const BettiProfile& M) {
  validate_form_star(M);
  const int n = M.dim;
  if (n < 5 || n > 10) throw Error(ErrorCode::OutOfRange, "table bases cover dimensions 5 to 10");
  if (n % 2 == 0 && M.euler_characteristic() != 0) return std::nullopt;
  if (n == 9 && chi_iter(M, 1, 4) < 0) return std::nullopt;

  CircleWitness w;
  w.total = M;
  if (n == 5) {
    const std::optional<Cohom4Witness> c = cohom4_classify(M);
    if (!c) throw Error(ErrorCode::CatalogDefect, "five-dimensional profile has no four-manifold witness", {{"profile", M.name()}});
    w.source = "four_manifold";
    w.base4 = c->base;
    w.euler = c->E.row(0);
    return w;
  }
  if (n >= 7) {
    const RowParams x = row_params(M);
    for (const TableRow& row : table1_rows()) {
      if (row.n != n || row.spin != M.spin || !row.applies(x)) continue;
      if (row_profile(row, x) != M) continue;
      for (const RowParams& y : row_choices(row, x)) {
        const ConnectedSumExpr base = row_base(row, y);
        const IntVec e = standard_euler(base);
        std::string outcome;
        try {
          const BettiProfile got = circle_bundle(base, e);
          if (got == M) {
            w.source = "table_row";
            w.row_id = row.id;
            w.base = base;
            w.euler = e;
            return w;
          }
          outcome = "gives " + got.name();
        } catch (const Error& err) {
          outcome = std::string("fails: ") + err.what();
        }
        w.notes.push_back(choice_label(row, y) + " " + outcome);
      }
    }
  }
  const FeasibilityReport rep = free_torus_feasible(M, 1);
  if (rep.verdict) {
    const Tower t = quotient_tower(M, 1);
    w.source = "quotient_tower";
    w.base = t.stages.front().base_expr;
    w.euler = t.stages.front().euler;
    return w;
  }
  Diagnostics diag{{"profile", M.name()}};
  for (const std::string& s : w.notes) diag.emplace_back("note", s);
  throw Error(ErrorCode::CatalogDefect, "no verified base for a profile satisfying the hypotheses", diag);
}

std::vector<RowInstance> enumerate_row_instances(int bound) {
  std::vector<RowInstance> out;
  for (const TableRow& row : table1_rows()) {
    const int rmax = row.n >= 8 ? bound : 0;
    const int smax = row.n == 10 ? bound : 0;
    for (int p = 0; p <= bound; ++p)
      for (int q = 0; q <= bound; ++q)
        for (int r = 0; r <= rmax; ++r)
          for (int s = 0; s <= smax; ++s) {
            RowParams x{p, q, r, s, 0, 0};
            if (!row.applies(x)) continue;
            const BettiProfile expected = row_profile(row, x);
            try {
              validate_form_star(expected);
            } catch (const Error&) {
              continue;
            }
            for (const RowParams& y : row_choices(row, x)) {
              RowInstance inst;
              inst.row = &row;
              inst.params = y;
              inst.expected = expected;
              inst.base = row_base(row, y);
              inst.euler = standard_euler(inst.base);
              out.push_back(std::move(inst));
            }
          }
  }
  return out;
}

ConnectedSumExpr stabilization_base(const BettiProfile& M, int l, bool nonspin_target) {
  const int n = M.dim;
  const int h = (n - 1) / 2;
  const bool tw = n % 4 == 1;
  ConnectedSumExpr base{n - 1, {}};
  for (int j = 0; j < l; ++j) base.summands.push_back(CP(h));
  for (int i = 1; i <= (n - 3) / 2; ++i) {
    const int c = small(M.b(2 * i + 1));
    for (int j = 0; j < c; ++j) base.summands.push_back(Summand::cp_sphere_bundle(i, n - 2 * i - 1, tw));
  }
  if (nonspin_target) {
    auto it = std::find_if(base.summands.begin(), base.summands.end(),
                           [](const Summand& s) { return s.kind == SummandKind::CPSphereBundle; });
    if (it != base.summands.end()) {
      it->twisted = !it->twisted;
    } else {
      base.summands.push_back(E((n - 3) / 2, 2));
      base.summands.push_back(TE((n - 3) / 2, 2));
    }
  }
  return base;
}

BettiProfile stabilization_target(const BettiProfile& M, int m, bool twisted) {
  BettiProfile t = M;
  t.betti[2] += m;
  t.betti[static_cast<std::size_t>(M.dim - 2)] += m;
  if (twisted && m > 0) t.spin = false;
  return t;
}

std::optional<StabilizationInstance> stabilization_instance(const BettiProfile& M, int m, bool twisted) {
  const BettiProfile target = stabilization_target(M, m, twisted);
  for (int l = 0; l <= m + 8; ++l) {
    StabilizationInstance inst;
    inst.m = m;
    inst.l = l;
    inst.base = stabilization_base(M, l, !target.spin);
    inst.euler = standard_euler(inst.base);
    try {
      inst.total = circle_bundle(inst.base, inst.euler);
    } catch (const Error&) {
      continue;
    }
    if (inst.total == target) return inst;
  }
  return std::nullopt;
}

StabilizationResult stabilization_m0(const BettiProfile& M, bool twisted) {
  validate_form_star(M);
  if (M.dim % 2 == 0) throw Error(ErrorCode::OutOfRange, "stabilization requires odd dimension", {{"n", std::to_string(M.dim)}});
  constexpr int kMaxM = 64;
  constexpr int kWindow = 3;
  std::vector<std::optional<StabilizationInstance>> found;
  auto at = [&](int m) -> const std::optional<StabilizationInstance>& {
    while (static_cast<int>(found.size()) <= m) found.push_back(stabilization_instance(M, static_cast<int>(found.size()), twisted));
    return found[static_cast<std::size_t>(m)];
  };
  for (int m0 = 0; m0 <= kMaxM; ++m0) {
    bool ok = true;
    for (int m = m0; m <= m0 + kWindow && ok; ++m) ok = at(m).has_value();
    if (!ok) continue;
    StabilizationResult res;
    res.m0 = m0;
    res.twisted = twisted;
    const int h = (M.dim - 1) / 2;
    const ConnectedSumExpr rest = stabilization_base(M, 0, !stabilization_target(M, m0 + 1, twisted).spin);
    res.family = "#_l CP^" + std::to_string(h) + (rest.summands.empty() ? "" : " # " + rest.name());
    for (int m = m0; m <= m0 + kWindow; ++m) res.checked.push_back(*at(m));
    return res;
  }
  throw Error(ErrorCode::CatalogDefect, "no stabilization bound found within the search range", {{"profile", M.name()}});
}

}  // namespace tb
