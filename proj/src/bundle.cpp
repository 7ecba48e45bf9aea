#include "tb/bundle.hpp"

#include <algorithm>

#include "tb/error.hpp"

namespace tb {

namespace {

ConnectedSumExpr single(int dim, Summand s) { return ConnectedSumExpr{dim, {std::move(s)}}; }

bool is_unit(const IntVec& v) { return v.size() == 1 && abs(v[0]) == 1; }

bool odd(const Int& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }

// Residue of x modulo m > 0 with smallest absolute value.
Int symmetric_residue(const Int& x, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

Diagnostics cokernel_diagnostics(const IntMat& E) {
  return {{"fundamental_group", to_string(cokernel(E))},
          {"snf_diagonal", to_string(smith_normal_form(E).diagonal())}};
}

void check_length(const ConnectedSumExpr& base, const IntVec& e) {
  const std::size_t n = h2_basis(base).size();
  if (e.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "Euler vector length differs from the degree-2 basis",
                {{"expected", std::to_string(n)}, {"got", std::to_string(e.size())}});
}

}  // namespace

Int binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Int a_ki(int k, int i, const Int& r) {
  if (k < 0 || i < 2 || i > k + 2 || r < 0)
    throw Error(ErrorCode::OutOfRange, "a_ki requires k >= 0, r >= 0 and 2 <= i <= k+2",
                {{"k", std::to_string(k)}, {"i", std::to_string(i)}, {"r", r.get_str()}});
  return Int(i - 2) * binomial(k, i - 1) + r * binomial(k, i - 2) + Int(2 + k - i) * binomial(k, i - 3);
}

void require_primitive(const IntVec& e) {
  if (!is_primitive(e))
    throw Error(ErrorCode::NotPrimitive, "Euler class is not primitive; total space is not simply connected",
                cokernel_diagnostics(IntMat::from_rows({e}, e.size())));
}

void require_basis_extending(const EulerMatrix& E) {
  if (E.rows() > E.cols() || !extends_to_basis(E))
    throw Error(ErrorCode::NotBasisExtending, "Euler matrix does not extend to a basis",
                cokernel_diagnostics(E));
}

std::optional<ConnectedSumExpr> known_total_space(const Summand& s, const IntVec& c, bool standalone) {
  const int d = s.dim() + 1;
  switch (s.kind) {
    case SummandKind::ComplexProjective:
      if (is_unit(c)) return ConnectedSumExpr{d, {}};
      break;
    case SummandKind::CPSphereBundle:
      if (!c.empty() && abs(c[0]) == 1 && (c.size() == 1 || c[1] == 0))
        return single(d, Summand::sphere_product(2 * s.m + 1, s.r));
      break;
    case SummandKind::SphereProduct:
      if (s.k == 2 && s.dim() >= 5 && is_unit(c)) return single(d, Summand::sphere_product(3, s.l));
      break;
    case SummandKind::TwistedS2:
      if (is_unit(c)) return single(d, Summand::sphere_product(3, s.n - 2));
      break;
    case SummandKind::ProjBundleS2:
      if (standalone && c.size() == 2 && c[0] == 0 && abs(c[1]) == 1)
        return single(d, Summand::twisted_s2(d));
      break;
    case SummandKind::Sphere:
      break;
  }
  return std::nullopt;
}

ConnectedSumExpr suspend(const Summand& s, const IntVec& e, bool twisted) {
  const int n = s.dim();
  if (e.size() != s.h2_rank())
    throw Error(ErrorCode::DimensionMismatch, "Euler vector length differs from the summand's degree-2 rank",
                {{"summand", s.name()}, {"expected", std::to_string(s.h2_rank())}, {"got", std::to_string(e.size())}});
  const bool even_d = e.empty() || !odd(content(e));
  switch (s.kind) {
    case SummandKind::Sphere:
      return ConnectedSumExpr{n + 1, {}};
    case SummandKind::SphereProduct:
      if (s.k >= 3)
        return ConnectedSumExpr{n + 1, {Summand::sphere_product(s.k, s.l + 1), Summand::sphere_product(s.k + 1, s.l)}};
      if (n < 5) break;
      if (twisted || even_d)
        return ConnectedSumExpr{n + 1, {Summand::sphere_product(2, n - 1), Summand::sphere_product(3, n - 2)}};
      return ConnectedSumExpr{n + 1, {Summand::twisted_s2(n + 1), Summand::sphere_product(3, n - 2)}};
    case SummandKind::TwistedS2:
      if (!twisted && !even_d)
        return ConnectedSumExpr{n + 1, {Summand::sphere_product(2, n - 1), Summand::sphere_product(3, n - 2)}};
      return ConnectedSumExpr{n + 1, {Summand::twisted_s2(n + 1), Summand::sphere_product(3, n - 2)}};
    default: {
      const std::optional<ConnectedSumExpr> p = known_total_space(s, e, false);
      if (!p) break;
      // product factor exactly when the plain/twisted choice matches the spin type of the summand
      const bool product = (twisted == s.spin());
      ConnectedSumExpr out = *p;
      out.summands.push_back(product ? Summand::sphere_product(2, n - 1) : Summand::twisted_s2(n + 1));
      return out;
    }
  }
  throw Error(ErrorCode::Unsupported, "no suspension rule for this summand and class",
              {{"summand", s.name()}, {"class", to_string(e)}, {"twisted", twisted ? "true" : "false"}});
}

ConnectedSumExpr suspend(const ConnectedSumExpr& base, const IntVec& e, bool twisted) {
  validate(base);
  check_length(base, e);
  const std::vector<IntVec> parts = restrictions(base, e);
  std::vector<ConnectedSumExpr> out;
  for (std::size_t i = 0; i < base.summands.size(); ++i) out.push_back(suspend(base.summands[i], parts[i], twisted));
  return connected_sum(base.dim + 1, std::move(out));
}

BettiProfile circle_step(const BettiProfile& base, bool total_spin) {
  validate_profile(base);
  const int N = base.dim;
  if (N < 5) throw Error(ErrorCode::OutOfRange, "Betti recurrence requires base dimension >= 5");
  if (base.b(2) < 1)
    throw Error(ErrorCode::NotPrimitive, "base with b_2 = 0 carries no primitive Euler class");
  BettiProfile p;
  p.dim = N + 1;
  p.spin = total_spin;
  p.betti.assign(static_cast<std::size_t>(N + 2), 0);
  auto set = [&](int i, const Int& v) {
    p.betti[static_cast<std::size_t>(i)] = v;
    p.betti[static_cast<std::size_t>(N + 1 - i)] = v;
  };
  set(0, 1);
  set(2, base.b(2) - 1);
  for (int i = 3; i <= N - 3; ++i) set(i, base.b(i - 1) + base.b(i));
  if (N == 5) p.betti[3] = 2 + 2 * p.b(2);
  return p;
}

bool divisibility_spin_clause(const ConnectedSumExpr& base, const IntVec& e) {
  if (!is_form_star(base))
    throw Error(ErrorCode::Unsupported, "divisibility spin clause is defined for form (*) bases");
  check_length(base, e);
  const std::vector<IntVec> parts = restrictions(base, e);
  const bool any_twisted = std::any_of(base.summands.begin(), base.summands.end(),
                                       [](const Summand& s) { return s.kind == SummandKind::TwistedS2; });
  if (!any_twisted) return true;
  for (std::size_t i = 0; i < base.summands.size(); ++i) {
    if (parts[i].empty()) continue;
    const bool d_odd = odd(content(parts[i]));
    if (base.summands[i].kind == SummandKind::TwistedS2 && !d_odd) return false;
    if (base.summands[i].kind == SummandKind::SphereProduct && d_odd) return false;
  }
  return true;
}

IntVec normalize_euler(const IntVec& w2, const IntVec& e) {
  if (w2.size() != e.size())
    throw Error(ErrorCode::DimensionMismatch, "w2 and Euler vector lengths differ");
  IntVec v = e;
  const std::size_t n = v.size();
  // adding c * v_j to v_i keeps w2 fixed mod 2 when c * w2_j is even
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      const Int m = (odd(w2[j]) ? 2 : 1) * abs(v[j]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || v[i] == 0) continue;
        Int r = symmetric_residue(v[i], m);
        if (abs(r) < abs(v[i])) {
          v[i] = r;
          changed = true;
        }
      }
    }
  }
  return v;
}

namespace {

struct Choice {
  std::size_t index;
  ConnectedSumExpr total;
};

std::optional<Choice> pick_first(const ConnectedSumExpr& base, const std::vector<IntVec>& parts) {
  const bool standalone = base.summands.size() == 1;
  for (std::size_t idx : canonical_order(base)) {
    std::optional<ConnectedSumExpr> p = known_total_space(base.summands[idx], parts[idx], standalone);
    if (p) return Choice{idx, *p};
  }
  return std::nullopt;
}

}  // namespace

ConnectedSumExpr decomposition_path(const ConnectedSumExpr& base, const IntVec& e) {
  validate(base);
  check_length(base, e);
  require_primitive(e);
  for (const Summand& s : base.summands)
    if (s.kind == SummandKind::ProjBundleS2 && base.summands.size() != 1)
      throw Error(ErrorCode::Unsupported, "projective bundle summand is supported only as a standalone base",
                  {{"base", base.name()}});

  IntVec coords = e;
  std::vector<IntVec> parts = restrictions(base, coords);
  std::optional<Choice> choice = pick_first(base, parts);

  if (!choice) {
    // change coordinates on the degree-2 classes of the S^2-type summands, keeping w2
    const H2Basis basis = h2_basis(base);
    std::vector<std::size_t> star_gens;
    for (std::size_t g = 0; g < basis.size(); ++g)
      if (base.summands[basis.generators[g].summand].form_star()) star_gens.push_back(g);
    IntVec sub, sub_w2, rest;
    for (std::size_t g : star_gens) {
      sub.push_back(coords[g]);
      sub_w2.push_back(basis.generators[g].w2);
    }
    for (std::size_t g = 0; g < basis.size(); ++g)
      if (std::find(star_gens.begin(), star_gens.end(), g) == star_gens.end()) rest.push_back(coords[g]);
    const Int d1 = content(sub);
    const Int d2 = content(rest);
    if (d1 == 1) {
      const IntVec normal = normalize_euler(sub_w2, sub);
      for (std::size_t j = 0; j < star_gens.size(); ++j) coords[star_gens[j]] = normal[j];
      parts = restrictions(base, coords);
      choice = pick_first(base, parts);
    } else if (star_gens.size() == 1 && d2 != 0) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), d1.get_mpz_t(), d2.get_mpz_t());
      if (r != 1 && r != d2 - 1)
        throw Error(ErrorCode::SideCondition, "single S^2-type summand with d_1 not congruent to +-1 mod d_2",
                    {{"d1", d1.get_str()}, {"d2", d2.get_str()}, {"base", base.name()}});
    }
  }
  if (!choice)
    throw Error(ErrorCode::Unsupported, "no summand with a primitive knowledge-base restriction",
                {{"base", base.name()}, {"euler", to_string(e)}});

  const bool twisted = base.summands[choice->index].spin();
  std::vector<ConnectedSumExpr> pieces{choice->total};
  for (std::size_t i = 0; i < base.summands.size(); ++i)
    if (i != choice->index) pieces.push_back(suspend(base.summands[i], parts[i], twisted));
  return connected_sum(base.dim + 1, std::move(pieces));
}

BettiProfile circle_bundle(const ConnectedSumExpr& base, const IntVec& e) {
  validate(base);
  check_length(base, e);
  require_primitive(e);
  const IntVec w2 = h2_basis(base).w2();
  const bool spin = gf2_in_span(w2, IntMat::from_rows({e}, e.size()));
  if (base.dim == 4)
    return torus_bundle_over_4(FourManifoldSpec{w2.size(), w2}, IntMat::from_rows({e}, e.size()));
  if (is_form_star(base)) return circle_step(betti_profile(base), spin);

  BettiProfile p = betti_profile(decomposition_path(base, e));
  if (p.spin != spin)
    throw Error(ErrorCode::InvariantViolation, "decomposition path disagrees with the w2 span test",
                {{"base", base.name()}, {"euler", to_string(e)}});
  return p;
}

BundleResult torus_bundle(const ConnectedSumExpr& base, const EulerMatrix& E) {
  validate(base);
  if (!is_form_star(base))
    throw Error(ErrorCode::Unsupported, "torus bundles are supported over form (*) bases", {{"base", base.name()}});
  const IntVec w2 = h2_basis(base).w2();
  if (E.rows() == 0) throw Error(ErrorCode::InvalidInput, "Euler matrix needs at least one row");
  if (E.cols() != w2.size())
    throw Error(ErrorCode::DimensionMismatch, "Euler matrix width differs from the degree-2 basis",
                {{"expected", std::to_string(w2.size())}, {"got", std::to_string(E.cols())}});
  require_basis_extending(E);
  BundleResult out;
  BettiProfile current = betti_profile(base);
  for (std::size_t j = 1; j <= E.rows(); ++j) {
    current = circle_step(current, gf2_in_span(w2, E.top_rows(j)));
    out.stages.push_back(current);
  }
  out.total = current;
  return out;
}

BettiProfile torus_bundle_over_4(const FourManifoldSpec& base, const EulerMatrix& E) {
  if (base.w2.size() != base.b2)
    throw Error(ErrorCode::DimensionMismatch, "w2 length differs from b2");
  if (E.rows() == 0) throw Error(ErrorCode::InvalidInput, "Euler matrix needs at least one row");
  if (E.cols() != base.b2)
    throw Error(ErrorCode::DimensionMismatch, "Euler matrix width differs from b2",
                {{"expected", std::to_string(base.b2)}, {"got", std::to_string(E.cols())}});
  require_basis_extending(E);
  const int k = static_cast<int>(E.rows());
  const Int r = Int(static_cast<unsigned long>(base.b2)) - k;
  std::vector<Int> lower;
  for (int i = 2; i <= (k + 4) / 2; ++i) lower.push_back(a_ki(k, i, r));
  return BettiProfile::from_lower(k + 4, lower, gf2_in_span(base.w2, E));
}

}  // namespace tb
