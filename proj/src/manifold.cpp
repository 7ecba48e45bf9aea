#include "tb/manifold.hpp"

#include <algorithm>
#include <numeric>

#include "tb/error.hpp"

namespace tb {

namespace {

constexpr unsigned long kMaxSummands = 100000;

std::vector<Int> cp_betti(int m) {
  std::vector<Int> b(static_cast<std::size_t>(2 * m + 1), 0);
  for (int j = 0; j <= m; ++j) b[static_cast<std::size_t>(2 * j)] = 1;
  return b;
}

Int at(const std::vector<Int>& v, int i) {
  if (i < 0 || i >= static_cast<int>(v.size())) return 0;
  return v[static_cast<std::size_t>(i)];
}

Error invalid(const std::string& msg) { return Error(ErrorCode::InvalidInput, msg); }

}  // namespace

Summand Summand::sphere_product(int k, int l) {
  if (k > l) std::swap(k, l);
  if (k < 2) throw invalid("sphere product factors must have dimension >= 2");
  Summand s;
  s.kind = SummandKind::SphereProduct;
  s.k = k;
  s.l = l;
  return s;
}

Summand Summand::twisted_s2(int n) {
  if (n < 5) throw invalid("twisted S^2 bundle requires total dimension >= 5");
  Summand s;
  s.kind = SummandKind::TwistedS2;
  s.n = n;
  return s;
}

Summand Summand::complex_projective(int m) {
  if (m < 2) throw invalid("CP^m requires m >= 2");
  Summand s;
  s.kind = SummandKind::ComplexProjective;
  s.m = m;
  return s;
}

Summand Summand::cp_sphere_bundle(int m, int r, bool twisted) {
  if (m < 1 || r < 2) throw invalid("E_m^r requires m >= 1 and r >= 2");
  Summand s;
  s.kind = SummandKind::CPSphereBundle;
  s.m = m;
  s.r = r;
  s.twisted = twisted;
  return s;
}

Summand Summand::proj_bundle_s2(int r) {
  if (r < 1) throw invalid("P(E) requires fiber CP^r with r >= 1");
  Summand s;
  s.kind = SummandKind::ProjBundleS2;
  s.r = r;
  return s;
}

Summand Summand::sphere(int n) {
  if (n < 4) throw invalid("standard sphere summand requires dimension >= 4");
  Summand s;
  s.kind = SummandKind::Sphere;
  s.n = n;
  return s;
}

int Summand::dim() const {
  switch (kind) {
    case SummandKind::SphereProduct: return k + l;
    case SummandKind::TwistedS2: return n;
    case SummandKind::ComplexProjective: return 2 * m;
    case SummandKind::CPSphereBundle: return 2 * m + r;
    case SummandKind::ProjBundleS2: return 2 * r + 2;
    case SummandKind::Sphere: return n;
  }
  return 0;
}

bool Summand::spin() const {
  switch (kind) {
    case SummandKind::SphereProduct: return true;
    case SummandKind::TwistedS2: return false;
    case SummandKind::ComplexProjective: return m % 2 == 1;
    case SummandKind::CPSphereBundle: return !twisted;
    case SummandKind::ProjBundleS2: return false;
    case SummandKind::Sphere: return true;
  }
  return true;
}

bool Summand::form_star() const {
  return kind == SummandKind::SphereProduct || kind == SummandKind::TwistedS2 ||
         kind == SummandKind::Sphere;
}

std::vector<Int> Summand::betti() const {
  const int d = dim();
  std::vector<Int> b(static_cast<std::size_t>(d + 1), 0);
  b[0] += 1;
  b[static_cast<std::size_t>(d)] += 1;
  switch (kind) {
    case SummandKind::SphereProduct:
      b[static_cast<std::size_t>(k)] += 1;
      b[static_cast<std::size_t>(l)] += 1;
      break;
    case SummandKind::TwistedS2:
      b[2] += 1;
      b[static_cast<std::size_t>(n - 2)] += 1;
      break;
    case SummandKind::ComplexProjective:
      b = cp_betti(m);
      break;
    case SummandKind::CPSphereBundle: {
      const std::vector<Int> c = cp_betti(m);
      for (int i = 0; i <= d; ++i) b[static_cast<std::size_t>(i)] = at(c, i) + at(c, i - r);
      break;
    }
    case SummandKind::ProjBundleS2: {
      const std::vector<Int> c = cp_betti(r);
      for (int i = 0; i <= d; ++i) b[static_cast<std::size_t>(i)] = at(c, i) + at(c, i - 2);
      break;
    }
    case SummandKind::Sphere:
      break;
  }
  return b;
}

std::size_t Summand::h2_rank() const { return betti()[2].get_ui(); }

std::vector<int> Summand::w2() const {
  switch (kind) {
    case SummandKind::SphereProduct: return std::vector<int>(h2_rank(), 0);
    case SummandKind::TwistedS2: return {1};
    case SummandKind::ComplexProjective: return {m % 2 == 0 ? 1 : 0};
    case SummandKind::CPSphereBundle:
      // pullback generator first; for r = 2 the fiber class follows
      if (r == 2) return {twisted ? 1 : 0, 0};
      return {twisted ? 1 : 0};
    case SummandKind::ProjBundleS2:
      // (class from S^2, hyperplane class); odd first Chern class of the bundle
      return {1, (r + 1) % 2};
    case SummandKind::Sphere: return {};
  }
  return {};
}

int Summand::first_degree() const {
  switch (kind) {
    case SummandKind::SphereProduct: return k;
    case SummandKind::Sphere: return n;
    default: return 2;
  }
}

std::string Summand::name() const {
  auto s = [](int x) { return std::to_string(x); };
  switch (kind) {
    case SummandKind::SphereProduct: return "S^" + s(k) + "xS^" + s(l);
    case SummandKind::TwistedS2: return "S^2~xS^" + s(n - 2);
    case SummandKind::ComplexProjective: return "CP^" + s(m);
    case SummandKind::CPSphereBundle: return std::string(twisted ? "~E_" : "E_") + s(m) + "^" + s(r);
    case SummandKind::ProjBundleS2: return "P(E)[CP^" + s(r) + "]";
    case SummandKind::Sphere: return "S^" + s(n);
  }
  return "?";
}

std::string ConnectedSumExpr::name() const {
  if (summands.empty()) return "S^" + std::to_string(dim);
  std::string out;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (i) out += " # ";
    out += summands[i].name();
  }
  return out;
}

BettiProfile BettiProfile::from_lower(int dim, const std::vector<Int>& lower, bool spin) {
  BettiProfile p;
  p.dim = dim;
  p.spin = spin;
  p.betti.assign(static_cast<std::size_t>(dim + 1), 0);
  p.betti[0] = 1;
  p.betti[static_cast<std::size_t>(dim)] = 1;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    const int i = static_cast<int>(j) + 2;
    if (i > dim / 2) throw invalid("too many Betti numbers for dimension");
    p.betti[static_cast<std::size_t>(i)] = lower[j];
    p.betti[static_cast<std::size_t>(dim - i)] = lower[j];
  }
  return p;
}

Int BettiProfile::euler_characteristic() const {
  Int chi = 0;
  for (std::size_t i = 0; i < betti.size(); ++i) chi += (i % 2 == 0) ? betti[i] : Int(-betti[i]);
  return chi;
}

std::string BettiProfile::name() const {
  std::string out = "dim " + std::to_string(dim) + " b2..b" + std::to_string(dim - 2) + "=(";
  for (int i = 2; i <= dim - 2; ++i) {
    if (i > 2) out += ",";
    out += b(i).get_str();
  }
  return out + (spin ? ") spin" : ") non-spin");
}

IntVec H2Basis::w2() const {
  IntVec w;
  for (const H2Generator& g : generators) w.push_back(g.w2);
  return w;
}

void validate(const ConnectedSumExpr& expr) {
  if (expr.dim < 4) throw invalid("connected sum dimension must be >= 4");
  for (const Summand& s : expr.summands)
    if (s.dim() != expr.dim)
      throw Error(ErrorCode::DimensionMismatch, "summand dimension differs from expression dimension",
                  {{"summand", s.name()}, {"dim", std::to_string(expr.dim)}});
}

bool is_form_star(const ConnectedSumExpr& expr) {
  if (expr.dim < 5) return false;
  return std::all_of(expr.summands.begin(), expr.summands.end(),
                     [](const Summand& s) { return s.form_star(); });
}

void validate_profile(const BettiProfile& p) {
  auto bad = [&](const std::string& msg) {
    return Error(ErrorCode::InvariantViolation, msg, {{"profile", p.name()}});
  };
  if (p.dim < 4) throw Error(ErrorCode::InvariantViolation, "profile dimension must be >= 4");
  if (p.betti.size() != static_cast<std::size_t>(p.dim + 1))
    throw Error(ErrorCode::InvariantViolation, "Betti vector length must be dim + 1");
  if (p.b(0) != 1 || p.b(p.dim) != 1) throw bad("b_0 and b_n must be 1");
  if (p.b(1) != 0 || p.b(p.dim - 1) != 0) throw bad("b_1 and b_{n-1} must vanish");
  for (int i = 0; i <= p.dim; ++i) {
    if (p.b(i) < 0) throw bad("negative Betti number");
    if (p.b(i) != p.b(p.dim - i)) throw bad("Poincare duality fails");
  }
}

void validate_form_star(const BettiProfile& p) {
  validate_profile(p);
  if (p.dim < 5) throw Error(ErrorCode::InvariantViolation, "form (*) requires dimension >= 5");
  if (p.dim % 2 == 0 && mpz_odd_p(p.b(p.dim / 2).get_mpz_t()))
    throw Error(ErrorCode::InvariantViolation, "middle Betti number must be even", {{"profile", p.name()}});
  if (!p.spin && p.b(2) < 1)
    throw Error(ErrorCode::InvariantViolation, "non-spin profile requires b_2 >= 1", {{"profile", p.name()}});
}

BettiProfile betti_profile(const ConnectedSumExpr& expr) {
  validate(expr);
  BettiProfile p;
  p.dim = expr.dim;
  p.betti.assign(static_cast<std::size_t>(expr.dim + 1), 0);
  p.betti[0] = 1;
  p.betti[static_cast<std::size_t>(expr.dim)] = 1;
  p.spin = true;
  for (const Summand& s : expr.summands) {
    const std::vector<Int> b = s.betti();
    for (int i = 1; i < expr.dim; ++i) p.betti[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)];
    if (!s.spin()) p.spin = false;
  }
  return p;
}

ConnectedSumExpr from_betti(const BettiProfile& p) {
  validate_form_star(p);
  const int n = p.dim;
  ConnectedSumExpr e{n, {}};
  auto count = [&](const Int& c) {
    if (!c.fits_ulong_p() || c.get_ui() > kMaxSummands)
      throw Error(ErrorCode::OutOfRange, "Betti number too large to expand", {{"value", c.get_str()}});
    return c.get_ui();
  };
  unsigned long b2 = count(p.b(2));
  if (!p.spin) {
    e.summands.push_back(Summand::twisted_s2(n));
    --b2;
  }
  for (unsigned long j = 0; j < b2; ++j) e.summands.push_back(Summand::sphere_product(2, n - 2));
  for (int k = 3; 2 * k <= n; ++k) {
    unsigned long c = count(p.b(k));
    if (2 * k == n) c /= 2;
    for (unsigned long j = 0; j < c; ++j) e.summands.push_back(Summand::sphere_product(k, n - k));
  }
  return e;
}

std::vector<std::size_t> canonical_order(const ConnectedSumExpr& expr) {
  std::vector<std::size_t> idx(expr.summands.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return expr.summands[a].sort_key() < expr.summands[b].sort_key();
  });
  return idx;
}

ConnectedSumExpr canonicalize(const ConnectedSumExpr& expr) {
  validate(expr);
  if (!is_form_star(expr))
    throw Error(ErrorCode::Unsupported, "canonical forms are defined only for form (*) expressions",
                {{"expression", expr.name()}});
  ConnectedSumExpr out{expr.dim, {}};
  bool have_twisted = false;
  for (const Summand& s : expr.summands) {
    if (s.kind == SummandKind::Sphere) continue;
    if (s.kind == SummandKind::TwistedS2) {
      out.summands.push_back(have_twisted ? Summand::sphere_product(2, expr.dim - 2) : s);
      have_twisted = true;
      continue;
    }
    out.summands.push_back(s);
  }
  std::stable_sort(out.summands.begin(), out.summands.end(),
                   [](const Summand& a, const Summand& b) { return a.sort_key() < b.sort_key(); });
  return out;
}

bool is_diffeomorphic(const ConnectedSumExpr& a, const ConnectedSumExpr& b) {
  for (const ConnectedSumExpr* e : {&a, &b})
    if (!is_form_star(*e))
      throw Error(ErrorCode::Unsupported, "diffeomorphism test is defined only for form (*) expressions",
                  {{"expression", e->name()}});
  return betti_profile(a) == betti_profile(b);
}

H2Basis h2_basis(const ConnectedSumExpr& expr) {
  H2Basis basis;
  for (std::size_t i = 0; i < expr.summands.size(); ++i)
    for (int w : expr.summands[i].w2()) basis.generators.push_back({i, w});
  return basis;
}

std::vector<IntVec> restrictions(const ConnectedSumExpr& expr, const IntVec& e) {
  const H2Basis basis = h2_basis(expr);
  if (e.size() != basis.size())
    throw Error(ErrorCode::DimensionMismatch, "Euler vector length differs from the degree-2 basis",
                {{"expected", std::to_string(basis.size())}, {"got", std::to_string(e.size())}});
  std::vector<IntVec> out(expr.summands.size());
  for (std::size_t g = 0; g < basis.size(); ++g) out[basis.generators[g].summand].push_back(e[g]);
  return out;
}

ConnectedSumExpr connected_sum(int dim, std::vector<ConnectedSumExpr> parts) {
  ConnectedSumExpr out{dim, {}};
  for (ConnectedSumExpr& p : parts) {
    if (p.dim != dim) throw Error(ErrorCode::DimensionMismatch, "connected sum of different dimensions");
    for (Summand& s : p.summands) out.summands.push_back(std::move(s));
  }
  return out;
}

}  // namespace tb
