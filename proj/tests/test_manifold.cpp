#include "support.hpp"

using namespace tbtest;

namespace {

const Summand S24 = Summand::sphere_product(2, 4);
const Summand S33 = Summand::sphere_product(3, 3);
const Summand S23 = Summand::sphere_product(2, 3);

// Betti numbers of a connected sum, added up summand by summand from cell counts.
std::vector<Int> additive_betti(const ConnectedSumExpr& e) {
  std::vector<Int> b(static_cast<std::size_t>(e.dim + 1), 0);
  b[0] = b[static_cast<std::size_t>(e.dim)] = 1;
  for (const Summand& s : e.summands) {
    const std::vector<Int> sb = s.betti();
    for (int i = 1; i < e.dim; ++i) b[static_cast<std::size_t>(i)] += sb[static_cast<std::size_t>(i)];
  }
  return b;
}

ConnectedSumExpr random_expr(Rng& rng) {
  const int n = uniform(rng, 5, 10);
  ConnectedSumExpr e{n, {}};
  const int parts = uniform(rng, 0, 4);
  for (int p = 0; p < parts; ++p) {
    switch (uniform(rng, 0, 4)) {
      case 0: e.summands.push_back(Summand::twisted_s2(n)); break;
      case 1: {
        const int k = uniform(rng, 2, n / 2);
        e.summands.push_back(Summand::sphere_product(k, n - k));
        break;
      }
      case 2:
        if (n % 2 == 0) e.summands.push_back(Summand::complex_projective(n / 2));
        break;
      case 3: {
        const int m = uniform(rng, 1, (n - 2) / 2);
        if (n - 2 * m >= 2) e.summands.push_back(Summand::cp_sphere_bundle(m, n - 2 * m, uniform(rng, 0, 1) == 1));
        break;
      }
      default:
        if (n % 2 == 0 && n >= 4) e.summands.push_back(Summand::proj_bundle_s2((n - 2) / 2));
    }
  }
  return e;
}

}  // namespace

TEST_CASE("Betti profile examples") {
  const BettiProfile a = betti_profile(repeat(5, S23, 2));
  CHECK(a == profile(5, {2}, true));
  CHECK(betti_profile(sum(6, {Summand::twisted_s2(6)})) == profile(6, {1, 0}, false));
  CHECK(betti_profile(sum(6, {Summand::complex_projective(3), S33})) == profile(6, {1, 2}, true));
}

TEST_CASE("summand invariants") {
  CHECK(Summand::complex_projective(2).w2() == std::vector<int>{1});
  CHECK(Summand::complex_projective(3).w2() == std::vector<int>{0});
  CHECK_FALSE(Summand::complex_projective(2).spin());
  CHECK(Summand::sphere_product(3, 4).dim() == 7);
  CHECK_FALSE(Summand::twisted_s2(7).spin());
  CHECK(Summand::twisted_s2(7).form_star());
  CHECK_FALSE(Summand::complex_projective(3).form_star());
  CHECK(Summand::cp_sphere_bundle(2, 4, false).dim() == 8);
  CHECK(Summand::proj_bundle_s2(2).dim() == 6);
}

TEST_CASE("invalid summands and expressions are rejected") {
  CHECK(code_of([] { Summand::sphere_product(1, 4); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { Summand::complex_projective(0); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { validate(sum(6, {Summand::sphere_product(3, 4)})); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { validate_profile(profile(6, {-1, 0}, true)); }) == ErrorCode::InvariantViolation);
  CHECK(code_of([] { validate_form_star(profile(6, {0, 1}, true)); }) == ErrorCode::InvariantViolation);
  CHECK(code_of([] { validate_form_star(profile(6, {0, 2}, false)); }) == ErrorCode::InvariantViolation);
}

TEST_CASE("from_betti examples") {
  CHECK(from_betti(profile(5, {0}, true)).summands.empty());
  CHECK(from_betti(profile(5, {0}, true)).name() == "S^5");
  CHECK(is_diffeomorphic(from_betti(profile(6, {1, 2}, true)), sum(6, {S24, S33})));
  CHECK(is_diffeomorphic(from_betti(profile(6, {1, 0}, false)), sum(6, {Summand::twisted_s2(6)})));
}

TEST_CASE("canonicalize examples") {
  const Summand T = Summand::twisted_s2(6);
  CHECK(canonicalize(sum(6, {T, T})) == sum(6, {T, S24}));
  CHECK(canonicalize(sum(6, {S33})) == sum(6, {S33}));
  CHECK(canonicalize(sum(6, {S24, T})) == sum(6, {T, S24}));
}

TEST_CASE("diffeomorphism examples") {
  const Summand T = Summand::twisted_s2(6);
  CHECK(is_diffeomorphic(sum(6, {T, T}), sum(6, {T, S24})));
  CHECK_FALSE(is_diffeomorphic(sum(6, {S24}), sum(6, {S33})));
  CHECK(is_diffeomorphic(sum(5, {}), sum(5, {})));
}

TEST_CASE("H2 basis examples") {
  const H2Basis a = h2_basis(sum(7, {Summand::sphere_product(2, 5), Summand::sphere_product(3, 4)}));
  CHECK(a.size() == 1);
  CHECK(a.w2() == vec({0}));
  CHECK(h2_basis(sum(7, {Summand::twisted_s2(7), Summand::sphere_product(2, 5)})).w2() == vec({1, 0}));
  CHECK(h2_basis(sum(4, {Summand::complex_projective(2)})).w2() == vec({1}));
  CHECK(h2_basis(sum(6, {Summand::cp_sphere_bundle(2, 2, true)})).size() == 2);
}

TEST_CASE("Betti numbers of a connected sum are additive and satisfy duality") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const ConnectedSumExpr e = random_expr(rng);
    const BettiProfile p = betti_profile(e);
    CHECK(p.betti == additive_betti(e));
    for (int i = 0; i <= p.dim; ++i) CHECK(p.b(i) == p.b(p.dim - i));
    CHECK(p.b(2) == Int(static_cast<long>(h2_basis(e).size())));
    CHECK(p.spin == std::all_of(e.summands.begin(), e.summands.end(), [](const Summand& s) { return s.spin(); }));
  }
}

TEST_CASE("form (*) profiles and expressions correspond") {
  Rng rng(22);
  for (int t = 0; t < 300; ++t) {
    const ConnectedSumExpr e = random_star_expr(rng, 5, 12, 5);
    const ConnectedSumExpr c = canonicalize(e);
    CHECK(canonicalize(c) == c);
    CHECK(betti_profile(c) == betti_profile(e));
    CHECK(from_betti(betti_profile(e)) == c);
    CHECK(is_diffeomorphic(e, c));
    const long twisted = std::count_if(c.summands.begin(), c.summands.end(), [](const Summand& s) { return s.kind == SummandKind::TwistedS2; });
    CHECK(twisted <= 1);
  }
}

TEST_CASE("canonical order is a stable sort by summand key") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const ConnectedSumExpr e = random_star_expr(rng, 5, 9, 6);
    const std::vector<std::size_t> order = canonical_order(e);
    for (std::size_t i = 1; i < order.size(); ++i) {
      const auto a = e.summands[order[i - 1]].sort_key(), b = e.summands[order[i]].sort_key();
      CHECK((a < b || (a == b && order[i - 1] < order[i])));
    }
  }
}

TEST_CASE("huge Betti numbers are out of range") {
  CHECK(code_of([] { from_betti(profile(6, {0, 2000000}, true)); }) == ErrorCode::OutOfRange);
}
