#include "support.hpp"

#include "tb/bundle.hpp"
#include "tb/oracle.hpp"

using namespace tbtest;

namespace {

const Summand S23 = Summand::sphere_product(2, 3);
const Summand S24 = Summand::sphere_product(2, 4);
const Summand S33 = Summand::sphere_product(3, 3);

IntVec random_primitive(Rng& rng, std::size_t g, int bound) {
  for (;;) {
    IntVec e(g);
    for (Int& x : e) x = uniform(rng, -bound, bound);
    if (is_primitive(e)) return e;
  }
}

bool euler_spin(const ConnectedSumExpr& base, const IntVec& e) {
  return gf2_in_span(h2_basis(base).w2(), IntMat::from_rows({e}, e.size()));
}

}  // namespace

TEST_CASE("suspension examples") {
  CHECK(is_diffeomorphic(suspend(S33, IntVec{}, false), repeat(7, Summand::sphere_product(3, 4), 2)));
  CHECK(is_diffeomorphic(suspend(S24, vec({2}), false), sum(7, {Summand::sphere_product(2, 5), Summand::sphere_product(3, 4)})));
  CHECK(is_diffeomorphic(suspend(Summand::sphere(5), IntVec{}, true), sum(6, {})));
  // The circle bundle over CP^2 with generator Euler class is S^5; suspending adds one S^2xS^3 summand.
  CHECK(is_diffeomorphic(suspend(Summand::complex_projective(2), vec({1}), false), sum(5, {S23})));
}

TEST_CASE("suspension of S^2xS^{n-2} depends on twisting and divisibility parity") {
  const Summand T = Summand::twisted_s2(7);
  const Summand P = Summand::sphere_product(2, 5);
  const Summand Q = Summand::sphere_product(3, 4);
  CHECK(is_diffeomorphic(suspend(S24, vec({1}), false), sum(7, {T, Q})));
  CHECK(is_diffeomorphic(suspend(S24, vec({1}), true), sum(7, {P, Q})));
  CHECK(is_diffeomorphic(suspend(S24, vec({3}), true), sum(7, {P, Q})));
  CHECK(is_diffeomorphic(suspend(Summand::twisted_s2(6), vec({1}), false), sum(7, {P, Q})));
  CHECK(is_diffeomorphic(suspend(Summand::twisted_s2(6), vec({2}), false), sum(7, {T, Q})));
  CHECK(is_diffeomorphic(suspend(Summand::twisted_s2(6), vec({1}), true), sum(7, {T, Q})));
}

TEST_CASE("suspension rejects nonzero classes on summands without H^2") {
  CHECK(code_of([] { suspend(S33, vec({1}), false); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("circle bundle examples") {
  CHECK(circle_bundle(sum(6, {Summand::complex_projective(3)}), vec({1})) == profile(7, {0, 0}, true));
  CHECK(circle_bundle(sum(5, {Summand::twisted_s2(5)}), vec({1})) == profile(6, {0, 2}, true));
  // Gysin count: b_3 = b_3 + b_2 = 4, so S^2xS^4 # 2(S^3xS^3) with vanishing Euler characteristic.
  CHECK(circle_bundle(repeat(5, S23, 2), vec({1, 0})) == profile(6, {1, 4}, true));
  CHECK(circle_bundle(sum(6, {S24}), vec({1})) == profile(7, {0, 1}, true));
  CHECK(circle_bundle(sum(6, {Summand::complex_projective(3), S33}), vec({1})) == profile(7, {0, 2}, true));
}

TEST_CASE("circle bundles over non-simply-connected data are rejected") {
  CHECK(code_of([] { circle_bundle(sum(6, {Summand::complex_projective(3)}), vec({2})); }) == ErrorCode::NotPrimitive);
  CHECK(code_of([] { circle_bundle(sum(6, {S24}), vec({1, 0})); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("mixed bases without a usable summand") {
  const ConnectedSumExpr base = sum(6, {Summand::complex_projective(3), S24});
  CHECK(code_of([&] { circle_bundle(base, vec({5, 2})); }) == ErrorCode::SideCondition);
  CHECK(code_of([&] { circle_bundle(base, vec({2, 5})); }) == ErrorCode::Unsupported);
  CHECK(code_of([&] { circle_bundle(base, vec({3, 2})); }) == ErrorCode::Unsupported);
}

TEST_CASE("mixed bases use a summand with a known total space") {
  const ConnectedSumExpr base = sum(6, {Summand::complex_projective(3), S24, S24});
  // Cup product with e = h + 3a_1 + 2a_2 has rank one in degrees 0, 2 and 4, so the Gysin
  // sequence gives b_2 = 3 - 1 = 2 and b_3 = 3 - 1 = 2; all w2 coordinates vanish.
  CHECK(circle_bundle(base, vec({1, 3, 2})) == profile(7, {2, 2}, true));
  // The S^2xS^4 coordinates normalize to a unit, but CP^3 with class 2 has no suspension.
  CHECK(code_of([&] { circle_bundle(base, vec({2, 3, 2})); }) == ErrorCode::Unsupported);
}

TEST_CASE("circle bundles over form (*) bases follow the Gysin recurrence") {
  Rng rng(31);
  for (int t = 0; t < 400; ++t) {
    const ConnectedSumExpr base = random_star_expr(rng, 5, 11, 4);
    const std::size_t g = h2_basis(base).size();
    if (g == 0) continue;
    const IntVec e = random_primitive(rng, g, 4);
    const BettiProfile p = circle_bundle(base, e);
    CHECK(p.dim == base.dim + 1);
    CHECK(p.betti == gysin_step(betti_profile(base).betti));
    CHECK(p.spin == euler_spin(base, e));
    CHECK(p.euler_characteristic() == 0);
    CHECK(p.b(2) == Int(static_cast<long>(g)) - 1);
    CHECK(betti_profile(decomposition_path(base, e)) == p);
  }
}

TEST_CASE("GF(2) spin test equals the divisibility clause") {
  Rng rng(32);
  for (int t = 0; t < 300; ++t) {
    const ConnectedSumExpr base = random_star_expr(rng, 5, 10, 4);
    const std::size_t g = h2_basis(base).size();
    if (g == 0) continue;
    const IntVec e = random_primitive(rng, g, 6);
    CHECK(divisibility_spin_clause(base, e) == euler_spin(base, e));
  }
}

TEST_CASE("Euler class normalization keeps w2 and reaches a unit coordinate") {
  Rng rng(33);
  for (int t = 0; t < 300; ++t) {
    const std::size_t g = static_cast<std::size_t>(uniform(rng, 1, 4));
    IntVec w2(g);
    for (Int& x : w2) x = uniform(rng, 0, 1);
    const IntVec e = random_primitive(rng, g, 9);
    const IntVec f = normalize_euler(w2, e);
    CHECK(is_primitive(f));
    CHECK(gf2_in_span(w2, IntMat::from_rows({e}, g)) == gf2_in_span(w2, IntMat::from_rows({f}, g)));
    CHECK(std::any_of(f.begin(), f.end(), [](const Int& x) { return abs(x) == 1; }));
  }
}

TEST_CASE("torus bundle examples") {
  const ConnectedSumExpr base = sum(5, {Summand::twisted_s2(5), S23});
  const BundleResult r = torus_bundle(base, mat({{1, 0}, {0, 1}}));
  CHECK(r.stages.size() == 2);
  CHECK(r.total.dim == 7);
  CHECK(r.total.b(2) == 0);
  CHECK(r.total.b(3) == r.stages[0].b(2) + r.stages[0].b(3));
  try {
    torus_bundle(base, mat({{2, 0}, {0, 1}}));
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBasisExtending);
    bool found = false;
    for (const auto& [k, v] : e.diagnostics()) found = found || (k == "fundamental_group" && v.find("Z/2") != std::string::npos);
    CHECK(found);
  }
}

TEST_CASE("rank one torus bundles are circle bundles") {
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    const ConnectedSumExpr base = random_star_expr(rng, 5, 10, 4);
    const std::size_t g = h2_basis(base).size();
    if (g == 0) continue;
    const IntVec e = random_primitive(rng, g, 4);
    CHECK(torus_bundle(base, IntMat::from_rows({e}, g)).total == circle_bundle(base, e));
  }
}

TEST_CASE("torus bundles over form (*) bases iterate the recurrence") {
  Rng rng(35);
  for (int t = 0; t < 200; ++t) {
    const ConnectedSumExpr base = random_star_expr(rng, 5, 8, 5);
    const std::size_t g = h2_basis(base).size();
    if (g < 2) continue;
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(std::min<std::size_t>(g, 3))));
    const IntMat E = random_unimodular(rng, g, 8).top_rows(k);
    const BundleResult r = torus_bundle(base, E);
    std::vector<Int> b = betti_profile(base).betti;
    for (std::size_t s = 0; s < k; ++s) {
      b = gysin_step(b);
      CHECK(r.stages[s].betti == b);
    }
    CHECK(r.total.spin == gf2_in_span(h2_basis(base).w2(), E));
  }
}

TEST_CASE("torus bundles over four-manifolds") {
  CHECK(torus_bundle_over_4({1, vec({1})}, mat({{1}})) == profile(5, {0}, true));
  CHECK(torus_bundle_over_4({2, vec({1, 1})}, mat({{1, 1}, {0, 1}})) == profile(6, {0, 2}, true));
  CHECK(torus_bundle_over_4({3, vec({1, 1, 1})}, mat({{1, 0, 0}})) == profile(5, {2}, false));
  CHECK(code_of([] { torus_bundle_over_4({1, vec({1})}, mat({{1}, {0}})); }) == ErrorCode::NotBasisExtending);
}

TEST_CASE("a_ki examples") {
  CHECK(a_ki(3, 2, 5) == 5);
  CHECK(a_ki(2, 3, 0) == 2);
  CHECK(a_ki(0, 2, 7) == 7);
  CHECK(code_of([] { a_ki(2, 1, 0); }) == ErrorCode::OutOfRange);
}

TEST_CASE("a_ki is the stage iteration of the Gysin recurrence") {
  for (int k = 1; k <= 6; ++k)
    for (int r = 0; r <= 6; ++r) {
      const std::vector<Int> b = aki_via_stages(k, r);
      for (int i = 2; i <= k + 2; ++i) CHECK(a_ki(k, i, r) == b[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(0, 0) == 1);
}
