#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rdlie/linfty.hpp"
#include "rdlie/nr.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace rdlie;
using namespace rdlie::testing;

namespace {

LInftyElement random_element(Gen& gen, std::size_t dg, std::size_t dh, int degree) {
  auto e = LInftyElement::zero(dg, dh, degree);
  std::size_t n = static_cast<std::size_t>(degree + 2);
  if (gen.coin(0.8)) {
    e.m = MixedCochain::from_coordinates(dg, dh, n, gen.vector(MixedCochain::coordinate_count(dg, dh, n), 1)).lift();
  }
  if (degree >= 0 && gen.coin(0.8)) e.f = gen.alternating(dg, n - 1, dh, 1);
  return e;
}

LInftyElement aff1_alpha(RationalMatrix const& d) { return structure_element(LieActTriple::adjoint(aff1()), d); }

}  // namespace

TEST_CASE("derived bracket examples") {
  auto t = LieActTriple::adjoint(aff1());
  auto pi = LInftyElement::from_m(2, 2, t.structure_lift());
  auto l2 = derived_bracket({pi, pi});
  CHECK(l2.is_zero());
  CHECK(l2.degree == 1);

  Gen gen(4);
  for (int k = 0; k < 10; ++k) {
    auto dm = gen.matrix(2, 2);
    auto mu = LInftyElement::from_m(2, 2, t.mu_lift());
    auto d = LInftyElement::from_f(2, 2, AlternatingMap::linear(dm));
    auto l3 = derived_bracket({mu, d, d});
    std::vector<std::size_t> pair{0, 1};
    CHECK(l3.f.on_basis(pair) == Rational(2) * aff1().bracket(dm.column(0), dm.column(1)));
    // graded symmetry: D has degree 0, so positions commute
    CHECK(derived_bracket({d, mu, d}) == l3);
    CHECK(derived_bracket({d, d, mu}) == l3);
    // pure F arguments
    CHECK(derived_bracket({d}).is_zero());
    CHECK(derived_bracket({d, d}).is_zero());
    CHECK(derived_bracket({d, d, d}).is_zero());
  }
}

TEST_CASE("Maurer-Cartan examples") {
  auto t = LieActTriple::adjoint(aff1());
  CHECK(mc_check_linfty(t, scalar_matrix(2, -1)));
  CHECK_FALSE(mc_check_linfty(t, scalar_matrix(2, 1)));
  auto zero = LieActTriple::unchecked(abelian(2), abelian(2), {RationalMatrix(2, 2), RationalMatrix(2, 2)});
  CHECK(mc_check_linfty(zero, RationalMatrix(2, 2)));
}

TEST_CASE("property: L∞ Maurer-Cartan equation agrees with direct validation") {
  Gen gen(101);
  int pos = 0, neg = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t dg = 1 + gen.index(2), dh = 1 + gen.index(2);
    LieAlgebra g = dg == 2 && gen.coin() ? aff1() : abelian(dg);
    LieAlgebra h = dh == 2 && gen.coin() ? aff1() : abelian(dh);
    std::vector<RationalMatrix> rho(dg, RationalMatrix(dh, dh));
    if (gen.coin(0.3)) rho[gen.index(dg)] = gen.matrix(dh, dh, 1);
    auto t = LieActTriple::unchecked(g, h, rho);
    auto d = gen.matrix(dh, dg, 1);
    bool direct = direct_rel_diff_check(t, d);
    (direct ? pos : neg)++;
    CHECK(mc_check_linfty(t, d) == direct);
  }
  CHECK(pos > 0);
  CHECK(neg > 0);
}

TEST_CASE("twisted differential on F computes the Chevalley-Eilenberg differential") {
  auto alpha = aff1_alpha(scalar_matrix(2, -1));
  TwistedBrackets l(alpha);
  Gen gen(6);
  for (int k = 0; k < 10; ++k) {
    auto theta = gen.alternating(2, 1, 2);
    auto x = LInftyElement::from_f(2, 2, theta);
    auto r = l({x});
    CHECK(r.m.is_zero());
    std::vector<std::size_t> pair{0, 1};
    CHECK(r.f.on_basis(pair) == Rational(-1) * Vector(theta.values(bit(1)).begin(), theta.values(bit(1)).end()));
  }
}

TEST_CASE("twisting by zero gives the original brackets") {
  Gen gen(13);
  auto zero = LInftyElement::zero(2, 2, 0);
  TwistedBrackets l(zero);
  for (int k = 0; k < 20; ++k) {
    auto a = random_element(gen, 2, 2, static_cast<int>(gen.index(2)));
    auto b = random_element(gen, 2, 2, static_cast<int>(gen.index(2)));
    CHECK(l({a}) == derived_bracket({a}));
    CHECK(l({a, b}) == derived_bracket({a, b}));
  }
}

TEST_CASE("twisting rejects non-Maurer-Cartan elements") {
  CHECK_THROWS_AS(TwistedBrackets(aff1_alpha(scalar_matrix(2, 1))), NotMaurerCartan);
}

TEST_CASE("property: l1 squares to zero, untwisted and twisted") {
  Gen gen(55);
  std::vector<LInftyElement> alphas = {aff1_alpha(scalar_matrix(2, -1)), aff1_alpha(aff1_projection()),
                                       aff1_alpha(RationalMatrix(2, 2))};
  for (int trial = 0; trial < 60; ++trial) {
    auto x = random_element(gen, 2, 2, static_cast<int>(gen.index(3)) - 1);
    CHECK(derived_bracket({derived_bracket({x})}).is_zero());
    TwistedBrackets l(alphas[gen.index(alphas.size())]);
    CHECK(l({l({x})}).is_zero());
  }
  auto h3alpha = structure_element(LieActTriple::adjoint(h3()), scalar_matrix(3, -1));
  TwistedBrackets l(h3alpha);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_element(gen, 3, 3, static_cast<int>(gen.index(3)) - 1);
    CHECK(l({l({x})}).is_zero());
  }
}

TEST_CASE("property: generalized Jacobi identity up to arity 4") {
  Gen gen(91);
  auto alpha = aff1_alpha(aff1_projection());
  for (std::size_t n = 1; n <= 4; ++n) {
    int trials = n <= 2 ? 30 : (n == 3 ? 15 : 6);
    for (int trial = 0; trial < trials; ++trial) {
      std::size_t dg = 1 + gen.index(2), dh = 1 + gen.index(2);
      std::vector<LInftyElement> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(random_element(gen, dg, dh, static_cast<int>(gen.index(2))));
      CHECK(generalized_jacobi_check(xs));
      std::vector<LInftyElement> ys;
      for (std::size_t i = 0; i < n; ++i) ys.push_back(random_element(gen, 2, 2, static_cast<int>(gen.index(2))));
      CHECK(generalized_jacobi_check_twisted(alpha, ys));
    }
  }
}

TEST_CASE("deformation Maurer-Cartan check") {
  auto base = RelDiffStructure::validate(LieActTriple::adjoint(aff1()), scalar_matrix(2, -1));
  Perturbation zero{AlternatingMap(2, 2, 2), AlternatingMap(2, 2, 2), {RationalMatrix(2, 2), RationalMatrix(2, 2)},
                    RationalMatrix(2, 2)};
  auto r0 = deformation_mc_check(base, zero);
  CHECK(r0.direct);
  CHECK(r0.twisted);

  auto flip = zero;
  flip.d = scalar_matrix(2, 2);  // −Id + 2·Id = Id
  CHECK_FALSE(deformation_mc_check(base, flip).direct);

  Perturbation minus{-aff1().bracket_map(), -aff1().bracket_map(),
                     {Rational(-1) * aff1().ad_basis(0), Rational(-1) * aff1().ad_basis(1)}, scalar_matrix(2, 1)};
  auto rm = deformation_mc_check(base, minus);
  CHECK(rm.direct);
  CHECK(rm.twisted);
}

TEST_CASE("property: deformation check routes agree") {
  Gen gen(202);
  auto base = RelDiffStructure::validate(LieActTriple::adjoint(aff1()), aff1_projection());
  int pos = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Perturbation p{AlternatingMap(2, 2, 2), AlternatingMap(2, 2, 2), {RationalMatrix(2, 2), RationalMatrix(2, 2)},
                   RationalMatrix(2, 2)};
    if (gen.coin(0.3)) p.pi = gen.alternating(2, 2, 2, 1);
    if (gen.coin(0.3)) p.mu = gen.alternating(2, 2, 2, 1);
    if (gen.coin(0.3)) p.rho[gen.index(2)] = gen.matrix(2, 2, 1);
    if (gen.coin(0.6)) p.d = gen.matrix(2, 2, 1);
    DeformationCheck r;
    CHECK_NOTHROW(r = deformation_mc_check(base, p));
    pos += r.direct;
  }
  CHECK(pos > 0);
}
