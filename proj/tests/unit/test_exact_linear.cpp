#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "rdlie/errors.hpp"
#include "rdlie/linear.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace rdlie;
using rdlie::testing::mat;
using rdlie::testing::vec;

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").to_string() == "-7");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(factorial(5) == Rational(120));
  CHECK(binomial(6, 2) == Rational(15));
}

TEST_CASE("dual numbers square t to zero") {
  rdlie::testing::Gen gen(11);
  for (int k = 0; k < 50; ++k) {
    DualScalar x(gen.scalar(5, 0), gen.scalar(5, 0));
    CHECK((x * DualScalar::t() * DualScalar::t()).is_zero());
  }
  DualScalar a(Rational(2), Rational(3)), b(Rational(5), Rational(7));
  CHECK(a * b == DualScalar(Rational(10), Rational(2 * 7 + 3 * 5)));
}

TEST_CASE("rref examples") {
  auto id = RationalMatrix::identity(2);
  auto f = rref(id);
  CHECK(f.reduced == id);
  CHECK(f.pivots == std::vector<std::size_t>{0, 1});

  auto g = rref(mat({{1, 2}, {2, 4}}));
  CHECK(g.reduced == mat({{1, 2}, {0, 0}}));
  CHECK(g.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(RationalMatrix(3, 3)).dim() == 3);
  CHECK(kernel_basis(RationalMatrix::identity(4)).dim() == 0);
  auto k = kernel_basis(mat({{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.vectors[0] == vec({-1, 1}));
}

TEST_CASE("quotient dimension") {
  SubspaceBasis kernel{3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}};
  SubspaceBasis image{3, {vec({1, 1, 0})}};
  CHECK(quotient_dim(kernel, image) == 2);
  CHECK(quotient_dim(kernel, kernel) == 0);
  SubspaceBasis small{3, {vec({1, 0, 0})}};
  SubspaceBasis outside{3, {vec({0, 1, 0})}};
  CHECK_THROWS_AS(quotient_dim(small, outside), ImageNotContained);
  auto reps = quotient_representatives(kernel, image);
  CHECK(reps.size() == 2);
}

TEST_CASE("solve reports a rank certificate when infeasible") {
  auto a = mat({{1, 1}, {2, 2}});
  auto ok = solve(a, vec({1, 2}));
  REQUIRE(ok.solution);
  CHECK(a.apply(*ok.solution) == vec({1, 2}));
  auto bad = solve(a, vec({1, 3}));
  CHECK(!bad.solution);
  CHECK(bad.rank_coefficients == 1);
  CHECK(bad.rank_augmented == 2);
}

TEST_CASE("property: rank-nullity and rref idempotence") {
  rdlie::testing::Gen gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + gen.index(5), c = 1 + gen.index(5);
    auto m = gen.matrix(r, c, 3);
    auto form = rref(m);
    CHECK(form.rank() + kernel_basis(m).dim() == c);
    CHECK(rref(form.reduced).reduced == form.reduced);
    for (auto const& v : kernel_basis(m).vectors) CHECK(is_zero(m.apply(v)));
    CHECK(image_basis(m).dim() == form.rank());
  }
}
