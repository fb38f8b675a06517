#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rdlie/deform_extend.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace rdlie;
using namespace rdlie::testing;

namespace {

DeformationDatum zero_datum(std::size_t d) { return {AlternatingMap(d, 2, d), RationalMatrix(d, d)}; }

DeformationDatum coboundary_datum(DifferenceLieAlgebra const& a, RationalMatrix const& n) {
  auto c = RegularCochain{1, AlternatingMap::linear(n), AlternatingMap(a.dim(), 0, a.dim())};
  return DeformationDatum::from_cochain(regular_delta(a, c));
}

DeformationDatum add(DeformationDatum const& x, DeformationDatum const& y) {
  return {x.omega_hat + y.omega_hat, x.d_hat + y.d_hat};
}

Vector combine(Gen& gen, std::vector<Vector> const& basis, std::size_t ambient) {
  Vector out = zero_vector(ambient);
  for (auto const& b : basis) out = out + gen.scalar(2) * b;
  return out;
}

// A third of the samples are arbitrary, the rest are cocycles possibly nudged off the kernel.
DeformationDatum sample_datum(Gen& gen, DifferenceLieAlgebra const& a, SubspaceBasis const& cocycles) {
  std::size_t d = a.dim();
  std::size_t count = RegularCochain::coordinate_count(d, 2);
  Vector x;
  switch (gen.index(3)) {
    case 0: x = gen.vector(count, 2); break;
    case 1: x = combine(gen, cocycles.vectors, count); break;
    default: {
      x = combine(gen, cocycles.vectors, count);
      x[gen.index(count)] += Rational(1);
    }
  }
  return DeformationDatum::from_cochain(RegularCochain::from_coordinates(d, 2, x));
}

ExtensionCocycle random_cocycle(Gen& gen, DiffRepresentation const& rep) {
  auto cocycles = kernel_basis(coeff_complex(rep)->matrix(2));
  std::size_t count = CoeffCochain::coordinate_count(rep.base().dim(), rep.v_dim(), 2);
  return ExtensionCocycle::from_cochain(
      CoeffCochain::from_coordinates(rep.base().dim(), rep.v_dim(), 2, combine(gen, cocycles.vectors, count)));
}

ExtensionCocycle shifted(DiffRepresentation const& rep, ExtensionCocycle const& c, RationalMatrix const& n) {
  auto shift = coeff_delta(rep, CoeffCochain{1, AlternatingMap::linear(n), AlternatingMap(rep.base().dim(), 0, rep.v_dim())});
  return {c.omega + shift.f, c.chi + shift.theta.as_matrix()};
}

}  // namespace

TEST_CASE("deformation cocycle examples") {
  for (auto const& f : standard_fixtures()) {
    CHECK(is_deformation_cocycle(f.algebra, zero_datum(f.algebra.dim())));
  }
  auto a = DifferenceLieAlgebra::validate(aff1(), aff1_projection());
  DeformationDatum d{AlternatingMap(2, 2, 2), RationalMatrix(2, 2)};
  d.omega_hat.values(0b11)[0] = 1;
  CHECK_FALSE(dual_number_deformation_valid(a, d));
  CHECK_FALSE(is_deformation_cocycle(a, d));
}

TEST_CASE("property: coboundaries are deformation cocycles") {
  Gen gen(101);
  for (auto const& f : standard_fixtures()) {
    for (int k = 0; k < 10; ++k) {
      auto n = gen.matrix(f.algebra.dim(), f.algebra.dim());
      CHECK_MESSAGE(is_deformation_cocycle(f.algebra, coboundary_datum(f.algebra, n)), f.name);
    }
  }
}

TEST_CASE("property: cocycle condition agrees with dual-number validity") {
  Gen gen(111);
  for (auto const& f : standard_fixtures()) {
    auto cocycles = kernel_basis(regular_complex(f.algebra)->matrix(2));
    int positives = 0, negatives = 0;
    for (int k = 0; k < 60; ++k) {
      auto d = sample_datum(gen, f.algebra, cocycles);
      bool dual = dual_number_deformation_valid(f.algebra, d);
      CHECK(is_deformation_cocycle(f.algebra, d) == dual);
      (dual ? positives : negatives)++;
    }
    CHECK_MESSAGE(positives > 0, f.name);
    if (cocycles.dim() < RegularCochain::coordinate_count(f.algebra.dim(), 2)) CHECK_MESSAGE(negatives > 0, f.name);
  }
}

TEST_CASE("deformation equivalence") {
  Gen gen(121);
  for (auto const& f : standard_fixtures()) {
    CAPTURE(f.name);
    auto const& a = f.algebra;
    auto n_zero = deformation_equivalent(a, zero_datum(a.dim()), zero_datum(a.dim()));
    CHECK(is_equivalence_witness(a, zero_datum(a.dim()), zero_datum(a.dim()), n_zero));

    auto cls = classify_deformations(a, 10);
    for (int k = 0; k < 5; ++k) {
      DeformationDatum base = zero_datum(a.dim());
      for (auto const& r : cls.representatives) {
        auto c = gen.scalar(2);
        base = add(base, {c * r.omega_hat, c * r.d_hat});
      }
      auto n0 = gen.matrix(a.dim(), a.dim());
      auto other = add(base, coboundary_datum(a, n0));
      auto n = deformation_equivalent(a, other, base);
      CHECK(is_equivalence_witness(a, other, base, n));
    }
    for (std::size_t i = 0; i < cls.representatives.size(); ++i) {
      CHECK_THROWS_AS(deformation_equivalent(a, cls.representatives[i], zero_datum(a.dim())), NotEquivalent);
      for (std::size_t j = i + 1; j < cls.representatives.size(); ++j) {
        CHECK_THROWS_AS(deformation_equivalent(a, cls.representatives[i], cls.representatives[j]), NotEquivalent);
      }
    }
  }
  auto a = DifferenceLieAlgebra::validate(aff1(), aff1_projection());
  DeformationDatum bad{AlternatingMap(2, 2, 2), RationalMatrix(2, 2)};
  bad.omega_hat.values(0b11)[0] = 1;
  CHECK_THROWS_AS(deformation_equivalent(a, bad, zero_datum(2)), NotCocycle);
}

TEST_CASE("deformation classification") {
  auto line = classify_deformations(DifferenceLieAlgebra::validate(abelian(1), scalar_matrix(1, 0)), 5);
  CHECK(line.dimension == 1);
  REQUIRE(line.representatives.size() == 1);
  CHECK(line.representatives[0].omega_hat.is_zero());
  CHECK(!line.representatives[0].d_hat.is_zero());

  // With D = 0 the operator may be deformed by any derivation, and DN − ND vanishes.
  auto sl = classify_deformations(DifferenceLieAlgebra::validate(sl2(), scalar_matrix(3, 0)), 5);
  CHECK(sl.dimension == 3);
  for (auto const& r : sl.representatives) {
    CHECK(r.omega_hat.is_zero());
    auto d = AlternatingMap::linear(r.d_hat);
    std::vector<RationalMatrix> ad;
    for (std::size_t i = 0; i < 3; ++i) ad.push_back(sl2().ad_basis(i));
    CHECK(ce_coboundary(sl2(), ad, d).is_zero());
  }

  auto aff = classify_deformations(DifferenceLieAlgebra::validate(aff1(), scalar_matrix(2, 0)), 5);
  CHECK(aff.representatives.size() == aff.dimension);
  for (auto const& r : aff.representatives) {
    CHECK(dual_number_deformation_valid(DifferenceLieAlgebra::validate(aff1(), scalar_matrix(2, 0)), r));
  }
}

TEST_CASE("extension from the zero cocycle is the semidirect product") {
  for (auto const& [name, rep] : standard_representations()) {
    CAPTURE(name);
    std::size_t dg = rep.base().dim(), dv = rep.v_dim();
    auto e = extension_from_cocycle(rep, {AlternatingMap(dg, 2, dv), RationalMatrix(dv, dg)});
    auto semi = semidirect_difference(rep);
    CHECK(e.total().g().bracket_map() == semi.g().bracket_map());
    CHECK(e.total().d() == semi.d());
    auto back = cocycle_from_extension(e, e.canonical_section());
    CHECK(back.cocycle.omega.is_zero());
    CHECK(back.cocycle.chi.is_zero());
  }
}

TEST_CASE("extension of a line by a line with chi = Id") {
  auto line = DifferenceLieAlgebra::validate(abelian(1), scalar_matrix(1, 0));
  auto rep = DiffRepresentation::validate(line, {mat({{0}})}, mat({{0}}));
  auto e = extension_from_cocycle(rep, {AlternatingMap(1, 2, 1), mat({{1}})});
  CHECK(e.total().g().is_abelian());
  CHECK(e.total().d() == mat({{0, 0}, {1, 0}}));
  auto direct = difference_op_failures(LieActTriple::adjoint(e.total().g()), e.total().d());
  CHECK(direct.empty());
}

TEST_CASE("non-cocycles are rejected") {
  auto rep = standard_representations()[1].rep;
  ExtensionCocycle c{AlternatingMap(2, 2, 1), RationalMatrix(1, 2)};
  c.omega.values(0b11)[0] = 1;
  CHECK_THROWS_AS(extension_from_cocycle(rep, c), NotCocycle);
}

TEST_CASE("property: extension roundtrip and section change") {
  Gen gen(131);
  for (auto const& [name, rep] : standard_representations()) {
    CAPTURE(name);
    std::size_t dg = rep.base().dim(), dv = rep.v_dim();
    for (int k = 0; k < 6; ++k) {
      auto c = random_cocycle(gen, rep);
      auto e = extension_from_cocycle(rep, c);
      auto back = cocycle_from_extension(e, e.canonical_section());
      CHECK(back.cocycle == c);
      CHECK(back.rep.varrho() == rep.varrho());

      auto n = gen.matrix(dv, dg);
      auto section = e.canonical_section();
      for (std::size_t r = 0; r < dv; ++r) {
        for (std::size_t col = 0; col < dg; ++col) section(dg + r, col) = n(r, col);
      }
      auto moved = cocycle_from_extension(e, section);
      CHECK(moved.rep.varrho() == rep.varrho());
      CHECK(moved.cocycle == shifted(rep, c, n));
    }
  }
}

TEST_CASE("sections must split the projection") {
  auto rep = standard_representations()[1].rep;
  auto e = extension_from_cocycle(rep, {AlternatingMap(2, 2, 1), RationalMatrix(1, 2)});
  auto s = e.canonical_section();
  s(0, 1) = 1;
  CHECK_THROWS_AS(cocycle_from_extension(e, s), NotASection);
}

TEST_CASE("property: cohomologous cocycles give isomorphic extensions and conversely") {
  Gen gen(141);
  int instances = 0;
  for (auto const& [name, rep] : standard_representations()) {
    CAPTURE(name);
    std::size_t dg = rep.base().dim(), dv = rep.v_dim();
    auto h2 = cohomology_group(*coeff_complex(rep), 2);
    for (int k = 0; k < 8; ++k) {
      auto c = random_cocycle(gen, rep);
      auto e1 = extension_from_cocycle(rep, c);
      CHECK(extension_isomorphic(e1, e1) == RationalMatrix::identity(dg + dv));

      auto n = gen.matrix(dv, dg);
      auto e2 = extension_from_cocycle(rep, shifted(rep, c, n));
      auto kappa = extension_isomorphic(e1, e2);
      auto failures = homomorphism_failures(e1.total().as_relative(), e2.total().as_relative(), kappa, kappa);
      CHECK(failures.empty());
      ++instances;

      for (auto const& r : h2.representatives) {
        auto off = ExtensionCocycle::from_cochain(CoeffCochain::from_coordinates(dg, dv, 2, r));
        ExtensionCocycle far{c.omega + off.omega, c.chi + off.chi};
        auto e3 = extension_from_cocycle(rep, far);
        CHECK_THROWS_AS(extension_isomorphic(e1, e3), NotIsomorphic);
        ++instances;
      }
    }
  }
  CHECK(instances >= 50);
}

TEST_CASE("isomorphism search rejects different kernels") {
  auto reps = standard_representations();
  auto e1 = extension_from_cocycle(reps[1].rep, {AlternatingMap(2, 2, 1), RationalMatrix(1, 2)});
  auto e2 = extension_from_cocycle(reps[2].rep, {AlternatingMap(2, 2, 1), RationalMatrix(1, 2)});
  CHECK_THROWS_AS(extension_isomorphic(e1, e2), IncompatibleBaseOrKernel);
}
