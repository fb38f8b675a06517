#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rdlie/structures.hpp"

namespace rdlie::testing {

inline Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> rs;
  std::size_t cols = 0;
  for (auto const& r : rows) {
    rs.push_back(vec(r));
    cols = r.size();
  }
  return RationalMatrix::from_rows(cols, rs);
}

inline RationalMatrix scalar_matrix(std::size_t n, long s) { return Rational(s) * RationalMatrix::identity(n); }

// aff(1): [e1,e2] = e2
inline LieAlgebra aff1() {
  return LieAlgebra::validate({"e1", "e2"}, bracket_from_entries(2, {{0, 1, vec({0, 1})}}));
}

// Heisenberg: [e1,e2] = e3
inline LieAlgebra h3() {
  return LieAlgebra::validate({"e1", "e2", "e3"}, bracket_from_entries(3, {{0, 1, vec({0, 0, 1})}}));
}

// sl2 in the basis (h, e, f)
inline LieAlgebra sl2() {
  return LieAlgebra::validate({"h", "e", "f"}, bracket_from_entries(3, {{0, 1, vec({0, 2, 0})},
                                                                        {0, 2, vec({0, 0, -2})},
                                                                        {1, 2, vec({1, 0, 0})}}));
}

inline LieAlgebra abelian(std::size_t n) { return LieAlgebra::abelian(n); }

// De1 = 0, De2 = e2
inline RationalMatrix aff1_projection() { return mat({{0, 0}, {0, 1}}); }

struct NamedDifferenceAlgebra {
  std::string name;
  DifferenceLieAlgebra algebra;
};

/// The fixture list used by the coboundary and exact-sequence checks.
inline std::vector<NamedDifferenceAlgebra> standard_fixtures() {
  return {
      {"abelian1 D=0", DifferenceLieAlgebra::validate(abelian(1), scalar_matrix(1, 0))},
      {"aff1 D=0", DifferenceLieAlgebra::validate(aff1(), scalar_matrix(2, 0))},
      {"aff1 D=-Id", DifferenceLieAlgebra::validate(aff1(), scalar_matrix(2, -1))},
      {"aff1 D=proj", DifferenceLieAlgebra::validate(aff1(), aff1_projection())},
      {"h3 D=0", DifferenceLieAlgebra::validate(h3(), scalar_matrix(3, 0))},
      {"h3 D=-Id", DifferenceLieAlgebra::validate(h3(), scalar_matrix(3, -1))},
      {"sl2 D=0", DifferenceLieAlgebra::validate(sl2(), scalar_matrix(3, 0))},
  };
}

struct NamedRepresentation {
  std::string name;
  DiffRepresentation rep;
};

/// Representations of difference Lie algebras used for coefficient cohomology and extensions.
inline std::vector<NamedRepresentation> standard_representations() {
  auto aff0 = DifferenceLieAlgebra::validate(aff1(), scalar_matrix(2, 0));
  auto affm = DifferenceLieAlgebra::validate(aff1(), scalar_matrix(2, -1));
  auto h30 = DifferenceLieAlgebra::validate(h3(), scalar_matrix(3, 0));
  auto line0 = DifferenceLieAlgebra::validate(abelian(1), scalar_matrix(1, 0));
  return {
      {"abelian1 trivial on a line", DiffRepresentation::validate(line0, {mat({{0}})}, mat({{0}}))},
      {"aff1 D=0 on a line, K=2", DiffRepresentation::validate(aff0, {mat({{1}}), mat({{0}})}, mat({{2}}))},
      {"aff1 D=-Id on a line, K=-1", DiffRepresentation::validate(affm, {mat({{1}}), mat({{0}})}, mat({{-1}}))},
      {"aff1 D=proj adjoint",
       DiffRepresentation::adjoint(DifferenceLieAlgebra::validate(aff1(), aff1_projection()))},
      {"h3 D=0 trivial on a plane",
       DiffRepresentation::validate(h30, {scalar_matrix(2, 0), scalar_matrix(2, 0), scalar_matrix(2, 0)},
                                    mat({{0, 1}, {0, 0}}))},
  };
}

inline RelDiffStructure aff1_on_line() {
  auto line = LieAlgebra::abelian(1);
  auto t = LieActTriple::validate(aff1(), line, {mat({{1}}), mat({{0}})});
  return validate_rel_diff_op(t, mat({{1, 1}}));
}

/// The difference algebras as relative structures, plus one non-adjoint action.
inline std::vector<std::pair<std::string, RelDiffStructure>> relative_fixtures() {
  std::vector<std::pair<std::string, RelDiffStructure>> out;
  for (auto const& f : standard_fixtures()) out.emplace_back(f.name, f.algebra.as_relative());
  out.emplace_back("aff1 on a line", aff1_on_line());
  return out;
}

}  // namespace rdlie::testing
