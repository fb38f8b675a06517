#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rdlie/alternating.hpp"
#include "rdlie/cohomology.hpp"
#include "rdlie/errors.hpp"
#include "rdlie/structures.hpp"

namespace rdlie::cli {

class ParseError : public InputError {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct AlgebraSpec {
  std::vector<std::string> basis;
  AlternatingMap bracket;
};

struct ActionSpec {
  std::string g, h;
  bool adjoint = false;
  std::vector<RationalMatrix> rho;   // ρ(e_i) for every basis vector of g
};

struct OperatorSpec {
  std::string action;
  RationalMatrix map;   // dim h × dim g
};

struct RepresentationSpec {
  std::string base;   // an operator on an adjoint action
  std::vector<std::string> space;
  std::vector<RationalMatrix> varrho;
  RationalMatrix k;
};

/// (f, θ) of a regular or coefficient complex; θ is empty in degree 1.
struct CochainSpec {
  Theory theory = Theory::Regular;
  std::string over;   // operator for regular, representation for coeff
  std::size_t degree = 0;
  AlternatingMap f, theta;
  bool claimed_cocycle = false;
};

struct HomomorphismSpec {
  std::string source, target;   // operators
  RationalMatrix psi_g, psi_h;
};

struct ProblemFile {
  std::map<std::string, AlgebraSpec> algebras;
  std::map<std::string, ActionSpec> actions;
  std::map<std::string, OperatorSpec> operators;
  std::map<std::string, RepresentationSpec> representations;
  std::map<std::string, CochainSpec> cochains;   // the "cochains" and "cocycles" sections together
  std::map<std::string, HomomorphismSpec> homomorphisms;
  std::map<std::string, std::vector<Rational>> grids;

  // Library objects built without validation. Unknown names throw InputError.
  [[nodiscard]] LieAlgebra algebra(std::string const& name) const;
  [[nodiscard]] LieActTriple action(std::string const& name) const;
  [[nodiscard]] RelDiffStructure relative(std::string const& name) const;
  /// Throws InputError unless the operator sits on the adjoint action of one algebra.
  [[nodiscard]] DifferenceLieAlgebra difference_algebra(std::string const& name) const;
  [[nodiscard]] bool is_difference_operator(std::string const& name) const;
  [[nodiscard]] DiffRepresentation representation(std::string const& name) const;
  [[nodiscard]] RegularCochain regular_cochain(std::string const& name) const;
  [[nodiscard]] CoeffCochain coeff_cochain(std::string const& name) const;

  /// Basis names of the source and target spaces of a cochain.
  [[nodiscard]] std::vector<std::string> const& cochain_domain(std::string const& name) const;
  [[nodiscard]] std::vector<std::string> const& cochain_target(std::string const& name) const;
  [[nodiscard]] std::vector<std::string> const& operator_domain(std::string const& name) const;
  [[nodiscard]] std::vector<std::string> const& operator_target(std::string const& name) const;
};

/// Throws ParseError with the line and column of the offending token.
ProblemFile parse_problem(std::string_view text);
/// Throws InputError if the file cannot be read.
ProblemFile load_problem(std::string const& path);

}  // namespace rdlie::cli
