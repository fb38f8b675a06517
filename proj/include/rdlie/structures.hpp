#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rdlie/alternating.hpp"
#include "rdlie/errors.hpp"
#include "rdlie/linear.hpp"

namespace rdlie {

/// A failed identity on a basis tuple; unused indices are left at 0.
struct AxiomFailure {
  std::string axiom;
  std::vector<std::size_t> indices;
  Vector residual;
};

class JacobiViolation : public MathError {
 public:
  JacobiViolation(std::string const& what, std::vector<AxiomFailure> failures)
      : MathError(what), failures_(std::move(failures)) {}
  [[nodiscard]] std::vector<AxiomFailure> const& failures() const { return failures_; }

 private:
  std::vector<AxiomFailure> failures_;
};

class NotAnAction : public MathError {
 public:
  NotAnAction(std::string const& what, std::vector<AxiomFailure> failures)
      : MathError(what), failures_(std::move(failures)) {}
  [[nodiscard]] std::vector<AxiomFailure> const& failures() const { return failures_; }

 private:
  std::vector<AxiomFailure> failures_;
};

class NotDifferenceOp : public MathError {
 public:
  NotDifferenceOp(std::string const& what, std::vector<AxiomFailure> failures)
      : MathError(what), failures_(std::move(failures)) {}
  [[nodiscard]] std::vector<AxiomFailure> const& failures() const { return failures_; }

 private:
  std::vector<AxiomFailure> failures_;
};

class NotARepresentation : public MathError {
 public:
  NotARepresentation(std::string const& what, std::vector<AxiomFailure> failures)
      : MathError(what), failures_(std::move(failures)) {}
  [[nodiscard]] std::vector<AxiomFailure> const& failures() const { return failures_; }

 private:
  std::vector<AxiomFailure> failures_;
};

std::vector<std::string> default_basis_names(std::size_t dim, std::string const& prefix = "e");

class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Checks the Jacobi identity on all basis triples; throws JacobiViolation listing every failure.
  static LieAlgebra validate(std::vector<std::string> names, AlternatingMap bracket);
  /// Wraps raw data without checking anything (for testing candidate structures).
  static LieAlgebra unchecked(std::vector<std::string> names, AlternatingMap bracket);
  static LieAlgebra abelian(std::size_t dim);

  [[nodiscard]] std::size_t dim() const { return names_.size(); }
  [[nodiscard]] std::vector<std::string> const& names() const { return names_; }
  [[nodiscard]] AlternatingMap const& bracket_map() const { return bracket_; }

  [[nodiscard]] Vector bracket(std::span<const Rational> x, std::span<const Rational> y) const;
  [[nodiscard]] Vector bracket_basis(std::size_t i, std::size_t j) const;
  /// Matrix of ad_x.
  [[nodiscard]] RationalMatrix ad(std::span<const Rational> x) const;
  [[nodiscard]] RationalMatrix ad_basis(std::size_t i) const;
  [[nodiscard]] bool is_abelian() const { return bracket_.is_zero(); }

 private:
  std::vector<std::string> names_;
  AlternatingMap bracket_;
};

/// Cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] for every i<j<k where it is nonzero.
std::vector<AxiomFailure> jacobi_failures(AlternatingMap const& bracket);

/// Builds a bracket map from structure constants given for index pairs.
struct BracketEntry {
  std::size_t i, j;
  Vector value;
};
AlternatingMap bracket_from_entries(std::size_t dim, std::vector<BracketEntry> const& entries);

class LieActTriple {
 public:
  LieActTriple() = default;
  /// rho[i] is the dim h × dim h matrix of ρ(e_i).
  static LieActTriple validate(LieAlgebra g, LieAlgebra h, std::vector<RationalMatrix> rho);
  static LieActTriple unchecked(LieAlgebra g, LieAlgebra h, std::vector<RationalMatrix> rho);
  static LieActTriple adjoint(LieAlgebra const& g);

  [[nodiscard]] LieAlgebra const& g() const { return g_; }
  [[nodiscard]] LieAlgebra const& h() const { return h_; }
  [[nodiscard]] std::vector<RationalMatrix> const& rho() const { return rho_; }
  [[nodiscard]] RationalMatrix rho_of(std::span<const Rational> x) const;

  /// π, ρ, μ and Π = π+ρ+μ as elements of Hom(∧²(g⊕h), g⊕h).
  [[nodiscard]] AlternatingMap pi_lift() const;
  [[nodiscard]] AlternatingMap rho_lift() const;
  [[nodiscard]] AlternatingMap mu_lift() const;
  [[nodiscard]] AlternatingMap structure_lift() const;

  /// The semidirect product g⋉_ρ h on the concatenated basis.
  [[nodiscard]] LieAlgebra semidirect() const;

 private:
  LieAlgebra g_, h_;
  std::vector<RationalMatrix> rho_;
};

/// Derivation and homomorphism failures of a candidate action.
std::vector<AxiomFailure> action_failures(LieAlgebra const& g, LieAlgebra const& h,
                                          std::vector<RationalMatrix> const& rho);

/// ρ as the (1,1) block Hom(g ⊗ h, h).
BigradedMap rho_block(std::vector<RationalMatrix> const& rho, std::size_t dim_g, std::size_t dim_h);

class RelDiffStructure {
 public:
  RelDiffStructure() = default;
  static RelDiffStructure validate(LieActTriple t, RationalMatrix d);
  static RelDiffStructure unchecked(LieActTriple t, RationalMatrix d);

  [[nodiscard]] LieActTriple const& triple() const { return triple_; }
  [[nodiscard]] LieAlgebra const& g() const { return triple_.g(); }
  [[nodiscard]] LieAlgebra const& h() const { return triple_.h(); }
  [[nodiscard]] RationalMatrix const& d() const { return d_; }
  [[nodiscard]] std::size_t dim_g() const { return g().dim(); }
  [[nodiscard]] std::size_t dim_h() const { return h().dim(); }
  /// D as a degree-0 element of F, i.e. lifted to g⊕h.
  [[nodiscard]] AlternatingMap d_lift() const;

 private:
  LieActTriple triple_;
  RationalMatrix d_;
};

/// Residual ρ(x)Dy − ρ(y)Dx + [Dx,Dy] − D[x,y] on every basis pair where it is nonzero.
std::vector<AxiomFailure> difference_op_failures(LieActTriple const& t, RationalMatrix const& d);
/// Throws NotDifferenceOp.
RelDiffStructure validate_rel_diff_op(LieActTriple const& t, RationalMatrix const& d);
/// Whether the graph of D is closed under the bracket of g⋉_ρ h.
bool graph_closure_check(LieActTriple const& t, RationalMatrix const& d);

/// Matrices ρ_D(e_i) = ρ(e_i) + ad_{D e_i}; throws InternalInconsistency if they fail to form a representation.
std::vector<RationalMatrix> rho_d(RelDiffStructure const& s);

/// Whether matrices on V form a representation of g; failures list the offending pairs.
std::vector<AxiomFailure> representation_failures(LieAlgebra const& g, std::vector<RationalMatrix> const& rep);

/// ⟦f1,f2⟧ by the shuffle formula (−1)^{mn+1} Σ (−1)^σ [f1(…), f2(…)]_h. f1, f2 : ∧^• g → h.
AlternatingMap courant_bracket(AlternatingMap const& f1, AlternatingMap const& f2, LieAlgebra const& h);
/// The same bracket as the derived bracket (−1)^{m−1} P[[μ,f1]_NR, f2]_NR on g⊕h.
AlternatingMap courant_bracket_derived(AlternatingMap const& f1, AlternatingMap const& f2, LieActTriple const& t);
/// d_{π+ρ} f = P[π+ρ, f]_NR for f : ∧^m g → h.
AlternatingMap d_pi_rho(AlternatingMap const& f, LieActTriple const& t);
/// d_{π+ρ}D + ½⟦D,D⟧ = 0.
bool dgla_mc_check(LieActTriple const& t, RationalMatrix const& d);

class DifferenceLieAlgebra {
 public:
  DifferenceLieAlgebra() = default;
  /// Throws NotDifferenceOp.
  static DifferenceLieAlgebra validate(LieAlgebra g, RationalMatrix d);
  static DifferenceLieAlgebra unchecked(LieAlgebra g, RationalMatrix d);

  [[nodiscard]] LieAlgebra const& g() const { return g_; }
  [[nodiscard]] RationalMatrix const& d() const { return d_; }
  [[nodiscard]] std::size_t dim() const { return g_.dim(); }
  /// The relative difference Lie algebra (g, g, ad, D).
  [[nodiscard]] RelDiffStructure as_relative() const;

 private:
  LieAlgebra g_;
  RationalMatrix d_;
};

class DiffRepresentation {
 public:
  DiffRepresentation() = default;
  /// Checks that ϱ is a representation and K(ϱ(x)u) = ϱ(Dx)u + ϱ(x)Ku + ϱ(Dx)Ku.
  static DiffRepresentation validate(DifferenceLieAlgebra base, std::vector<RationalMatrix> varrho, RationalMatrix k);
  static DiffRepresentation unchecked(DifferenceLieAlgebra base, std::vector<RationalMatrix> varrho, RationalMatrix k);
  static DiffRepresentation adjoint(DifferenceLieAlgebra const& base);

  [[nodiscard]] DifferenceLieAlgebra const& base() const { return base_; }
  [[nodiscard]] std::size_t v_dim() const { return k_.rows(); }
  [[nodiscard]] std::vector<RationalMatrix> const& varrho() const { return varrho_; }
  [[nodiscard]] RationalMatrix varrho_of(std::span<const Rational> x) const;
  [[nodiscard]] RationalMatrix const& k() const { return k_; }

 private:
  DifferenceLieAlgebra base_;
  std::vector<RationalMatrix> varrho_;
  RationalMatrix k_;
};

std::vector<AxiomFailure> diff_representation_failures(DifferenceLieAlgebra const& base,
                                                       std::vector<RationalMatrix> const& varrho,
                                                       RationalMatrix const& k);

/// (g ⊕ V, [·,·]_⋉, D+K), re-validated.
DifferenceLieAlgebra semidirect_difference(DiffRepresentation const& rep);

/// Failures of (ψ_g, ψ_h) to be a homomorphism of relative difference Lie algebras.
std::vector<AxiomFailure> homomorphism_failures(RelDiffStructure const& s, RelDiffStructure const& target,
                                                RationalMatrix const& psi_g, RationalMatrix const& psi_h);

/// Block-diagonal sum of two matrices.
RationalMatrix direct_sum(RationalMatrix const& a, RationalMatrix const& b);

}  // namespace rdlie
