#pragma once

#include <cstddef>
#include <vector>

#include "rdlie/alternating.hpp"
#include "rdlie/cohomology.hpp"
#include "rdlie/errors.hpp"
#include "rdlie/linear.hpp"
#include "rdlie/structures.hpp"

namespace rdlie {

/// Infinitesimal perturbation [·,·] + tω̂, D + tD̂ of a difference Lie algebra.
struct DeformationDatum {
  AlternatingMap omega_hat;   // ∧²g → g
  RationalMatrix d_hat;       // g → g

  [[nodiscard]] RegularCochain as_cochain() const;
  static DeformationDatum from_cochain(RegularCochain const& c);
};

/// A linear system with no solution, certified by rank(A) < rank([A | b]).
class NotEquivalent : public MathError {
 public:
  NotEquivalent(std::string const& what, std::size_t rank_coefficients, std::size_t rank_augmented)
      : MathError(what), rank_coefficients_(rank_coefficients), rank_augmented_(rank_augmented) {}
  [[nodiscard]] std::size_t rank_coefficients() const { return rank_coefficients_; }
  [[nodiscard]] std::size_t rank_augmented() const { return rank_augmented_; }

 private:
  std::size_t rank_coefficients_, rank_augmented_;
};

class NotIsomorphic : public MathError {
 public:
  NotIsomorphic(std::string const& what, std::size_t rank_coefficients, std::size_t rank_augmented)
      : MathError(what), rank_coefficients_(rank_coefficients), rank_augmented_(rank_augmented) {}
  [[nodiscard]] std::size_t rank_coefficients() const { return rank_coefficients_; }
  [[nodiscard]] std::size_t rank_augmented() const { return rank_augmented_; }

 private:
  std::size_t rank_coefficients_, rank_augmented_;
};

/// Whether ℚ[t]/(t²) ⊗ g with [·,·] + tω̂ is a Lie algebra and D + tD̂ a difference operator on it.
bool dual_number_deformation_valid(DifferenceLieAlgebra const& a, DeformationDatum const& d);

/// δ̄(ω̂, D̂) = 0, decided by the coboundary and by the dual-number algebra;
/// throws InternalInconsistency if the two disagree.
bool is_deformation_cocycle(DifferenceLieAlgebra const& a, DeformationDatum const& d);

/// Whether Id + tN intertwines the two deformed structures over ℚ[t]/(t²).
bool is_equivalence_witness(DifferenceLieAlgebra const& a, DeformationDatum const& d1, DeformationDatum const& d2,
                            RationalMatrix const& n);

/// N with ω̂₁ − ω̂₂ = d^CE_ad N and D̂₁ − D̂₂ = DN − ND. Throws NotCocycle or NotEquivalent.
RationalMatrix deformation_equivalent(DifferenceLieAlgebra const& a, DeformationDatum const& d1,
                                      DeformationDatum const& d2);

struct DeformationClassification {
  std::size_t dimension = 0;
  std::vector<DeformationDatum> representatives;   // at most max_report of them
};

DeformationClassification classify_deformations(DifferenceLieAlgebra const& a, std::size_t max_report);

// ---------------------------------------------------------------------------

struct ExtensionCocycle {
  AlternatingMap omega;   // ∧²g → h
  RationalMatrix chi;     // g → h

  [[nodiscard]] CoeffCochain as_cochain() const;
  static ExtensionCocycle from_cochain(CoeffCochain const& c);
  friend bool operator==(ExtensionCocycle const&, ExtensionCocycle const&) = default;
};

/// Difference Lie algebra on g ⊕ h (g first) with i(u) = (0,u), p(x,u) = x,
/// h an abelian ideal on which the operator restricts to K.
class AbelianExtension {
 public:
  AbelianExtension() = default;
  /// Throws NotAHomomorphism if i or p fails to be a homomorphism or h is not an abelian ideal.
  static AbelianExtension validate(DifferenceLieAlgebra total, DifferenceLieAlgebra base, RationalMatrix k);

  [[nodiscard]] DifferenceLieAlgebra const& total() const { return total_; }
  [[nodiscard]] DifferenceLieAlgebra const& base() const { return base_; }
  [[nodiscard]] RationalMatrix const& k() const { return k_; }
  [[nodiscard]] std::size_t dim_g() const { return base_.dim(); }
  [[nodiscard]] std::size_t dim_h() const { return k_.rows(); }
  [[nodiscard]] RationalMatrix canonical_section() const;

 private:
  DifferenceLieAlgebra total_, base_;
  RationalMatrix k_;
};

/// (g ⊕ h, [·,·]_ω, D_χ); throws NotCocycle with the δ_ϱ residual if (ω, χ) is not closed.
AbelianExtension extension_from_cocycle(DiffRepresentation const& rep, ExtensionCocycle const& c);

struct ExtractedCocycle {
  ExtensionCocycle cocycle;
  DiffRepresentation rep;
};

/// ϱ(x)u = [s x, u], ω(x,y) = [s x, s y] − s[x,y], χ(x) = D̂ s x − s D x. Throws NotASection.
ExtractedCocycle cocycle_from_extension(AbelianExtension const& e, RationalMatrix const& section);

/// κ(x,u) = (x, Nx + u) from e1 to e2 as a (dim g + dim h)-square matrix.
/// Throws IncompatibleBaseOrKernel or NotIsomorphic.
RationalMatrix extension_isomorphic(AbelianExtension const& e1, AbelianExtension const& e2);

}  // namespace rdlie
