#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "rdlie/alternating.hpp"
#include "rdlie/linear.hpp"
#include "rdlie/structures.hpp"

namespace rdlie {

/// Chevalley–Eilenberg coboundary of θ : ∧^k g → V for the representation
/// given by one matrix per basis vector of g (an empty list means trivial).
AlternatingMap ce_coboundary(LieAlgebra const& g, std::vector<RationalMatrix> const& rep, AlternatingMap const& theta);

/// 𝔇f = (−1)^{n−1}[Π, f]_NR for f ∈ C^n(g,h,ρ).
MixedCochain lieact_coboundary(LieActTriple const& t, MixedCochain const& f);

/// Σ over nonempty position sets S of f(x_1,…,x_n) with x_i replaced by D x_i for
/// i ∈ S, where f is a map on g⊕h read through its lift (D-images enter as h-vectors).
AlternatingMap t_operator(RelDiffStructure const& s, MixedCochain const& f);
/// The same map as (−1)^n(−D∘f_0 + Σ_k 1/k! P[…[f_k,D]_NR,…,D]_NR).
AlternatingMap t_operator_bracket(RelDiffStructure const& s, MixedCochain const& f);

/// Element (f, θ) of C^n(g,h,ρ,D); θ : ∧^{n−1} g → h is absent (arity 0, zero) when n = 1.
struct RelDiffCochain {
  MixedCochain f;
  AlternatingMap theta;

  [[nodiscard]] std::size_t degree() const { return f.n; }
  static RelDiffCochain zero(std::size_t dim_g, std::size_t dim_h, std::size_t n);
  [[nodiscard]] Vector coordinates() const;
  static RelDiffCochain from_coordinates(std::size_t dim_g, std::size_t dim_h, std::size_t n,
                                         std::span<const Rational> coords);
  static std::size_t coordinate_count(std::size_t dim_g, std::size_t dim_h, std::size_t n);
  friend bool operator==(RelDiffCochain const&, RelDiffCochain const&) = default;
};

/// δ(f,θ) = (𝔇f, d^CE_{ρ_D} θ + T(f)), recomputed through the twisted l_1;
/// throws InternalInconsistency if the two disagree.
RelDiffCochain rel_diff_delta(RelDiffStructure const& s, RelDiffCochain const& c);
RelDiffCochain rel_diff_delta_closed(RelDiffStructure const& s, RelDiffCochain const& c);
/// δ(f,θ) = (−1)^{n−2} l_1^{(s^{-1}Π, D)}(s^{-1}f, θ) in the twisted L∞-algebra.
RelDiffCochain rel_diff_delta_linfty(RelDiffStructure const& s, RelDiffCochain const& c);

struct DanddTSides {
  AlternatingMap ce;        // d^CE_{ρ_D} f
  AlternatingMap bracket;   // (−1)^{k−1}(d_{π+ρ} f + ⟦D, f⟧)
};
DanddTSides danddT_sides(RelDiffStructure const& s, AlternatingMap const& f);
bool danddT_check(RelDiffStructure const& s, AlternatingMap const& f);

/// Element (f, θ) of C^n(g,D) with f : ∧^n g → g and θ : ∧^{n−1} g → g (absent when n = 1).
struct RegularCochain {
  std::size_t n = 0;
  AlternatingMap f;
  AlternatingMap theta;

  static RegularCochain zero(std::size_t dim, std::size_t n);
  [[nodiscard]] Vector coordinates() const;
  static RegularCochain from_coordinates(std::size_t dim, std::size_t n, std::span<const Rational> coords);
  static std::size_t coordinate_count(std::size_t dim, std::size_t n);
  friend bool operator==(RegularCochain const&, RegularCochain const&) = default;
};

/// (−1)^n(Σ_{S≠∅} f(…, D x_i (i ∈ S), …) − K f(x_1,…,x_n)) for f : ∧^n g → V.
AlternatingMap insertion_t(AlternatingMap const& f, RationalMatrix const& d, RationalMatrix const& k);

/// δ̄(f,θ) = (d^CE_ad f, d^CE_{ad_D} θ + T(f)), checked against 𝔭∘δ∘𝔦.
RegularCochain regular_delta(DifferenceLieAlgebra const& a, RegularCochain const& c);
/// 𝔦(f,θ) = (f,…,f,θ) in C^n(g,g,ad,D).
RelDiffCochain embed_regular(DifferenceLieAlgebra const& a, RegularCochain const& c);
/// 𝔭; throws InternalInconsistency off the image of 𝔦.
RegularCochain project_regular(DifferenceLieAlgebra const& a, RelDiffCochain const& c);
/// 𝔭∘δ∘𝔦.
RegularCochain regular_delta_via_embedding(DifferenceLieAlgebra const& a, RegularCochain const& c);

/// Element (f, θ) of 𝔆^n(g,D;V,ϱ,K).
struct CoeffCochain {
  std::size_t n = 0;
  AlternatingMap f;
  AlternatingMap theta;

  static CoeffCochain zero(std::size_t dim_g, std::size_t dim_v, std::size_t n);
  [[nodiscard]] Vector coordinates() const;
  static CoeffCochain from_coordinates(std::size_t dim_g, std::size_t dim_v, std::size_t n,
                                       std::span<const Rational> coords);
  static std::size_t coordinate_count(std::size_t dim_g, std::size_t dim_v, std::size_t n);
  friend bool operator==(CoeffCochain const&, CoeffCochain const&) = default;
};

/// δ_ϱ(f,θ) = (d^CE_ϱ f, ∂θ + T(f)), ∂ using ϱ(x) + ϱ(Dx), T using K; checked
/// against the semidirect computation.
CoeffCochain coeff_delta(DiffRepresentation const& rep, CoeffCochain const& c);
/// δ̄ on the semidirect product g⋉_ϱ V restricted to cochains with values in V.
CoeffCochain coeff_delta_via_semidirect(DiffRepresentation const& rep, CoeffCochain const& c);

enum class Theory { LieAct, Operator, RelDiff, Regular, Coeff };
std::string theory_name(Theory t);

/// A cochain complex ⊕_{n≥1} C^n with a coboundary on coordinate vectors.
class CochainComplex {
 public:
  virtual ~CochainComplex() = default;
  [[nodiscard]] virtual std::size_t dim(std::size_t n) const = 0;
  [[nodiscard]] virtual Vector apply(std::size_t n, std::span<const Rational> coords) const = 0;
  [[nodiscard]] virtual std::string describe() const = 0;
  /// Matrix of δ_n : C^n → C^{n+1} in the canonical bases.
  [[nodiscard]] RationalMatrix matrix(std::size_t n) const;
};

std::unique_ptr<CochainComplex> lieact_complex(LieActTriple const& t);
std::unique_ptr<CochainComplex> operator_complex(RelDiffStructure const& s);
std::unique_ptr<CochainComplex> reldiff_complex(RelDiffStructure const& s);
std::unique_ptr<CochainComplex> regular_complex(DifferenceLieAlgebra const& a);
std::unique_ptr<CochainComplex> coeff_complex(DiffRepresentation const& rep);

struct CohomologyGroup {
  std::size_t degree = 0;
  std::size_t cochain_dim = 0;
  std::size_t rank_in = 0;    // rank δ_{n−1} (0 for n = 1)
  std::size_t rank_out = 0;   // rank δ_n
  std::size_t dimension = 0;
  std::vector<Vector> representatives;
};

CohomologyGroup cohomology_group(CochainComplex const& c, std::size_t n);

struct LesNode {
  std::string label;        // e.g. "H^2(g,h,rho,D)"
  std::size_t dimension = 0;
  std::size_t rank_incoming = 0;
  std::size_t kernel_outgoing = 0;
  bool exact = false;
};

struct LesReport {
  std::size_t max_degree = 0;
  std::vector<LesNode> nodes;
  [[nodiscard]] bool exact() const;
};

/// Long exact sequence … → H^{n−1}(D) → H^n(g,h,ρ,D) → H^n(g,h,ρ) → H^n(D) → …,
/// the last map being c^n[α] = [T(α)]. Throws ExactnessFailure naming the first bad node.
LesReport les_check(RelDiffStructure const& s, std::size_t max_degree);

}  // namespace rdlie
