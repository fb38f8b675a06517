#pragma once

#include <cstddef>
#include <vector>

#include "rdlie/alternating.hpp"
#include "rdlie/structures.hpp"

namespace rdlie {

/// Homogeneous element (s^{-1}m, f) of s^{-1}𝓜 ⊕ F. The 𝓜-part m is a map on
/// g⊕h of arity degree+2; the F-part f : ∧^{degree+1} g → h. Hom(∧^n g, h)
/// carries degree n−1, so D has degree 0.
struct LInftyElement {
  std::size_t dim_g = 0, dim_h = 0;
  int degree = 0;
  AlternatingMap m;
  AlternatingMap f;

  static LInftyElement zero(std::size_t dim_g, std::size_t dim_h, int degree);
  static LInftyElement from_m(std::size_t dim_g, std::size_t dim_h, AlternatingMap m);
  static LInftyElement from_f(std::size_t dim_g, std::size_t dim_h, AlternatingMap f);
  /// (s^{-1}m, f) with arity(m) = arity(f) + 1.
  static LInftyElement pair(std::size_t dim_g, std::size_t dim_h, AlternatingMap m, AlternatingMap f);

  [[nodiscard]] bool is_zero() const { return m.is_zero() && f.is_zero(); }
  LInftyElement& operator+=(LInftyElement const& o);
  LInftyElement& operator-=(LInftyElement const& o);
  LInftyElement& operator*=(Rational const& s);
  friend LInftyElement operator+(LInftyElement a, LInftyElement const& b) { return a += b; }
  friend LInftyElement operator-(LInftyElement a, LInftyElement const& b) { return a -= b; }
  friend LInftyElement operator*(Rational const& s, LInftyElement a) { return a *= s; }
  friend bool operator==(LInftyElement const& a, LInftyElement const& b) = default;
};

/// Higher derived brackets l_k on s^{-1}𝓜 ⊕ F with Δ = 0:
///   l_1(s^{-1}m) = P(m),
///   l_2(s^{-1}m1, s^{-1}m2) = (−1)^{|m1|} s^{-1}[m1,m2]_NR,
///   l_k(s^{-1}m, f_1, …, f_{k−1}) = P[…[m,f_1]_NR,…,f_{k−1}]_NR,
/// extended by graded symmetry; every other combination vanishes.
LInftyElement derived_bracket(std::vector<LInftyElement> const& args);

/// α = (s^{-1}(π+ρ+μ), D) for a possibly invalid quadruple.
LInftyElement structure_element(LieActTriple const& t, RationalMatrix const& d);

/// Σ_k 1/k! l_k(α,…,α) for a degree-0 element α.
LInftyElement mc_curvature(LInftyElement const& alpha);
/// Whether α = (s^{-1}(π+ρ+μ), D) satisfies the Maurer–Cartan equation.
bool mc_check_linfty(LieActTriple const& t, RationalMatrix const& d);

/// The brackets l_k^α(x) = Σ_n 1/n! l_{k+n}(α^n, x). The sum stops at
/// n = (largest 𝓜-arity among α and the arguments) + 1: each further copy of
/// the F-part of α is inserted into an h-slot of the single 𝓜-factor or
/// applied to its g-output, and there are no slots left beyond that.
class TwistedBrackets {
 public:
  /// Throws NotMaurerCartan unless alpha solves the MC equation.
  explicit TwistedBrackets(LInftyElement alpha);
  [[nodiscard]] LInftyElement operator()(std::vector<LInftyElement> const& args) const;
  [[nodiscard]] LInftyElement const& alpha() const { return alpha_; }

 private:
  LInftyElement alpha_;
};

LInftyElement twisted_bracket(LInftyElement const& alpha, std::vector<LInftyElement> const& args);

/// Σ_{i=1}^n Σ_{σ ∈ S(i,n−i)} ε(σ) l_{n−i+1}(l_i(x_σ(1..i)), x_σ(i+1..n)).
LInftyElement jacobiator(std::vector<LInftyElement> const& xs);
LInftyElement jacobiator_twisted(LInftyElement const& alpha, std::vector<LInftyElement> const& xs);

bool generalized_jacobi_check(std::vector<LInftyElement> const& xs);
bool generalized_jacobi_check_twisted(LInftyElement const& alpha, std::vector<LInftyElement> const& xs);

/// Axiom-by-axiom validation of a quadruple: Jacobi on g and h, action axioms, operator identity.
bool direct_rel_diff_check(LieActTriple const& t, RationalMatrix const& d);

struct Perturbation {
  AlternatingMap pi;   // ∧²g → g
  AlternatingMap mu;   // ∧²h → h
  std::vector<RationalMatrix> rho;
  RationalMatrix d;
};

struct DeformationCheck {
  bool direct = false;
  bool twisted = false;
};

/// Whether base + perturbation is again a relative difference Lie algebra,
/// decided by direct validation and by the MC equation of the twisted algebra.
/// Throws InternalInconsistency if the two disagree.
DeformationCheck deformation_mc_check(RelDiffStructure const& base, Perturbation const& p);

}  // namespace rdlie
