#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rdlie/linear.hpp"
#include "rdlie/rational.hpp"
#include "rdlie/wedge.hpp"

namespace rdlie {

/// Element of Hom(∧^arity W, U) for W = ℚ^domain_dim, U = ℚ^target_dim,
/// stored by its values on strictly increasing basis tuples. Degree in the
/// Nijenhuis–Richardson grading is arity − 1.
class AlternatingMap {
 public:
  AlternatingMap() = default;
  AlternatingMap(std::size_t domain_dim, std::size_t arity, std::size_t target_dim);

  [[nodiscard]] std::size_t domain_dim() const { return domain_dim_; }
  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] std::size_t target_dim() const { return target_dim_; }
  [[nodiscard]] int degree() const { return static_cast<int>(arity_) - 1; }
  [[nodiscard]] std::size_t tuple_count() const { return tuples_; }

  /// Value on the sorted basis tuple `m` (popcount must equal arity).
  [[nodiscard]] std::span<const Rational> values(WedgeMask m) const;
  std::span<Rational> values(WedgeMask m);
  [[nodiscard]] std::span<const WedgeMask> tuples() const;

  /// Value on basis vectors given in arbitrary order (zero on repeats).
  [[nodiscard]] Vector on_basis(std::span<const std::size_t> indices) const;
  /// Multilinear evaluation on arbitrary argument vectors.
  [[nodiscard]] Vector evaluate(std::vector<Vector> const& args) const;

  /// Flat coefficient vector: tuples in lexicographic order, target index fastest.
  [[nodiscard]] std::span<const Rational> coordinates() const { return coeffs_; }
  static AlternatingMap from_coordinates(std::size_t domain_dim, std::size_t arity, std::size_t target_dim,
                                         std::span<const Rational> coords);

  [[nodiscard]] bool is_zero() const;

  /// u ↦ A u applied to every output.
  [[nodiscard]] AlternatingMap postcompose(RationalMatrix const& a) const;
  /// f(A x_1, …, A x_n) for A: ℚ^new_domain → ℚ^domain_dim.
  [[nodiscard]] AlternatingMap pullback(RationalMatrix const& a) const;

  AlternatingMap& operator+=(AlternatingMap const& o);
  AlternatingMap& operator-=(AlternatingMap const& o);
  AlternatingMap& operator*=(Rational const& s);
  friend AlternatingMap operator+(AlternatingMap a, AlternatingMap const& b) { return a += b; }
  friend AlternatingMap operator-(AlternatingMap a, AlternatingMap const& b) { return a -= b; }
  friend AlternatingMap operator*(Rational const& s, AlternatingMap a) { return a *= s; }
  friend AlternatingMap operator-(AlternatingMap a) { return a *= Rational(-1); }
  friend bool operator==(AlternatingMap const& a, AlternatingMap const& b) = default;

  [[nodiscard]] bool same_shape(AlternatingMap const& o) const {
    return domain_dim_ == o.domain_dim_ && arity_ == o.arity_ && target_dim_ == o.target_dim_;
  }

  /// Linear map (arity 1) from a matrix, and back.
  static AlternatingMap linear(RationalMatrix const& m);
  [[nodiscard]] RationalMatrix as_matrix() const;

 private:
  [[nodiscard]] std::size_t offset(WedgeMask m) const;

  std::size_t domain_dim_ = 0;
  std::size_t arity_ = 0;
  std::size_t target_dim_ = 0;
  std::size_t tuples_ = 0;
  std::vector<Rational> coeffs_;
};

enum class Side { G, H };

/// κ: ∧^k g ⊗ ∧^l h → g (Side::G) or h (Side::H).
class BigradedMap {
 public:
  BigradedMap() = default;
  BigradedMap(std::size_t dim_g, std::size_t dim_h, std::size_t k, std::size_t l, Side target);

  [[nodiscard]] std::size_t dim_g() const { return dim_g_; }
  [[nodiscard]] std::size_t dim_h() const { return dim_h_; }
  [[nodiscard]] std::size_t k() const { return k_; }
  [[nodiscard]] std::size_t l() const { return l_; }
  [[nodiscard]] Side target() const { return target_; }
  [[nodiscard]] std::size_t target_dim() const { return target_ == Side::G ? dim_g_ : dim_h_; }

  [[nodiscard]] std::span<const Rational> values(WedgeMask g_part, WedgeMask h_part) const;
  std::span<Rational> values(WedgeMask g_part, WedgeMask h_part);

  [[nodiscard]] std::span<const Rational> coordinates() const { return coeffs_; }
  static BigradedMap from_coordinates(std::size_t dim_g, std::size_t dim_h, std::size_t k, std::size_t l, Side target,
                                      std::span<const Rational> coords);
  [[nodiscard]] std::size_t coordinate_count() const { return coeffs_.size(); }
  [[nodiscard]] bool is_zero() const;

  /// The lift κ̂ ∈ Hom(∧^{k+l}(g⊕h), g⊕h). Basis of g⊕h: g first, then h.
  [[nodiscard]] AlternatingMap lift() const;
  /// Reads the (k, l, target) block of a map on g⊕h.
  static BigradedMap block_of(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h, std::size_t k,
                              std::size_t l, Side target);

  friend bool operator==(BigradedMap const& a, BigradedMap const& b) = default;

 private:
  [[nodiscard]] std::size_t offset(WedgeMask g_part, WedgeMask h_part) const;

  std::size_t dim_g_ = 0, dim_h_ = 0, k_ = 0, l_ = 0;
  Side target_ = Side::G;
  std::size_t h_tuples_ = 0;
  std::vector<Rational> coeffs_;
};

/// Element of C^n(g,h,ρ) = Hom(∧^n g, g) ⊕ ⊕_{i=1}^n Hom(∧^{n−i} g ⊗ ∧^i h, h).
struct MixedCochain {
  std::size_t n = 0;
  BigradedMap f0;                    // (n, 0) → g
  std::vector<BigradedMap> parts;    // parts[i-1] = f_i : (n−i, i) → h

  static MixedCochain zero(std::size_t dim_g, std::size_t dim_h, std::size_t n);
  [[nodiscard]] BigradedMap const& component(std::size_t i) const { return i == 0 ? f0 : parts.at(i - 1); }
  BigradedMap& component(std::size_t i) { return i == 0 ? f0 : parts.at(i - 1); }

  [[nodiscard]] AlternatingMap lift() const;
  [[nodiscard]] Vector coordinates() const;
  static MixedCochain from_coordinates(std::size_t dim_g, std::size_t dim_h, std::size_t n,
                                       std::span<const Rational> coords);
  static std::size_t coordinate_count(std::size_t dim_g, std::size_t dim_h, std::size_t n);
  [[nodiscard]] bool is_zero() const;
  friend bool operator==(MixedCochain const& a, MixedCochain const& b) = default;
};

/// Splitting of a map on g⊕h into its M-components and its Hom(∧^n g, h) block.
struct Decomposition {
  MixedCochain mixed;
  AlternatingMap pure;   // Hom(∧^n g, h), domain g, target h
};

/// Inverse of the lift on M ⊕ Hom(∧^n g, h). Throws NotInM naming the first
/// nonzero block outside that space.
Decomposition project_components(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h);

/// Lift of θ ∈ Hom(∧^k g, h) to a map on g⊕h.
AlternatingMap lift_to_sum(AlternatingMap const& theta, std::size_t dim_g, std::size_t dim_h);
/// Lift of f ∈ Hom(∧^k g, g) to a map on g⊕h.
AlternatingMap lift_g_to_sum(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h);
/// The projection P onto F: the Hom(∧^k g, h) block of a map on g⊕h.
AlternatingMap project_to_f(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h);

std::string describe_block(std::size_t k, std::size_t l, Side target);

}  // namespace rdlie
