#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdlie/errors.hpp"
#include "rdlie/linear.hpp"
#include "rdlie/structures.hpp"

namespace rdlie {

/// Length c of the lower central series g ⊋ [g,g] ⊋ … ⊋ g^{c+1} = 0.
/// Throws NotNilpotent if the series stabilizes at a nonzero ideal. The zero algebra has class 0.
std::size_t nilpotency_class(LieAlgebra const& a);

constexpr unsigned kDefaultBchOrder = 6;
constexpr unsigned kMaxBchOrder = 10;

/// RDLIE_BCH_ORDER if set, else kDefaultBchOrder. Throws InputError on a malformed value.
unsigned default_bch_order();

/// A word over {X, Y}; X is false, Y is true. Read as the right-nested bracket [w1,[w2,[…,wm]]].
using BracketWord = std::vector<bool>;

struct BchTerm {
  Rational coefficient;
  BracketWord word;
};

/// Dynkin's series log(e^X e^Y) up to words of length `order`, with equal words merged
/// and zero terms dropped.
class BCHTable {
 public:
  explicit BCHTable(unsigned order);
  [[nodiscard]] unsigned order() const { return order_; }
  [[nodiscard]] std::vector<BchTerm> const& terms() const { return terms_; }

 private:
  unsigned order_;
  std::vector<BchTerm> terms_;
};

/// Shared table for an order; built once.
BCHTable const& bch_table(unsigned order);

/// Simply connected nilpotent group of a nilpotent Lie algebra in exponential coordinates
/// of the first kind.
class NilpotentGroup {
 public:
  NilpotentGroup() = default;
  /// Throws NotNilpotent, or ClassExceedsOrder if the class exceeds the truncation order.
  explicit NilpotentGroup(LieAlgebra algebra, unsigned order = default_bch_order());

  [[nodiscard]] LieAlgebra const& algebra() const;
  [[nodiscard]] std::size_t dim() const;
  [[nodiscard]] std::size_t nilpotency_class() const;
  [[nodiscard]] unsigned order() const;

  /// exp x · exp y = exp bch(x, y).
  [[nodiscard]] Vector multiply(std::span<const Rational> x, std::span<const Rational> y) const;
  [[nodiscard]] std::vector<DualScalar> multiply(std::span<const DualScalar> x,
                                                 std::span<const DualScalar> y) const;
  [[nodiscard]] Vector inverse(std::span<const Rational> x) const;
  [[nodiscard]] Vector identity() const { return zero_vector(dim()); }

  friend bool operator==(NilpotentGroup const& a, NilpotentGroup const& b) { return a.impl_ == b.impl_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// bch(x, y) on a nilpotent algebra with the default order.
Vector bch(LieAlgebra const& a, std::span<const Rational> x, std::span<const Rational> y);

struct GroupElement {
  NilpotentGroup group;
  Vector coords;

  [[nodiscard]] GroupElement inverse() const { return {group, group.inverse(coords)}; }
  friend GroupElement operator*(GroupElement const& a, GroupElement const& b);
  friend bool operator==(GroupElement const& a, GroupElement const& b) {
    return a.group == b.group && a.coords == b.coords;
  }
};

/// e^{M} for a nilpotent matrix M by the finite series. Throws ActionNotNilpotent otherwise.
RationalMatrix nilpotent_exp(RationalMatrix const& m);

/// Φ(exp x) on exponential coordinates of H, i.e. e^{ρ(x)}. Throws ActionNotNilpotent.
RationalMatrix integrated_action(RelDiffStructure const& s, std::span<const Rational> x);

/// (G, H, Φ, 𝒟) integrating a nilpotent relative difference Lie algebra.
class RelDiffGroup {
 public:
  RelDiffGroup() = default;

  [[nodiscard]] RelDiffStructure const& structure() const { return s_; }
  [[nodiscard]] NilpotentGroup const& g_group() const { return g_; }
  [[nodiscard]] NilpotentGroup const& h_group() const { return h_; }
  /// G ⋉_Φ H in exponential coordinates of g ⋉_ρ h (g first).
  [[nodiscard]] NilpotentGroup const& semidirect_group() const { return gh_; }

  [[nodiscard]] RationalMatrix action(std::span<const Rational> x) const;
  [[nodiscard]] Vector act(std::span<const Rational> x, std::span<const Rational> u) const;
  /// 𝒟(exp x) as the h-part of bch((x, Dx), (−x, 0)) over g ⋉ h.
  [[nodiscard]] Vector operator_at(std::span<const Rational> x) const;
  /// First-order coefficient in t of 𝒟(exp(t x)), evaluated with dual scalars.
  [[nodiscard]] Vector operator_tangent(std::span<const Rational> x) const;
  /// Product in G ⋉_Φ H of pairs (a, u) in exponential coordinates of each factor.
  [[nodiscard]] std::pair<Vector, Vector> pair_multiply(std::span<const Rational> a, std::span<const Rational> u,
                                                        std::span<const Rational> b,
                                                        std::span<const Rational> v) const;

 private:
  friend RelDiffGroup integrate_operator(RelDiffStructure const& s, unsigned order);
  RelDiffStructure s_;
  NilpotentGroup g_, h_, gh_;
};

/// Throws NotNilpotent if g ⋉_ρ h is not nilpotent, ClassExceedsOrder if its class exceeds `order`.
RelDiffGroup integrate_operator(RelDiffStructure const& s, unsigned order = default_bch_order());

/// Grid points in lexicographic order, every coordinate ranging over `values`.
std::vector<Vector> grid_points(std::size_t dim, std::vector<Rational> const& values);
/// {−1, −1/2, 0, 1/2, 1}.
std::vector<Rational> default_grid_values();

struct SamplePair {
  Vector a, b;
};
/// Pairs (p_i, p_{(37 i + 11) mod N}) over the N grid points.
std::vector<SamplePair> grid_pairs(std::vector<Vector> const& points);
std::vector<SamplePair> default_sample_pairs(std::size_t dim);

using OperatorEvaluator = std::function<Vector(std::span<const Rational>)>;

struct GroupLawFailure {
  SamplePair pair;
  Vector lhs;   // 𝒟(a·b)
  Vector rhs;   // 𝒟(a)·Φ(a)𝒟(b)
};

struct GroupLawReport {
  std::size_t pairs_checked = 0;
  std::optional<GroupLawFailure> failure;   // the first failing pair
  [[nodiscard]] bool passed() const { return !failure.has_value(); }
};

/// 𝒟(a·b) = 𝒟(a)·Φ(a)𝒟(b) for every sample pair.
GroupLawReport group_law_check(RelDiffGroup const& g, std::vector<SamplePair> const& samples);
/// The same identity with an arbitrary candidate for 𝒟.
GroupLawReport group_law_check(RelDiffGroup const& g, OperatorEvaluator const& op,
                               std::vector<SamplePair> const& samples);

struct FunctorialityReport {
  std::size_t operator_samples = 0;
  std::size_t action_samples = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// With Ψ_G(exp x) = exp(ψ_g x) and Ψ_H(exp u) = exp(ψ_h u), checks Ψ_H∘𝒟 = 𝒟′∘Ψ_G on the
/// g-samples and Ψ_H(Φ(a)u) = Φ′(Ψ_G a)(Ψ_H u) on pairs of g- and h-samples.
/// Throws NotAHomomorphism if (ψ_g, ψ_h) fails the Lie algebra level conditions.
FunctorialityReport functoriality_check(RelDiffStructure const& s, RelDiffStructure const& target,
                                        RationalMatrix const& psi_g, RationalMatrix const& psi_h,
                                        std::vector<Vector> const& g_samples,
                                        std::vector<Vector> const& h_samples,
                                        unsigned order = default_bch_order());

}  // namespace rdlie
