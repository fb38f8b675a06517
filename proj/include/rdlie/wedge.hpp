#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rdlie {

/// A strictly increasing list of basis indices, stored as a bit set. Bit i is
/// set iff basis vector i occurs; the wedge degree is the popcount.
using WedgeMask = std::uint32_t;

inline constexpr std::size_t kMaxDimension = 20;

inline std::size_t wedge_degree(WedgeMask m) { return static_cast<std::size_t>(std::popcount(m)); }
inline WedgeMask below(std::size_t i) { return (WedgeMask{1} << i) - 1; }
inline WedgeMask bit(std::size_t i) { return WedgeMask{1} << i; }

std::vector<std::size_t> wedge_indices(WedgeMask m);
/// Throws std::invalid_argument unless `indices` is strictly increasing and below kMaxDimension.
WedgeMask wedge_mask(std::span<const std::size_t> indices);

/// Sign of e_c ∧ e_R relative to the sorted wedge of R ∪ {c}; 0 if c ∈ R.
inline int insertion_sign(WedgeMask rest, std::size_t c) {
  if (rest & bit(c)) return 0;
  return (std::popcount(rest & below(c)) & 1) ? -1 : 1;
}

/// Sign of the arrangement (sorted first, sorted second) relative to the sorted
/// union; 0 if the sets overlap.
int block_sign(WedgeMask first, WedgeMask second);

/// Sorts a list of basis indices into a mask; returns the permutation sign or
/// 0 when an index repeats.
int sort_to_mask(std::span<const std::size_t> indices, WedgeMask& out);

/// Enumerates strictly increasing index tuples of a given length in
/// lexicographic order and ranks them.
class WedgeTable {
 public:
  static WedgeTable const& get(std::size_t dim);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::span<const WedgeMask> masks(std::size_t degree) const;
  [[nodiscard]] std::size_t count(std::size_t degree) const { return masks(degree).size(); }
  /// Position of m among masks(wedge_degree(m)).
  [[nodiscard]] std::size_t rank(WedgeMask m) const { return rank_[m]; }

 private:
  explicit WedgeTable(std::size_t dim);

  std::size_t dim_;
  std::vector<std::vector<WedgeMask>> by_degree_;
  std::vector<std::uint32_t> rank_;
};

/// An (i, n−i)-shuffle τ written as its image list (τ(1), …, τ(n)) with 1-based
/// values, together with its sign.
struct Shuffle {
  std::vector<std::size_t> image;
  int sign = 1;
};

/// All (i, n−i)-shuffles, ordered lexicographically by the first block.
std::vector<Shuffle> shuffles(std::size_t i, std::size_t n);

/// Koszul sign ε(σ) of the rearrangement x_{σ(1)}, …, x_{σ(n)} of graded
/// elements x_1, …, x_n. `arrangement[k]` is σ(k+1) (0-based element index)
/// and `degrees[i]` the degree of x_{i+1}.
int koszul_sign(std::span<const std::size_t> arrangement, std::span<const int> degrees);

/// Ordinary sign of a permutation given as an arrangement of 0..n−1.
int permutation_sign(std::span<const std::size_t> arrangement);

}  // namespace rdlie
