#include "rdlie/wedge.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rdlie {

std::vector<std::size_t> wedge_indices(WedgeMask m) {
  std::vector<std::size_t> out;
  out.reserve(wedge_degree(m));
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

WedgeMask wedge_mask(std::span<const std::size_t> indices) {
  WedgeMask m = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= kMaxDimension) throw std::invalid_argument("wedge index out of range");
    if (k > 0 && indices[k] <= indices[k - 1]) throw std::invalid_argument("wedge index not strictly increasing");
    m |= bit(indices[k]);
  }
  return m;
}

int block_sign(WedgeMask first, WedgeMask second) {
  if (first & second) return 0;
  int parity = 0;
  for (WedgeMask f = first; f != 0; f &= f - 1) {
    auto a = static_cast<std::size_t>(std::countr_zero(f));
    parity += std::popcount(second & below(a));
  }
  return (parity & 1) ? -1 : 1;
}

int sort_to_mask(std::span<const std::size_t> indices, WedgeMask& out) {
  out = 0;
  int parity = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    auto c = indices[k];
    if (c >= kMaxDimension) throw std::invalid_argument("basis index out of range");
    if (out & bit(c)) return 0;
    // number of earlier entries greater than c
    parity += std::popcount(out & ~below(c + 1));
    out |= bit(c);
  }
  return (parity & 1) ? -1 : 1;
}

WedgeTable::WedgeTable(std::size_t dim) : dim_(dim), by_degree_(dim + 1), rank_(std::size_t{1} << dim, 0) {
  // Recursive lexicographic enumeration of increasing tuples.
  for (std::size_t degree = 0; degree <= dim; ++degree) {
    std::vector<std::size_t> tuple(degree);
    auto& out = by_degree_[degree];
    auto recurse = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
      if (pos == degree) {
        out.push_back(wedge_mask(tuple));
        return;
      }
      for (std::size_t v = start; v + (degree - pos) <= dim; ++v) {
        tuple[pos] = v;
        self(self, pos + 1, v + 1);
      }
    };
    recurse(recurse, 0, 0);
    for (std::size_t r = 0; r < out.size(); ++r) rank_[out[r]] = static_cast<std::uint32_t>(r);
  }
}

WedgeTable const& WedgeTable::get(std::size_t dim) {
  if (dim > kMaxDimension) throw std::invalid_argument("dimension exceeds supported maximum");
  static std::array<std::unique_ptr<WedgeTable>, kMaxDimension + 1> tables;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto& slot = tables[dim];
  if (!slot) slot.reset(new WedgeTable(dim));
  return *slot;
}

std::span<const WedgeMask> WedgeTable::masks(std::size_t degree) const {
  if (degree > dim_) return {};
  return by_degree_[degree];
}

std::vector<Shuffle> shuffles(std::size_t i, std::size_t n) {
  if (i > n) throw std::invalid_argument("shuffle block larger than total");
  std::vector<Shuffle> out;
  for (WedgeMask first : WedgeTable::get(n).masks(i)) {
    WedgeMask all = n == 0 ? 0 : below(n);
    WedgeMask second = all & ~first;
    Shuffle s;
    for (auto k : wedge_indices(first)) s.image.push_back(k + 1);
    for (auto k : wedge_indices(second)) s.image.push_back(k + 1);
    s.sign = block_sign(first, second);
    out.push_back(std::move(s));
  }
  return out;
}

int koszul_sign(std::span<const std::size_t> arrangement, std::span<const int> degrees) {
  if (arrangement.size() != degrees.size()) throw std::invalid_argument("degree list length mismatch");
  int parity = 0;
  for (std::size_t a = 0; a < arrangement.size(); ++a) {
    for (std::size_t b = a + 1; b < arrangement.size(); ++b) {
      if (arrangement[a] > arrangement[b]) parity += degrees[arrangement[a]] * degrees[arrangement[b]];
    }
  }
  return (parity & 1) ? -1 : 1;
}

int permutation_sign(std::span<const std::size_t> arrangement) {
  int parity = 0;
  for (std::size_t a = 0; a < arrangement.size(); ++a) {
    for (std::size_t b = a + 1; b < arrangement.size(); ++b) {
      if (arrangement[a] > arrangement[b]) ++parity;
    }
  }
  return (parity & 1) ? -1 : 1;
}

}  // namespace rdlie
