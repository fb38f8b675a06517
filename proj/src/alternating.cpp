#include "rdlie/alternating.hpp"

#include <sstream>

#include "rdlie/errors.hpp"

namespace rdlie {

AlternatingMap::AlternatingMap(std::size_t domain_dim, std::size_t arity, std::size_t target_dim)
    : domain_dim_(domain_dim), arity_(arity), target_dim_(target_dim) {
  if (domain_dim > kMaxDimension) throw DimensionMismatch("domain dimension exceeds supported maximum");
  tuples_ = arity > domain_dim ? 0 : WedgeTable::get(domain_dim).count(arity);
  coeffs_.resize(tuples_ * target_dim);
}

std::size_t AlternatingMap::offset(WedgeMask m) const {
  return WedgeTable::get(domain_dim_).rank(m) * target_dim_;
}

std::span<const Rational> AlternatingMap::values(WedgeMask m) const {
  return {coeffs_.data() + offset(m), target_dim_};
}

std::span<Rational> AlternatingMap::values(WedgeMask m) { return {coeffs_.data() + offset(m), target_dim_}; }

std::span<const WedgeMask> AlternatingMap::tuples() const { return WedgeTable::get(domain_dim_).masks(arity_); }

Vector AlternatingMap::on_basis(std::span<const std::size_t> indices) const {
  if (indices.size() != arity_) throw DimensionMismatch("wrong number of arguments");
  Vector out(target_dim_);
  for (auto i : indices) {
    if (i >= domain_dim_) throw DimensionMismatch("basis index out of range");
  }
  WedgeMask m = 0;
  int sign = sort_to_mask(indices, m);
  if (sign == 0) return out;
  auto v = values(m);
  for (std::size_t t = 0; t < target_dim_; ++t) out[t] = sign > 0 ? v[t] : -v[t];
  return out;
}

Vector AlternatingMap::evaluate(std::vector<Vector> const& args) const {
  if (args.size() != arity_) throw DimensionMismatch("wrong number of arguments");
  for (auto const& a : args) {
    if (a.size() != domain_dim_) throw DimensionMismatch("argument has wrong dimension");
  }
  Vector out(target_dim_);
  std::vector<std::size_t> idx(arity_);
  auto recurse = [&](auto&& self, std::size_t pos, WedgeMask used, int parity, Rational const& weight) -> void {
    if (pos == arity_) {
      auto v = values(used);
      Rational w = parity & 1 ? -weight : weight;
      for (std::size_t t = 0; t < target_dim_; ++t) out[t].add_product(w, v[t]);
      return;
    }
    for (std::size_t c = 0; c < domain_dim_; ++c) {
      if (args[pos][c].is_zero() || (used & bit(c))) continue;
      int extra = std::popcount(used & ~below(c + 1));
      self(self, pos + 1, used | bit(c), parity + extra, weight * args[pos][c]);
    }
  };
  recurse(recurse, 0, 0, 0, Rational(1));
  return out;
}

AlternatingMap AlternatingMap::from_coordinates(std::size_t domain_dim, std::size_t arity, std::size_t target_dim,
                                                std::span<const Rational> coords) {
  AlternatingMap f(domain_dim, arity, target_dim);
  if (coords.size() != f.coeffs_.size()) throw DimensionMismatch("coordinate vector has wrong length");
  std::copy(coords.begin(), coords.end(), f.coeffs_.begin());
  return f;
}

bool AlternatingMap::is_zero() const { return rdlie::is_zero(coeffs_); }

AlternatingMap AlternatingMap::postcompose(RationalMatrix const& a) const {
  if (a.cols() != target_dim_) throw DimensionMismatch("postcompose: matrix does not match target");
  AlternatingMap out(domain_dim_, arity_, a.rows());
  for (auto m : tuples()) {
    auto v = a.apply(values(m));
    std::copy(v.begin(), v.end(), out.values(m).begin());
  }
  return out;
}

AlternatingMap AlternatingMap::pullback(RationalMatrix const& a) const {
  if (a.rows() != domain_dim_) throw DimensionMismatch("pullback: matrix does not match domain");
  AlternatingMap out(a.cols(), arity_, target_dim_);
  for (auto m : out.tuples()) {
    std::vector<Vector> args;
    for (auto i : wedge_indices(m)) args.push_back(a.column(i));
    auto v = evaluate(args);
    std::copy(v.begin(), v.end(), out.values(m).begin());
  }
  return out;
}

AlternatingMap& AlternatingMap::operator+=(AlternatingMap const& o) {
  if (!same_shape(o)) throw DimensionMismatch("adding alternating maps of different shapes");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

AlternatingMap& AlternatingMap::operator-=(AlternatingMap const& o) {
  if (!same_shape(o)) throw DimensionMismatch("subtracting alternating maps of different shapes");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

AlternatingMap& AlternatingMap::operator*=(Rational const& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

AlternatingMap AlternatingMap::linear(RationalMatrix const& m) {
  AlternatingMap f(m.cols(), 1, m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto v = f.values(bit(c));
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c);
  }
  return f;
}

RationalMatrix AlternatingMap::as_matrix() const {
  if (arity_ != 1) throw DegreeMismatch("as_matrix requires a linear map");
  RationalMatrix m(target_dim_, domain_dim_);
  for (std::size_t c = 0; c < domain_dim_; ++c) m.set_column(c, values(bit(c)));
  return m;
}

// ---------------------------------------------------------------------------

BigradedMap::BigradedMap(std::size_t dim_g, std::size_t dim_h, std::size_t k, std::size_t l, Side target)
    : dim_g_(dim_g), dim_h_(dim_h), k_(k), l_(l), target_(target) {
  if (dim_g + dim_h > kMaxDimension) throw DimensionMismatch("g ⊕ h exceeds supported dimension");
  std::size_t g_tuples = k > dim_g ? 0 : WedgeTable::get(dim_g).count(k);
  h_tuples_ = l > dim_h ? 0 : WedgeTable::get(dim_h).count(l);
  coeffs_.resize(g_tuples * h_tuples_ * target_dim());
}

std::size_t BigradedMap::offset(WedgeMask g_part, WedgeMask h_part) const {
  auto rg = WedgeTable::get(dim_g_).rank(g_part);
  auto rh = WedgeTable::get(dim_h_).rank(h_part);
  return (rg * h_tuples_ + rh) * target_dim();
}

std::span<const Rational> BigradedMap::values(WedgeMask g_part, WedgeMask h_part) const {
  return {coeffs_.data() + offset(g_part, h_part), target_dim()};
}

std::span<Rational> BigradedMap::values(WedgeMask g_part, WedgeMask h_part) {
  return {coeffs_.data() + offset(g_part, h_part), target_dim()};
}

BigradedMap BigradedMap::from_coordinates(std::size_t dim_g, std::size_t dim_h, std::size_t k, std::size_t l,
                                          Side target, std::span<const Rational> coords) {
  BigradedMap b(dim_g, dim_h, k, l, target);
  if (coords.size() != b.coeffs_.size()) throw DimensionMismatch("coordinate vector has wrong length");
  std::copy(coords.begin(), coords.end(), b.coeffs_.begin());
  return b;
}

bool BigradedMap::is_zero() const { return rdlie::is_zero(coeffs_); }

AlternatingMap BigradedMap::lift() const {
  std::size_t dim = dim_g_ + dim_h_;
  AlternatingMap out(dim, k_ + l_, dim);
  std::size_t shift = target_ == Side::G ? 0 : dim_g_;
  // On a sorted basis tuple the g-vectors precede the h-vectors, so only the
  // identity shuffle contributes and the sign is +1.
  for (WedgeMask gm : WedgeTable::get(dim_g_).masks(k_)) {
    for (WedgeMask hm : WedgeTable::get(dim_h_).masks(l_)) {
      auto src = values(gm, hm);
      auto dst = out.values(gm | (hm << dim_g_));
      for (std::size_t t = 0; t < src.size(); ++t) dst[shift + t] = src[t];
    }
  }
  return out;
}

BigradedMap BigradedMap::block_of(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h, std::size_t k,
                                  std::size_t l, Side target) {
  if (f.domain_dim() != dim_g + dim_h || f.target_dim() != dim_g + dim_h || f.arity() != k + l) {
    throw DimensionMismatch("block_of: map does not live on g ⊕ h with the requested arity");
  }
  BigradedMap b(dim_g, dim_h, k, l, target);
  std::size_t shift = target == Side::G ? 0 : dim_g;
  for (WedgeMask gm : WedgeTable::get(dim_g).masks(k)) {
    for (WedgeMask hm : WedgeTable::get(dim_h).masks(l)) {
      auto src = f.values(gm | (hm << dim_g));
      auto dst = b.values(gm, hm);
      for (std::size_t t = 0; t < dst.size(); ++t) dst[t] = src[shift + t];
    }
  }
  return b;
}

// ---------------------------------------------------------------------------

MixedCochain MixedCochain::zero(std::size_t dim_g, std::size_t dim_h, std::size_t n) {
  MixedCochain c;
  c.n = n;
  c.f0 = BigradedMap(dim_g, dim_h, n, 0, Side::G);
  for (std::size_t i = 1; i <= n; ++i) c.parts.emplace_back(dim_g, dim_h, n - i, i, Side::H);
  return c;
}

AlternatingMap MixedCochain::lift() const {
  AlternatingMap out = f0.lift();
  for (auto const& p : parts) out += p.lift();
  return out;
}

Vector MixedCochain::coordinates() const {
  Vector out(f0.coordinates().begin(), f0.coordinates().end());
  for (auto const& p : parts) out.insert(out.end(), p.coordinates().begin(), p.coordinates().end());
  return out;
}

std::size_t MixedCochain::coordinate_count(std::size_t dim_g, std::size_t dim_h, std::size_t n) {
  std::size_t total = BigradedMap(dim_g, dim_h, n, 0, Side::G).coordinate_count();
  for (std::size_t i = 1; i <= n; ++i) total += BigradedMap(dim_g, dim_h, n - i, i, Side::H).coordinate_count();
  return total;
}

MixedCochain MixedCochain::from_coordinates(std::size_t dim_g, std::size_t dim_h, std::size_t n,
                                            std::span<const Rational> coords) {
  MixedCochain c = zero(dim_g, dim_h, n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    auto& b = c.component(i);
    std::size_t len = b.coordinate_count();
    if (pos + len > coords.size()) throw DimensionMismatch("mixed cochain coordinates too short");
    b = BigradedMap::from_coordinates(dim_g, dim_h, b.k(), b.l(), b.target(), coords.subspan(pos, len));
    pos += len;
  }
  if (pos != coords.size()) throw DimensionMismatch("mixed cochain coordinates too long");
  return c;
}

bool MixedCochain::is_zero() const {
  if (!f0.is_zero()) return false;
  for (auto const& p : parts) {
    if (!p.is_zero()) return false;
  }
  return true;
}

std::string describe_block(std::size_t k, std::size_t l, Side target) {
  std::ostringstream os;
  os << "Hom(∧^" << k << " g ⊗ ∧^" << l << " h, " << (target == Side::G ? "g" : "h") << ")";
  return os.str();
}

Decomposition project_components(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h) {
  std::size_t n = f.arity();
  Decomposition d{MixedCochain::zero(dim_g, dim_h, n), AlternatingMap(dim_g, n, dim_h)};
  for (std::size_t l = 0; l <= n; ++l) {
    std::size_t k = n - l;
    auto to_g = BigradedMap::block_of(f, dim_g, dim_h, k, l, Side::G);
    auto to_h = BigradedMap::block_of(f, dim_g, dim_h, k, l, Side::H);
    if (l == 0) {
      d.mixed.f0 = std::move(to_g);
      d.pure = AlternatingMap::from_coordinates(dim_g, n, dim_h, to_h.coordinates());
    } else {
      if (!to_g.is_zero()) throw NotInM("nonzero component in " + describe_block(k, l, Side::G));
      d.mixed.parts[l - 1] = std::move(to_h);
    }
  }
  return d;
}

AlternatingMap lift_to_sum(AlternatingMap const& theta, std::size_t dim_g, std::size_t dim_h) {
  if (theta.domain_dim() != dim_g || theta.target_dim() != dim_h) throw DimensionMismatch("lift_to_sum: shape");
  return BigradedMap::from_coordinates(dim_g, dim_h, theta.arity(), 0, Side::H, theta.coordinates()).lift();
}

AlternatingMap lift_g_to_sum(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h) {
  if (f.domain_dim() != dim_g || f.target_dim() != dim_g) throw DimensionMismatch("lift_g_to_sum: shape");
  return BigradedMap::from_coordinates(dim_g, dim_h, f.arity(), 0, Side::G, f.coordinates()).lift();
}

AlternatingMap project_to_f(AlternatingMap const& f, std::size_t dim_g, std::size_t dim_h) {
  auto block = BigradedMap::block_of(f, dim_g, dim_h, f.arity(), 0, Side::H);
  return AlternatingMap::from_coordinates(dim_g, f.arity(), dim_h, block.coordinates());
}

}  // namespace rdlie
