#include "rdlie/nr.hpp"

#include "rdlie/errors.hpp"

namespace rdlie {

AlternatingMap circle(AlternatingMap const& f, AlternatingMap const& g) {
  if (f.domain_dim() != g.domain_dim() || f.target_dim() != f.domain_dim() || g.target_dim() != g.domain_dim()) {
    throw DimensionMismatch("circle product needs maps V^k -> V on a common space");
  }
  std::size_t m = f.arity(), n = g.arity();
  std::size_t dim = f.domain_dim();
  if (m == 0) throw DegreeMismatch("circle product with a constant on the left");
  AlternatingMap out(dim, m + n - 1, dim);
  auto const& table = WedgeTable::get(dim);
  for (WedgeMask whole : out.tuples()) {
    auto dst = out.values(whole);
    for (WedgeMask inner : table.masks(n)) {
      if ((inner & whole) != inner) continue;
      WedgeMask rest = whole & ~inner;
      int sign = block_sign(inner, rest);
      auto gv = g.values(inner);
      for (std::size_t c = 0; c < dim; ++c) {
        if (gv[c].is_zero()) continue;
        int s = insertion_sign(rest, c);
        if (s == 0) continue;
        auto fv = f.values(rest | bit(c));
        Rational w = (sign * s > 0) ? gv[c] : -gv[c];
        for (std::size_t t = 0; t < dim; ++t) dst[t].add_product(w, fv[t]);
      }
    }
  }
  return out;
}

AlternatingMap nr_bracket(AlternatingMap const& f, AlternatingMap const& g) {
  auto out = circle(f, g);
  auto back = circle(g, f);
  if (parity_sign(static_cast<long>(f.degree()) * g.degree()) > 0) {
    out -= back;
  } else {
    out += back;
  }
  return out;
}

bool is_mc(AlternatingMap const& omega) {
  if (omega.arity() != 2) throw DegreeMismatch("Maurer-Cartan test expects a bilinear map");
  return nr_bracket(omega, omega).is_zero();
}

bool graded_jacobi_check(AlternatingMap const& f, AlternatingMap const& g, AlternatingMap const& h) {
  auto lhs = nr_bracket(f, nr_bracket(g, h));
  auto rhs = nr_bracket(nr_bracket(f, g), h);
  auto tail = nr_bracket(g, nr_bracket(f, h));
  if (parity_sign(static_cast<long>(f.degree()) * g.degree()) > 0) {
    rhs += tail;
  } else {
    rhs -= tail;
  }
  return lhs == rhs;
}

}  // namespace rdlie
