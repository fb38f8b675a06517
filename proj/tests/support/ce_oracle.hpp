#pragma once

#include <algorithm>
#include <vector>

#include "rdlie/alternating.hpp"
#include "rdlie/structures.hpp"
#include "rdlie/wedge.hpp"

namespace rdlie::testing {

inline std::vector<RationalMatrix> ad_of(LieAlgebra const& g) {
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < g.dim(); ++i) out.push_back(g.ad_basis(i));
  return out;
}

// dθ(x_0,…,x_k) straight from the textbook formula, evaluating θ on argument lists.
inline AlternatingMap naive_ce(LieAlgebra const& g, std::vector<RationalMatrix> const& rep, AlternatingMap const& theta) {
  std::size_t dim = g.dim(), k = theta.arity();
  AlternatingMap out(dim, k + 1, theta.target_dim());
  for (auto m : out.tuples()) {
    auto idx = wedge_indices(m);
    std::vector<Vector> xs;
    for (auto i : idx) xs.push_back(unit_vector(dim, i));
    Vector acc = zero_vector(theta.target_dim());
    for (std::size_t a = 0; a <= k; ++a) {
      std::vector<Vector> rest;
      for (std::size_t c = 0; c <= k; ++c) {
        if (c != a) rest.push_back(xs[c]);
      }
      Vector v = rep.empty() ? zero_vector(theta.target_dim()) : rep[idx[a]].apply(theta.evaluate(rest));
      acc = acc + Rational(a % 2 == 0 ? 1 : -1) * v;
    }
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = a + 1; b <= k; ++b) {
        std::vector<Vector> args{g.bracket(xs[a], xs[b])};
        for (std::size_t c = 0; c <= k; ++c) {
          if (c != a && c != b) args.push_back(xs[c]);
        }
        acc = acc + Rational((a + b) % 2 == 0 ? 1 : -1) * theta.evaluate(args);
      }
    }
    auto dst = out.values(m);
    std::copy(acc.begin(), acc.end(), dst.begin());
  }
  return out;
}

// dim ker and rank of the plain CE differential, built from naive_ce.
inline RationalMatrix naive_ce_matrix(LieAlgebra const& g, std::vector<RationalMatrix> const& rep, std::size_t target,
                               std::size_t k) {
  std::size_t dim = g.dim();
  std::size_t cols = WedgeTable::get(dim).count(k) * target;
  std::size_t rows = WedgeTable::get(dim).count(k + 1) * target;
  RationalMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    auto theta = AlternatingMap::from_coordinates(dim, k, target, unit_vector(cols, j));
    auto img = naive_ce(g, rep, theta);
    out.set_column(j, img.coordinates());
  }
  return out;
}

inline std::size_t naive_ce_dim(LieAlgebra const& g, std::vector<RationalMatrix> const& rep, std::size_t target,
                         std::size_t k) {
  std::size_t cdim = WedgeTable::get(g.dim()).count(k) * target;
  std::size_t kernel = cdim - rank(naive_ce_matrix(g, rep, target, k));
  std::size_t image = k == 0 ? 0 : rank(naive_ce_matrix(g, rep, target, k - 1));
  return kernel - image;
}

}  // namespace rdlie::testing
