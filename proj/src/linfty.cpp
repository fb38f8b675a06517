#include "rdlie/linfty.hpp"

#include <algorithm>
#include <functional>

#include "rdlie/errors.hpp"
#include "rdlie/nr.hpp"

namespace rdlie {

namespace {

std::size_t checked_arity(int a) {
  if (a < 0) throw DegreeMismatch("degree below −1 has no elements");
  return static_cast<std::size_t>(a);
}

void check_compatible(LInftyElement const& a, LInftyElement const& b) {
  if (a.dim_g != b.dim_g || a.dim_h != b.dim_h) throw DimensionMismatch("elements live over different g, h");
  if (a.degree != b.degree) throw DegreeMismatch("adding elements of different degrees");
}

}  // namespace

LInftyElement LInftyElement::zero(std::size_t dim_g, std::size_t dim_h, int degree) {
  LInftyElement e;
  e.dim_g = dim_g;
  e.dim_h = dim_h;
  e.degree = degree;
  e.m = AlternatingMap(dim_g + dim_h, checked_arity(degree + 2), dim_g + dim_h);
  e.f = AlternatingMap(dim_g, checked_arity(degree + 1), dim_h);
  return e;
}

LInftyElement LInftyElement::from_m(std::size_t dim_g, std::size_t dim_h, AlternatingMap m) {
  if (m.domain_dim() != dim_g + dim_h || m.target_dim() != dim_g + dim_h) {
    throw DimensionMismatch("𝓜-part must be a map on g⊕h");
  }
  auto e = zero(dim_g, dim_h, static_cast<int>(m.arity()) - 2);
  e.m = std::move(m);
  return e;
}

LInftyElement LInftyElement::from_f(std::size_t dim_g, std::size_t dim_h, AlternatingMap f) {
  if (f.domain_dim() != dim_g || f.target_dim() != dim_h) throw DimensionMismatch("F-part must map ∧g to h");
  auto e = zero(dim_g, dim_h, static_cast<int>(f.arity()) - 1);
  e.f = std::move(f);
  return e;
}

LInftyElement LInftyElement::pair(std::size_t dim_g, std::size_t dim_h, AlternatingMap m, AlternatingMap f) {
  auto e = from_m(dim_g, dim_h, std::move(m));
  auto ef = from_f(dim_g, dim_h, std::move(f));
  e += ef;
  return e;
}

LInftyElement& LInftyElement::operator+=(LInftyElement const& o) {
  check_compatible(*this, o);
  m += o.m;
  f += o.f;
  return *this;
}

LInftyElement& LInftyElement::operator-=(LInftyElement const& o) {
  check_compatible(*this, o);
  m -= o.m;
  f -= o.f;
  return *this;
}

LInftyElement& LInftyElement::operator*=(Rational const& s) {
  m *= s;
  f *= s;
  return *this;
}

// ---------------------------------------------------------------------------

LInftyElement derived_bracket(std::vector<LInftyElement> const& args) {
  if (args.empty()) throw DegreeMismatch("l_0 is not defined");
  std::size_t dg = args.front().dim_g, dh = args.front().dim_h;
  int total = 1;
  for (auto const& a : args) {
    if (a.dim_g != dg || a.dim_h != dh) throw DimensionMismatch("bracket arguments live over different g, h");
    total += a.degree;
  }
  auto out = LInftyElement::zero(dg, dh, total);
  std::size_t k = args.size();
  auto lift_f = [&](LInftyElement const& a) { return lift_to_sum(a.f, dg, dh); };

  if (k == 1) {
    out.f = project_to_f(args[0].m, dg, dh);
    return out;
  }
  if (k == 2) {
    auto const& x = args[0];
    auto const& y = args[1];
    if (!x.m.is_zero() && !y.m.is_zero()) {
      auto b = nr_bracket(x.m, y.m);
      if (x.m.degree() % 2 != 0) b *= Rational(-1);
      out.m += b;
    }
    if (!x.m.is_zero() && !y.f.is_zero()) out.f += project_to_f(nr_bracket(x.m, lift_f(y)), dg, dh);
    if (!x.f.is_zero() && !y.m.is_zero()) {
      auto b = project_to_f(nr_bracket(y.m, lift_f(x)), dg, dh);
      if (parity_sign(static_cast<long>(x.degree) * y.degree) < 0) b *= Rational(-1);
      out.f += b;
    }
    return out;
  }
  // k ≥ 3: exactly one 𝓜-factor, moved to the front with its Koszul sign.
  for (std::size_t j = 0; j < k; ++j) {
    if (args[j].m.is_zero()) continue;
    bool any_zero = false;
    long passed = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      if (args[i].f.is_zero()) any_zero = true;
      if (i < j) passed += args[i].degree;
    }
    if (any_zero) continue;
    AlternatingMap cur = args[j].m;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != j) cur = nr_bracket(cur, lift_f(args[i]));
    }
    auto p = project_to_f(cur, dg, dh);
    if (parity_sign(passed * args[j].degree) < 0) p *= Rational(-1);
    out.f += p;
  }
  return out;
}

LInftyElement structure_element(LieActTriple const& t, RationalMatrix const& d) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  return LInftyElement::pair(dg, dh, t.structure_lift(), AlternatingMap::linear(d));
}

namespace {

std::size_t max_m_arity(LInftyElement const& alpha, std::vector<LInftyElement> const& xs) {
  std::size_t a = alpha.m.is_zero() ? 0 : alpha.m.arity();
  for (auto const& x : xs) {
    if (!x.m.is_zero()) a = std::max(a, x.m.arity());
  }
  return a;
}

}  // namespace

LInftyElement mc_curvature(LInftyElement const& alpha) {
  if (alpha.degree != 0) throw DegreeMismatch("Maurer-Cartan elements have degree 0");
  auto out = LInftyElement::zero(alpha.dim_g, alpha.dim_h, 1);
  std::size_t bound = max_m_arity(alpha, {}) + 2;
  for (std::size_t k = 1; k <= bound; ++k) {
    auto term = derived_bracket(std::vector<LInftyElement>(k, alpha));
    term *= Rational(1) / factorial(static_cast<unsigned>(k));
    out += term;
  }
  return out;
}

bool mc_check_linfty(LieActTriple const& t, RationalMatrix const& d) {
  return mc_curvature(structure_element(t, d)).is_zero();
}

TwistedBrackets::TwistedBrackets(LInftyElement alpha) : alpha_(std::move(alpha)) {
  if (!mc_curvature(alpha_).is_zero()) throw NotMaurerCartan("twisting element does not solve the Maurer-Cartan equation");
}

namespace {

LInftyElement twisted_sum(LInftyElement const& alpha, std::vector<LInftyElement> const& args) {
  if (args.empty()) throw DegreeMismatch("l_0 is not defined");
  int total = 1;
  for (auto const& a : args) total += a.degree;
  auto out = LInftyElement::zero(alpha.dim_g, alpha.dim_h, total);
  std::size_t bound = max_m_arity(alpha, args) + 1;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::vector<LInftyElement> full(n, alpha);
    full.insert(full.end(), args.begin(), args.end());
    auto term = derived_bracket(full);
    term *= Rational(1) / factorial(static_cast<unsigned>(n));
    out += term;
  }
  return out;
}

}  // namespace

LInftyElement TwistedBrackets::operator()(std::vector<LInftyElement> const& args) const {
  return twisted_sum(alpha_, args);
}

LInftyElement twisted_bracket(LInftyElement const& alpha, std::vector<LInftyElement> const& args) {
  return TwistedBrackets(alpha)(args);
}

namespace {

LInftyElement jacobiator_with(std::function<LInftyElement(std::vector<LInftyElement> const&)> const& l,
                              std::vector<LInftyElement> const& xs) {
  std::size_t n = xs.size();
  if (n == 0) throw DegreeMismatch("empty argument list");
  int total = 2;
  std::vector<int> degrees;
  for (auto const& x : xs) {
    total += x.degree;
    degrees.push_back(x.degree);
  }
  auto out = LInftyElement::zero(xs.front().dim_g, xs.front().dim_h, total);
  for (std::size_t i = 1; i <= n; ++i) {
    for (auto const& sh : shuffles(i, n)) {
      std::vector<std::size_t> arrangement;
      for (auto v : sh.image) arrangement.push_back(v - 1);
      int eps = koszul_sign(arrangement, degrees);
      std::vector<LInftyElement> inner, outer;
      for (std::size_t p = 0; p < i; ++p) inner.push_back(xs[arrangement[p]]);
      outer.push_back(l(inner));
      for (std::size_t p = i; p < n; ++p) outer.push_back(xs[arrangement[p]]);
      auto term = l(outer);
      if (eps < 0) {
        out -= term;
      } else {
        out += term;
      }
    }
  }
  return out;
}

}  // namespace

LInftyElement jacobiator(std::vector<LInftyElement> const& xs) { return jacobiator_with(derived_bracket, xs); }

LInftyElement jacobiator_twisted(LInftyElement const& alpha, std::vector<LInftyElement> const& xs) {
  TwistedBrackets l(alpha);
  return jacobiator_with([&](std::vector<LInftyElement> const& a) { return l(a); }, xs);
}

bool generalized_jacobi_check(std::vector<LInftyElement> const& xs) { return jacobiator(xs).is_zero(); }

bool generalized_jacobi_check_twisted(LInftyElement const& alpha, std::vector<LInftyElement> const& xs) {
  return jacobiator_twisted(alpha, xs).is_zero();
}

// ---------------------------------------------------------------------------

bool direct_rel_diff_check(LieActTriple const& t, RationalMatrix const& d) {
  return jacobi_failures(t.g().bracket_map()).empty() && jacobi_failures(t.h().bracket_map()).empty() &&
         action_failures(t.g(), t.h(), t.rho()).empty() && difference_op_failures(t, d).empty();
}

DeformationCheck deformation_mc_check(RelDiffStructure const& base, Perturbation const& p) {
  auto const& t = base.triple();
  std::size_t dg = base.dim_g(), dh = base.dim_h();
  if (p.rho.size() != dg) throw DimensionMismatch("perturbation of the action has the wrong length");
  std::vector<RationalMatrix> rho_total;
  for (std::size_t i = 0; i < dg; ++i) rho_total.push_back(t.rho()[i] + p.rho[i]);
  auto g2 = LieAlgebra::unchecked(t.g().names(), t.g().bracket_map() + p.pi);
  auto h2 = LieAlgebra::unchecked(t.h().names(), t.h().bracket_map() + p.mu);
  auto t2 = LieActTriple::unchecked(g2, h2, rho_total);

  DeformationCheck result;
  result.direct = direct_rel_diff_check(t2, base.d() + p.d);

  TwistedBrackets l(structure_element(t, base.d()));
  auto pert_triple = LieActTriple::unchecked(LieAlgebra::unchecked(t.g().names(), p.pi),
                                             LieAlgebra::unchecked(t.h().names(), p.mu), p.rho);
  auto a = structure_element(pert_triple, p.d);
  auto sum = LInftyElement::zero(dg, dh, 1);
  for (std::size_t k = 1; k <= 4; ++k) {
    auto term = l(std::vector<LInftyElement>(k, a));
    term *= Rational(1) / factorial(static_cast<unsigned>(k));
    sum += term;
  }
  result.twisted = sum.is_zero();
  if (result.direct != result.twisted) {
    throw InternalInconsistency("direct validation and twisted Maurer-Cartan test disagree");
  }
  return result;
}

}  // namespace rdlie
