#include "rdlie/cohomology.hpp"

#include <functional>

#include "rdlie/errors.hpp"
#include "rdlie/linfty.hpp"
#include "rdlie/nr.hpp"

namespace rdlie {

namespace {

void append(Vector& out, std::span<const Rational> v) { out.insert(out.end(), v.begin(), v.end()); }

std::size_t theta_count(std::size_t dim_g, std::size_t dim_v, std::size_t n) {
  return n >= 2 ? WedgeTable::get(dim_g).count(n - 1) * dim_v : 0;
}

AlternatingMap theta_from(std::size_t dim_g, std::size_t dim_v, std::size_t n, std::span<const Rational> coords) {
  if (n < 2) return AlternatingMap(dim_g, 0, dim_v);
  if (coords.empty()) return AlternatingMap(dim_g, n - 1, dim_v);
  return AlternatingMap::from_coordinates(dim_g, n - 1, dim_v, coords);
}

void check_theta(AlternatingMap const& theta, std::size_t dim_g, std::size_t dim_v, std::size_t n) {
  std::size_t arity = n >= 2 ? n - 1 : 0;
  if (theta.domain_dim() != dim_g || theta.target_dim() != dim_v || theta.arity() != arity) {
    throw DimensionMismatch("θ-component has the wrong shape");
  }
  if (n < 2 && !theta.is_zero()) throw DegreeMismatch("degree-1 cochains carry no θ-component");
}

AlternatingMap f0_as_map(MixedCochain const& f, std::size_t dim_g) {
  AlternatingMap out(dim_g, f.n, dim_g);
  for (WedgeMask m : out.tuples()) {
    auto src = f.f0.values(m, 0);
    std::copy(src.begin(), src.end(), out.values(m).begin());
  }
  return out;
}

/// θ(v, x_rest) for a vector v and a sorted basis tuple `rest`.
void add_inserted(Vector& dst, Rational const& scale, AlternatingMap const& theta, std::span<const Rational> v,
                  WedgeMask rest) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0 || (rest & bit(c))) continue;
    Rational coef = scale * v[c] * insertion_sign(rest, c);
    axpy(dst, coef, theta.values(rest | bit(c)));
  }
}

}  // namespace

AlternatingMap ce_coboundary(LieAlgebra const& g, std::vector<RationalMatrix> const& rep, AlternatingMap const& theta) {
  std::size_t dim = g.dim(), k = theta.arity(), tv = theta.target_dim();
  if (theta.domain_dim() != dim) throw DimensionMismatch("cochain domain differs from the algebra");
  if (!rep.empty() && rep.size() != dim) throw DimensionMismatch("one representation matrix per basis vector expected");
  AlternatingMap out(dim, k + 1, tv);
  for (WedgeMask whole : out.tuples()) {
    auto idx = wedge_indices(whole);
    Vector acc = zero_vector(tv);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (rep.empty()) break;
      WedgeMask rest = whole & ~bit(idx[a]);
      Vector v = rep[idx[a]].apply(theta.values(rest));
      axpy(acc, Rational(parity_sign(static_cast<long>(a))), v);
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        WedgeMask rest = whole & ~bit(idx[a]) & ~bit(idx[b]);
        Vector br = g.bracket_basis(idx[a], idx[b]);
        add_inserted(acc, Rational(parity_sign(static_cast<long>(a + b))), theta, br, rest);
      }
    }
    auto dst = out.values(whole);
    std::copy(acc.begin(), acc.end(), dst.begin());
  }
  return out;
}

namespace {

MixedCochain lieact_by_components(LieActTriple const& t, MixedCochain const& f) {
  std::size_t dg = t.g().dim(), dh = t.h().dim(), n = f.n;
  auto pi = t.pi_lift(), rho = t.rho_lift(), mu = t.mu_lift();
  auto pi_rho = pi + rho;
  auto out = MixedCochain::zero(dg, dh, n + 1);
  out.f0 = BigradedMap::block_of(nr_bracket(pi, f.f0.lift()), dg, dh, n + 1, 0, Side::G);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    AlternatingMap acc(dg + dh, n + 1, dg + dh);
    if (i <= n) acc += nr_bracket(pi_rho, f.component(i).lift());
    if (i == 1) acc += nr_bracket(rho, f.f0.lift());
    if (i >= 2) acc += nr_bracket(mu, f.component(i - 1).lift());
    out.component(i) = BigradedMap::block_of(acc, dg, dh, n + 1 - i, i, Side::H);
  }
  if (n % 2 == 0) {
    out = MixedCochain::from_coordinates(dg, dh, n + 1, Rational(-1) * out.coordinates());
  }
  return out;
}

}  // namespace

MixedCochain lieact_coboundary(LieActTriple const& t, MixedCochain const& f) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  if (f.f0.dim_g() != dg || f.f0.dim_h() != dh) throw DimensionMismatch("cochain does not live over (g, h)");
  auto br = nr_bracket(t.structure_lift(), f.lift());
  br *= Rational(parity_sign(static_cast<long>(f.n) - 1));
  auto dec = project_components(br, dg, dh);
  if (!dec.pure.is_zero()) throw InternalInconsistency("coboundary left the mixed cochain space");
  if (dec.mixed != lieact_by_components(t, f)) {
    throw InternalInconsistency("coboundary disagrees with its componentwise expansion");
  }
  std::vector<RationalMatrix> ad;
  for (std::size_t i = 0; i < dg; ++i) ad.push_back(t.g().ad_basis(i));
  if (f0_as_map(dec.mixed, dg) != ce_coboundary(t.g(), ad, f0_as_map(f, dg))) {
    throw InternalInconsistency("g-component of the coboundary is not the adjoint CE coboundary");
  }
  return dec.mixed;
}

AlternatingMap t_operator(RelDiffStructure const& s, MixedCochain const& f) {
  std::size_t dg = s.dim_g(), dh = s.dim_h(), n = f.n;
  auto lifted = f.lift();
  AlternatingMap out(dg, n, dh);
  for (WedgeMask m : out.tuples()) {
    auto idx = wedge_indices(m);
    Vector acc = zero_vector(dh);
    for (WedgeMask sel = 1; sel < (WedgeMask(1) << n); ++sel) {
      std::vector<Vector> args;
      for (std::size_t p = 0; p < n; ++p) {
        Vector v = zero_vector(dg + dh);
        if ((sel & bit(p))) {
          for (std::size_t r = 0; r < dh; ++r) v[dg + r] = s.d()(r, idx[p]);
        } else {
          v[idx[p]] = 1;
        }
        args.push_back(std::move(v));
      }
      Vector val = lifted.evaluate(args);
      for (std::size_t r = 0; r < dh; ++r) acc[r] += val[dg + r];
    }
    acc = acc - s.d().apply(f.f0.values(m, 0));
    if (n % 2 == 1) acc = Rational(-1) * acc;
    auto dst = out.values(m);
    std::copy(acc.begin(), acc.end(), dst.begin());
  }
  return out;
}

AlternatingMap t_operator_bracket(RelDiffStructure const& s, MixedCochain const& f) {
  std::size_t dg = s.dim_g(), dh = s.dim_h(), n = f.n;
  AlternatingMap out = -f0_as_map(f, dg).postcompose(s.d());
  auto d = s.d_lift();
  for (std::size_t k = 1; k <= n; ++k) {
    auto acc = f.component(k).lift();
    for (std::size_t j = 0; j < k; ++j) acc = nr_bracket(acc, d);
    out += (Rational(1) / factorial(k)) * project_to_f(acc, dg, dh);
  }
  if (n % 2 == 1) out *= Rational(-1);
  return out;
}

// ---------------------------------------------------------------------------

RelDiffCochain RelDiffCochain::zero(std::size_t dim_g, std::size_t dim_h, std::size_t n) {
  return {MixedCochain::zero(dim_g, dim_h, n), theta_from(dim_g, dim_h, n, {})};
}

Vector RelDiffCochain::coordinates() const {
  Vector out = f.coordinates();
  if (f.n >= 2) append(out, theta.coordinates());
  return out;
}

RelDiffCochain RelDiffCochain::from_coordinates(std::size_t dim_g, std::size_t dim_h, std::size_t n,
                                                std::span<const Rational> coords) {
  std::size_t mc = MixedCochain::coordinate_count(dim_g, dim_h, n);
  if (coords.size() != mc + theta_count(dim_g, dim_h, n)) throw DimensionMismatch("wrong number of coordinates");
  return {MixedCochain::from_coordinates(dim_g, dim_h, n, coords.subspan(0, mc)),
          theta_from(dim_g, dim_h, n, coords.subspan(mc))};
}

std::size_t RelDiffCochain::coordinate_count(std::size_t dim_g, std::size_t dim_h, std::size_t n) {
  return MixedCochain::coordinate_count(dim_g, dim_h, n) + theta_count(dim_g, dim_h, n);
}

namespace {

RelDiffCochain delta_closed(RelDiffStructure const& s, std::vector<RationalMatrix> const& rep, RelDiffCochain const& c) {
  std::size_t n = c.degree();
  check_theta(c.theta, s.dim_g(), s.dim_h(), n);
  RelDiffCochain out{lieact_coboundary(s.triple(), c.f), t_operator(s, c.f)};
  if (n >= 2) out.theta += ce_coboundary(s.g(), rep, c.theta);
  return out;
}

RelDiffCochain delta_from_linfty(TwistedBrackets const& l, RelDiffStructure const& s, RelDiffCochain const& c) {
  std::size_t n = c.degree(), dg = s.dim_g(), dh = s.dim_h();
  check_theta(c.theta, dg, dh, n);
  auto x = LInftyElement::pair(dg, dh, c.f.lift(), c.theta);
  auto y = l({x});
  if (n % 2 == 1) y *= Rational(-1);
  auto dec = project_components(y.m, dg, dh);
  if (!dec.pure.is_zero()) throw InternalInconsistency("twisted differential left s^{-1}M ⊕ F");
  return {dec.mixed, y.f};
}

RelDiffCochain delta_checked(RelDiffStructure const& s, std::vector<RationalMatrix> const& rep,
                             TwistedBrackets const& l, RelDiffCochain const& c) {
  auto closed = delta_closed(s, rep, c);
  if (closed != delta_from_linfty(l, s, c)) {
    throw InternalInconsistency("closed-form coboundary disagrees with the twisted l1");
  }
  return closed;
}

}  // namespace

RelDiffCochain rel_diff_delta(RelDiffStructure const& s, RelDiffCochain const& c) {
  TwistedBrackets l(structure_element(s.triple(), s.d()));
  return delta_checked(s, rho_d(s), l, c);
}

RelDiffCochain rel_diff_delta_closed(RelDiffStructure const& s, RelDiffCochain const& c) {
  return delta_closed(s, rho_d(s), c);
}

RelDiffCochain rel_diff_delta_linfty(RelDiffStructure const& s, RelDiffCochain const& c) {
  TwistedBrackets l(structure_element(s.triple(), s.d()));
  return delta_from_linfty(l, s, c);
}

DanddTSides danddT_sides(RelDiffStructure const& s, AlternatingMap const& f) {
  if (f.domain_dim() != s.dim_g() || f.target_dim() != s.dim_h()) throw DimensionMismatch("f must map ∧g to h");
  DanddTSides out;
  out.ce = ce_coboundary(s.g(), rho_d(s), f);
  out.bracket = d_pi_rho(f, s.triple()) + courant_bracket(AlternatingMap::linear(s.d()), f, s.h());
  if (f.arity() % 2 == 0) out.bracket *= Rational(-1);
  return out;
}

bool danddT_check(RelDiffStructure const& s, AlternatingMap const& f) {
  auto sides = danddT_sides(s, f);
  return sides.ce == sides.bracket;
}

// ---------------------------------------------------------------------------

RegularCochain RegularCochain::zero(std::size_t dim, std::size_t n) {
  return {n, AlternatingMap(dim, n, dim), theta_from(dim, dim, n, {})};
}

Vector RegularCochain::coordinates() const {
  Vector out(f.coordinates().begin(), f.coordinates().end());
  if (n >= 2) append(out, theta.coordinates());
  return out;
}

RegularCochain RegularCochain::from_coordinates(std::size_t dim, std::size_t n, std::span<const Rational> coords) {
  std::size_t fc = WedgeTable::get(dim).count(n) * dim;
  if (coords.size() != fc + theta_count(dim, dim, n)) throw DimensionMismatch("wrong number of coordinates");
  return {n, AlternatingMap::from_coordinates(dim, n, dim, coords.subspan(0, fc)),
          theta_from(dim, dim, n, coords.subspan(fc))};
}

std::size_t RegularCochain::coordinate_count(std::size_t dim, std::size_t n) {
  return WedgeTable::get(dim).count(n) * dim + theta_count(dim, dim, n);
}

AlternatingMap insertion_t(AlternatingMap const& f, RationalMatrix const& d, RationalMatrix const& k) {
  std::size_t dim = f.domain_dim(), n = f.arity(), tv = f.target_dim();
  if (d.rows() != dim || d.cols() != dim || k.rows() != tv || k.cols() != tv) {
    throw DimensionMismatch("operators do not fit the cochain");
  }
  AlternatingMap out(dim, n, tv);
  for (WedgeMask m : out.tuples()) {
    auto idx = wedge_indices(m);
    Vector acc = zero_vector(tv);
    for (WedgeMask sel = 1; sel < (WedgeMask(1) << n); ++sel) {
      std::vector<Vector> args;
      for (std::size_t p = 0; p < n; ++p) args.push_back((sel & bit(p)) ? d.column(idx[p]) : unit_vector(dim, idx[p]));
      acc = acc + f.evaluate(args);
    }
    acc = acc - k.apply(f.values(m));
    if (n % 2 == 1) acc = Rational(-1) * acc;
    auto dst = out.values(m);
    std::copy(acc.begin(), acc.end(), dst.begin());
  }
  return out;
}

namespace {

std::vector<RationalMatrix> ad_matrices(LieAlgebra const& g) {
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < g.dim(); ++i) out.push_back(g.ad_basis(i));
  return out;
}

std::vector<RationalMatrix> twisted_rep(LieAlgebra const& g, std::vector<RationalMatrix> const& rep,
                                        RationalMatrix const& d) {
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    RationalMatrix m = rep[i];
    Vector dx = d.column(i);
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (dx[j] != 0) m = m + dx[j] * rep[j];
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

namespace {

RegularCochain regular_closed(DifferenceLieAlgebra const& a, RegularCochain const& c) {
  std::size_t dim = a.dim();
  if (c.f.domain_dim() != dim || c.f.target_dim() != dim || c.f.arity() != c.n) {
    throw DimensionMismatch("f-component has the wrong shape");
  }
  check_theta(c.theta, dim, dim, c.n);
  auto ad = ad_matrices(a.g());
  RegularCochain out{c.n + 1, ce_coboundary(a.g(), ad, c.f), insertion_t(c.f, a.d(), a.d())};
  if (c.n >= 2) out.theta += ce_coboundary(a.g(), twisted_rep(a.g(), ad, a.d()), c.theta);
  return out;
}

}  // namespace

namespace {

void fill_embedded(BigradedMap& part, AlternatingMap const& f) {
  auto const& table = WedgeTable::get(part.dim_g());
  for (WedgeMask gm : table.masks(part.k())) {
    for (WedgeMask hm : table.masks(part.l())) {
      if (gm & hm) continue;
      auto dst = part.values(gm, hm);
      auto src = f.values(gm | hm);
      Rational sign(block_sign(gm, hm));
      for (std::size_t r = 0; r < dst.size(); ++r) dst[r] = sign * src[r];
    }
  }
}

}  // namespace

RelDiffCochain embed_regular(DifferenceLieAlgebra const& a, RegularCochain const& c) {
  auto out = RelDiffCochain::zero(a.dim(), a.dim(), c.n);
  for (std::size_t k = 0; k <= c.n; ++k) fill_embedded(out.f.component(k), c.f);
  if (c.n >= 2) out.theta = c.theta;
  return out;
}

RegularCochain project_regular(DifferenceLieAlgebra const& a, RelDiffCochain const& c) {
  std::size_t dim = a.dim(), n = c.degree();
  RegularCochain out{n, f0_as_map(c.f, dim), c.theta};
  if (embed_regular(a, out).f != c.f) {
    throw InternalInconsistency("cochain is not in the image of the regular embedding");
  }
  return out;
}

RegularCochain regular_delta_via_embedding(DifferenceLieAlgebra const& a, RegularCochain const& c) {
  auto s = a.as_relative();
  return project_regular(a, rel_diff_delta_closed(s, embed_regular(a, c)));
}

RegularCochain regular_delta(DifferenceLieAlgebra const& a, RegularCochain const& c) {
  auto out = regular_closed(a, c);
  if (out != regular_delta_via_embedding(a, c)) {
    throw InternalInconsistency("regular coboundary disagrees with the projected relative coboundary");
  }
  return out;
}

// ---------------------------------------------------------------------------

CoeffCochain CoeffCochain::zero(std::size_t dim_g, std::size_t dim_v, std::size_t n) {
  return {n, AlternatingMap(dim_g, n, dim_v), theta_from(dim_g, dim_v, n, {})};
}

Vector CoeffCochain::coordinates() const {
  Vector out(f.coordinates().begin(), f.coordinates().end());
  if (n >= 2) append(out, theta.coordinates());
  return out;
}

CoeffCochain CoeffCochain::from_coordinates(std::size_t dim_g, std::size_t dim_v, std::size_t n,
                                            std::span<const Rational> coords) {
  std::size_t fc = WedgeTable::get(dim_g).count(n) * dim_v;
  if (coords.size() != fc + theta_count(dim_g, dim_v, n)) throw DimensionMismatch("wrong number of coordinates");
  return {n, AlternatingMap::from_coordinates(dim_g, n, dim_v, coords.subspan(0, fc)),
          theta_from(dim_g, dim_v, n, coords.subspan(fc))};
}

std::size_t CoeffCochain::coordinate_count(std::size_t dim_g, std::size_t dim_v, std::size_t n) {
  return WedgeTable::get(dim_g).count(n) * dim_v + theta_count(dim_g, dim_v, n);
}

namespace {

CoeffCochain coeff_closed(DiffRepresentation const& rep, CoeffCochain const& c) {
  auto const& g = rep.base().g();
  std::size_t dv = rep.v_dim();
  if (c.f.domain_dim() != g.dim() || c.f.target_dim() != dv || c.f.arity() != c.n) {
    throw DimensionMismatch("f-component has the wrong shape");
  }
  check_theta(c.theta, g.dim(), dv, c.n);
  CoeffCochain out{c.n + 1, ce_coboundary(g, rep.varrho(), c.f), insertion_t(c.f, rep.base().d(), rep.k())};
  if (c.n >= 2) out.theta += ce_coboundary(g, twisted_rep(g, rep.varrho(), rep.base().d()), c.theta);
  return out;
}

CoeffCochain coeff_semidirect(DiffRepresentation const& rep, DifferenceLieAlgebra const& total, CoeffCochain const& c) {
  std::size_t dg = rep.base().dim(), dv = rep.v_dim();
  RegularCochain lifted{c.n, lift_to_sum(c.f, dg, dv),
                        c.n >= 2 ? lift_to_sum(c.theta, dg, dv) : theta_from(dg + dv, dg + dv, c.n, {})};
  auto image = regular_closed(total, lifted);
  CoeffCochain out{c.n + 1, project_to_f(image.f, dg, dv), project_to_f(image.theta, dg, dv)};
  if (lift_to_sum(out.f, dg, dv) != image.f || lift_to_sum(out.theta, dg, dv) != image.theta) {
    throw InternalInconsistency("semidirect coboundary left the V-valued cochains");
  }
  return out;
}

}  // namespace

CoeffCochain coeff_delta_via_semidirect(DiffRepresentation const& rep, CoeffCochain const& c) {
  return coeff_semidirect(rep, semidirect_difference(rep), c);
}

CoeffCochain coeff_delta(DiffRepresentation const& rep, CoeffCochain const& c) {
  auto out = coeff_closed(rep, c);
  if (out != coeff_delta_via_semidirect(rep, c)) {
    throw InternalInconsistency("coefficient coboundary disagrees with the semidirect regular coboundary");
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::LieAct: return "lieact";
    case Theory::Operator: return "operator";
    case Theory::RelDiff: return "reldiff";
    case Theory::Regular: return "regular";
    case Theory::Coeff: return "coeff";
  }
  return "unknown";
}

RationalMatrix CochainComplex::matrix(std::size_t n) const {
  std::size_t cols = dim(n), rows = dim(n + 1);
  RationalMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    Vector e = unit_vector(cols, j);
    out.set_column(j, apply(n, e));
  }
  return out;
}

namespace {

class FunctionComplex : public CochainComplex {
 public:
  using DimFn = std::function<std::size_t(std::size_t)>;
  using ApplyFn = std::function<Vector(std::size_t, std::span<const Rational>)>;

  FunctionComplex(std::string name, DimFn dim, ApplyFn apply)
      : name_(std::move(name)), dim_(std::move(dim)), apply_(std::move(apply)) {}

  [[nodiscard]] std::size_t dim(std::size_t n) const override { return n == 0 ? 0 : dim_(n); }
  [[nodiscard]] Vector apply(std::size_t n, std::span<const Rational> coords) const override {
    if (n == 0) throw DegreeMismatch("cochains start in degree 1");
    if (coords.size() != dim(n)) throw DimensionMismatch("wrong number of coordinates");
    return apply_(n, coords);
  }
  [[nodiscard]] std::string describe() const override { return name_; }

 private:
  std::string name_;
  DimFn dim_;
  ApplyFn apply_;
};

Vector to_vector(std::span<const Rational> v) { return Vector(v.begin(), v.end()); }

}  // namespace

std::unique_ptr<CochainComplex> lieact_complex(LieActTriple const& t) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  return std::make_unique<FunctionComplex>(
      "C(g,h,rho)", [=](std::size_t n) { return MixedCochain::coordinate_count(dg, dh, n); },
      [=](std::size_t n, std::span<const Rational> x) {
        return lieact_coboundary(t, MixedCochain::from_coordinates(dg, dh, n, x)).coordinates();
      });
}

std::unique_ptr<CochainComplex> operator_complex(RelDiffStructure const& s) {
  std::size_t dg = s.dim_g(), dh = s.dim_h();
  auto rep = rho_d(s);
  return std::make_unique<FunctionComplex>(
      "C(D)", [=](std::size_t n) { return WedgeTable::get(dg).count(n) * dh; },
      [=](std::size_t n, std::span<const Rational> x) {
        return to_vector(ce_coboundary(s.g(), rep, AlternatingMap::from_coordinates(dg, n, dh, x)).coordinates());
      });
}

std::unique_ptr<CochainComplex> reldiff_complex(RelDiffStructure const& s) {
  std::size_t dg = s.dim_g(), dh = s.dim_h();
  auto rep = rho_d(s);
  auto l = std::make_shared<TwistedBrackets>(structure_element(s.triple(), s.d()));
  return std::make_unique<FunctionComplex>(
      "C(g,h,rho,D)", [=](std::size_t n) { return RelDiffCochain::coordinate_count(dg, dh, n); },
      [=](std::size_t n, std::span<const Rational> x) {
        return delta_checked(s, rep, *l, RelDiffCochain::from_coordinates(dg, dh, n, x)).coordinates();
      });
}

std::unique_ptr<CochainComplex> regular_complex(DifferenceLieAlgebra const& a) {
  std::size_t d = a.dim();
  return std::make_unique<FunctionComplex>(
      "C(g,D)", [=](std::size_t n) { return RegularCochain::coordinate_count(d, n); },
      [=](std::size_t n, std::span<const Rational> x) {
        return regular_delta(a, RegularCochain::from_coordinates(d, n, x)).coordinates();
      });
}

std::unique_ptr<CochainComplex> coeff_complex(DiffRepresentation const& rep) {
  std::size_t dg = rep.base().dim(), dv = rep.v_dim();
  auto total = semidirect_difference(rep);
  return std::make_unique<FunctionComplex>(
      "C(g,D;V)", [=](std::size_t n) { return CoeffCochain::coordinate_count(dg, dv, n); },
      [=](std::size_t n, std::span<const Rational> x) {
        auto c = CoeffCochain::from_coordinates(dg, dv, n, x);
        auto out = coeff_closed(rep, c);
        if (out != coeff_semidirect(rep, total, c)) {
          throw InternalInconsistency("coefficient coboundary disagrees with the semidirect regular coboundary");
        }
        return out.coordinates();
      });
}

CohomologyGroup cohomology_group(CochainComplex const& c, std::size_t n) {
  if (n == 0) throw DegreeMismatch("cochains start in degree 1");
  CohomologyGroup out;
  out.degree = n;
  out.cochain_dim = c.dim(n);
  auto outgoing = c.matrix(n);
  auto kernel = kernel_basis(outgoing);
  out.rank_out = out.cochain_dim - kernel.dim();
  SubspaceBasis image = SubspaceBasis::span_of(out.cochain_dim, {});
  if (n >= 2) image = image_basis(c.matrix(n - 1));
  out.rank_in = image.dim();
  out.dimension = quotient_dim(kernel, image);
  out.representatives = quotient_representatives(kernel, image);
  return out;
}

// ---------------------------------------------------------------------------

bool LesReport::exact() const {
  for (auto const& node : nodes) {
    if (!node.exact) return false;
  }
  return true;
}

namespace {

struct Level {
  SubspaceBasis cocycles;
  SubspaceBasis coboundaries;
  std::size_t dim = 0;
};

using ChainMap = std::function<Vector(Vector const&)>;

std::size_t induced_rank(std::vector<Vector> const& sources, ChainMap const& phi, SubspaceBasis const& target_b) {
  IncrementalBasis span(target_b.ambient_dim);
  for (auto const& b : target_b.vectors) span.insert(b);
  std::size_t base = span.dim();
  for (auto const& z : sources) span.insert(phi(z));
  return span.dim() - base;
}

bool composite_vanishes(std::vector<Vector> const& sources, ChainMap const& first, ChainMap const& second,
                        SubspaceBasis const& target_b) {
  for (auto const& z : sources) {
    if (!target_b.contains(second(first(z)))) return false;
  }
  return true;
}

}  // namespace

LesReport les_check(RelDiffStructure const& s, std::size_t max_degree) {
  std::size_t dg = s.dim_g(), dh = s.dim_h();
  auto rel = reldiff_complex(s);
  auto act = lieact_complex(s.triple());
  auto op = operator_complex(s);

  auto level = [](CochainComplex const& c, std::size_t n, RationalMatrix const* below) {
    Level l;
    l.cocycles = kernel_basis(c.matrix(n));
    l.coboundaries = below ? image_basis(*below) : SubspaceBasis::span_of(c.dim(n), {});
    l.dim = quotient_dim(l.cocycles, l.coboundaries);
    return l;
  };

  std::vector<Level> r(max_degree + 2), a(max_degree + 1), o(max_degree + 1);
  for (std::size_t n = 1; n <= max_degree; ++n) {
    RationalMatrix rb, ab, ob;
    if (n >= 2) {
      rb = rel->matrix(n - 1);
      ab = act->matrix(n - 1);
      ob = op->matrix(n - 1);
    }
    r[n] = level(*rel, n, n >= 2 ? &rb : nullptr);
    a[n] = level(*act, n, n >= 2 ? &ab : nullptr);
    o[n] = level(*op, n, n >= 2 ? &ob : nullptr);
  }
  r[max_degree + 1].coboundaries = image_basis(rel->matrix(max_degree));

  auto p = [&](std::size_t n) -> ChainMap {
    std::size_t mc = MixedCochain::coordinate_count(dg, dh, n);
    return [mc](Vector const& x) { return Vector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mc)); };
  };
  auto iota = [&](std::size_t n) -> ChainMap {
    std::size_t mc = MixedCochain::coordinate_count(dg, dh, n + 1);
    return [mc](Vector const& x) {
      Vector out = zero_vector(mc);
      out.insert(out.end(), x.begin(), x.end());
      return out;
    };
  };
  auto c = [&](std::size_t n) -> ChainMap {
    return [&s, dg, dh, n](Vector const& x) {
      auto f = MixedCochain::from_coordinates(dg, dh, n, x);
      auto t = t_operator(s, f);
      return Vector(t.coordinates().begin(), t.coordinates().end());
    };
  };

  LesReport report;
  report.max_degree = max_degree;
  auto node = [&](std::string label, Level const& here, std::size_t rank_in, std::size_t rank_out, bool composite) {
    LesNode nd;
    nd.label = std::move(label);
    nd.dimension = here.dim;
    nd.rank_incoming = rank_in;
    nd.kernel_outgoing = here.dim - rank_out;
    nd.exact = composite && rank_in == nd.kernel_outgoing;
    report.nodes.push_back(nd);
  };

  for (std::size_t n = 1; n <= max_degree; ++n) {
    std::string deg = std::to_string(n);
    std::size_t p_rank = induced_rank(r[n].cocycles.vectors, p(n), a[n].coboundaries);
    std::size_t c_rank = induced_rank(a[n].cocycles.vectors, c(n), o[n].coboundaries);
    std::size_t i_rank = induced_rank(o[n].cocycles.vectors, iota(n), r[n + 1].coboundaries);

    std::size_t in_rank = 0;
    bool composite = true;
    if (n >= 2) {
      in_rank = induced_rank(o[n - 1].cocycles.vectors, iota(n - 1), r[n].coboundaries);
      composite = composite_vanishes(o[n - 1].cocycles.vectors, iota(n - 1), p(n), a[n].coboundaries);
    }
    node("H^" + deg + "(g,h,rho,D)", r[n], in_rank, p_rank, composite);
    node("H^" + deg + "(g,h,rho)", a[n], p_rank, c_rank,
         composite_vanishes(r[n].cocycles.vectors, p(n), c(n), o[n].coboundaries));
    node("H^" + deg + "(D)", o[n], c_rank, i_rank,
         composite_vanishes(a[n].cocycles.vectors, c(n), iota(n), r[n + 1].coboundaries));
  }

  for (auto const& nd : report.nodes) {
    if (!nd.exact) {
      throw ExactnessFailure("long exact sequence fails at " + nd.label + ": image rank " +
                             std::to_string(nd.rank_incoming) + ", kernel dimension " +
                             std::to_string(nd.kernel_outgoing));
    }
  }
  return report;
}

}  // namespace rdlie
