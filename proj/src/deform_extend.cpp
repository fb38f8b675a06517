#include "rdlie/deform_extend.hpp"

#include <sstream>

namespace rdlie {

RegularCochain DeformationDatum::as_cochain() const {
  return {2, omega_hat, AlternatingMap::linear(d_hat)};
}

DeformationDatum DeformationDatum::from_cochain(RegularCochain const& c) {
  if (c.n != 2) throw DegreeMismatch("deformation data are 2-cochains");
  return {c.f, c.theta.as_matrix()};
}

namespace {

using DualVector = std::vector<DualScalar>;

DualVector dual_basis(std::size_t dim, std::size_t i) {
  DualVector v(dim);
  v[i] = DualScalar(Rational(1));
  return v;
}

bool all_zero(DualVector const& v) {
  for (auto const& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

DualVector operator+(DualVector a, DualVector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

DualVector operator-(DualVector a, DualVector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

/// g ⊗ ℚ[t]/(t²) with bracket [·,·] + tω̂ and operator D + tD̂.
class DualAlgebra {
 public:
  DualAlgebra(LieAlgebra const& g, RationalMatrix d, DeformationDatum const& datum)
      : dim_(g.dim()), d_(std::move(d)), d_hat_(datum.d_hat), table_(dim_ * dim_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        std::size_t idx[2] = {i, j};
        Vector base = g.bracket_map().on_basis(idx);
        Vector eps = datum.omega_hat.on_basis(idx);
        DualVector v(dim_);
        for (std::size_t r = 0; r < dim_; ++r) v[r] = DualScalar(base[r], eps[r]);
        table_[i * dim_ + j] = std::move(v);
      }
    }
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }

  [[nodiscard]] DualVector bracket(DualVector const& x, DualVector const& y) const {
    DualVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j].is_zero()) continue;
        DualScalar c = x[i] * y[j];
        auto const& b = table_[i * dim_ + j];
        for (std::size_t r = 0; r < dim_; ++r) out[r] += c * b[r];
      }
    }
    return out;
  }

  [[nodiscard]] DualVector op(DualVector const& x) const {
    DualVector out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) {
        if (x[c].is_zero()) continue;
        out[r] += DualScalar(d_(r, c), d_hat_(r, c)) * x[c];
      }
    }
    return out;
  }

 private:
  std::size_t dim_;
  RationalMatrix d_, d_hat_;
  std::vector<DualVector> table_;
};

DualVector apply_phi(RationalMatrix const& n, DualVector const& x) {
  DualVector out = x;
  for (std::size_t r = 0; r < n.rows(); ++r) {
    for (std::size_t c = 0; c < n.cols(); ++c) {
      if (n(r, c).is_zero()) continue;
      out[r] += DualScalar(Rational(0), n(r, c)) * x[c];
    }
  }
  return out;
}

void check_datum(DifferenceLieAlgebra const& a, DeformationDatum const& d) {
  std::size_t n = a.dim();
  if (d.omega_hat.domain_dim() != n || d.omega_hat.arity() != 2 || d.omega_hat.target_dim() != n ||
      d.d_hat.rows() != n || d.d_hat.cols() != n) {
    throw DimensionMismatch("deformation datum does not fit the algebra");
  }
}

}  // namespace

bool dual_number_deformation_valid(DifferenceLieAlgebra const& a, DeformationDatum const& d) {
  check_datum(a, d);
  DualAlgebra t(a.g(), a.d(), d);
  std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto x = dual_basis(n, i), y = dual_basis(n, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        auto z = dual_basis(n, k);
        auto cyc = t.bracket(t.bracket(x, y), z) + t.bracket(t.bracket(y, z), x) + t.bracket(t.bracket(z, x), y);
        if (!all_zero(cyc)) return false;
      }
      auto dx = t.op(x), dy = t.op(y);
      auto lhs = t.op(t.bracket(x, y));
      auto rhs = t.bracket(dx, y) + t.bracket(x, dy) + t.bracket(dx, dy);
      if (!all_zero(lhs - rhs)) return false;
    }
  }
  return true;
}

bool is_deformation_cocycle(DifferenceLieAlgebra const& a, DeformationDatum const& d) {
  check_datum(a, d);
  auto image = regular_delta(a, d.as_cochain());
  bool closed = image.f.is_zero() && image.theta.is_zero();
  if (closed != dual_number_deformation_valid(a, d)) {
    throw InternalInconsistency("cocycle condition and dual-number validity disagree");
  }
  return closed;
}

bool is_equivalence_witness(DifferenceLieAlgebra const& a, DeformationDatum const& d1, DeformationDatum const& d2,
                            RationalMatrix const& n) {
  check_datum(a, d1);
  check_datum(a, d2);
  if (n.rows() != a.dim() || n.cols() != a.dim()) throw DimensionMismatch("N must be an endomorphism of g");
  DualAlgebra t1(a.g(), a.d(), d1), t2(a.g(), a.d(), d2);
  std::size_t dim = a.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    auto x = dual_basis(dim, i);
    auto px = apply_phi(n, x);
    if (!all_zero(t2.op(px) - apply_phi(n, t1.op(x)))) return false;
    for (std::size_t j = i + 1; j < dim; ++j) {
      auto y = dual_basis(dim, j);
      if (!all_zero(apply_phi(n, t1.bracket(x, y)) - t2.bracket(px, apply_phi(n, y)))) return false;
    }
  }
  return true;
}

RationalMatrix deformation_equivalent(DifferenceLieAlgebra const& a, DeformationDatum const& d1,
                                      DeformationDatum const& d2) {
  if (!is_deformation_cocycle(a, d1)) throw NotCocycle("first deformation datum is not a 2-cocycle");
  if (!is_deformation_cocycle(a, d2)) throw NotCocycle("second deformation datum is not a 2-cocycle");
  auto m = regular_complex(a)->matrix(1);
  Vector rhs = d1.as_cochain().coordinates() - d2.as_cochain().coordinates();
  auto sol = solve(m, rhs);
  if (!sol.solution) {
    throw NotEquivalent("deformations are not equivalent: rank " + std::to_string(sol.rank_coefficients) +
                            " of the coefficient matrix, " + std::to_string(sol.rank_augmented) + " augmented",
                        sol.rank_coefficients, sol.rank_augmented);
  }
  auto n = AlternatingMap::from_coordinates(a.dim(), 1, a.dim(), *sol.solution).as_matrix();
  if (!is_equivalence_witness(a, d1, d2, n)) {
    throw InternalInconsistency("solution of the equivalence system does not intertwine the deformations");
  }
  return n;
}

DeformationClassification classify_deformations(DifferenceLieAlgebra const& a, std::size_t max_report) {
  auto h2 = cohomology_group(*regular_complex(a), 2);
  DeformationClassification out;
  out.dimension = h2.dimension;
  for (std::size_t i = 0; i < h2.representatives.size() && i < max_report; ++i) {
    auto datum = DeformationDatum::from_cochain(RegularCochain::from_coordinates(a.dim(), 2, h2.representatives[i]));
    if (!dual_number_deformation_valid(a, datum)) {
      throw InternalInconsistency("cohomology representative does not generate a deformation");
    }
    out.representatives.push_back(std::move(datum));
  }
  return out;
}

// ---------------------------------------------------------------------------

CoeffCochain ExtensionCocycle::as_cochain() const { return {2, omega, AlternatingMap::linear(chi)}; }

ExtensionCocycle ExtensionCocycle::from_cochain(CoeffCochain const& c) {
  if (c.n != 2) throw DegreeMismatch("extension cocycles are 2-cochains");
  return {c.f, c.theta.as_matrix()};
}

namespace {

Vector g_part(Vector const& v, std::size_t dg) { return Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dg)); }
Vector h_part(Vector const& v, std::size_t dg) { return Vector(v.begin() + static_cast<std::ptrdiff_t>(dg), v.end()); }

Vector embed_h(std::span<const Rational> u, std::size_t dg) {
  Vector out = zero_vector(dg);
  out.insert(out.end(), u.begin(), u.end());
  return out;
}

std::string describe_vector(std::span<const Rational> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

AbelianExtension AbelianExtension::validate(DifferenceLieAlgebra total, DifferenceLieAlgebra base, RationalMatrix k) {
  std::size_t dg = base.dim(), dh = k.rows();
  if (k.cols() != dh || total.dim() != dg + dh) throw DimensionMismatch("total space must be g ⊕ h");
  auto const& tg = total.g();
  for (std::size_t a = 0; a < dg + dh; ++a) {
    for (std::size_t u = dg; u < dg + dh; ++u) {
      Vector br = tg.bracket_basis(a, u);
      if (!is_zero(g_part(br, dg))) throw NotAHomomorphism("h is not an ideal of the total algebra");
      if (a >= dg && !is_zero(br)) throw NotAHomomorphism("h is not abelian in the total algebra");
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    for (std::size_t j = i + 1; j < dg; ++j) {
      if (g_part(tg.bracket_basis(i, j), dg) != base.g().bracket_basis(i, j)) {
        throw NotAHomomorphism("projection does not preserve brackets");
      }
    }
  }
  for (std::size_t a = 0; a < dg + dh; ++a) {
    Vector img = total.d().column(a);
    Vector expected_g = a < dg ? base.d().column(a) : zero_vector(dg);
    if (g_part(img, dg) != expected_g) throw NotAHomomorphism("projection does not intertwine the operators");
    if (a >= dg && h_part(img, dg) != k.column(a - dg)) {
      throw NotAHomomorphism("inclusion does not intertwine the operators");
    }
  }
  AbelianExtension e;
  e.total_ = std::move(total);
  e.base_ = std::move(base);
  e.k_ = std::move(k);
  return e;
}

RationalMatrix AbelianExtension::canonical_section() const {
  RationalMatrix s(dim_g() + dim_h(), dim_g());
  for (std::size_t i = 0; i < dim_g(); ++i) s(i, i) = 1;
  return s;
}

AbelianExtension extension_from_cocycle(DiffRepresentation const& rep, ExtensionCocycle const& c) {
  auto const& base = rep.base();
  std::size_t dg = base.dim(), dv = rep.v_dim();
  if (c.omega.domain_dim() != dg || c.omega.arity() != 2 || c.omega.target_dim() != dv || c.chi.rows() != dv ||
      c.chi.cols() != dg) {
    throw DimensionMismatch("cocycle does not fit the representation");
  }
  auto residual = coeff_delta(rep, c.as_cochain());
  if (!residual.f.is_zero() || !residual.theta.is_zero()) {
    throw NotCocycle("(omega, chi) is not a 2-cocycle: coboundary " + describe_vector(residual.coordinates()));
  }
  std::size_t dt = dg + dv;
  AlternatingMap br(dt, 2, dt);
  for (WedgeMask m : br.tuples()) {
    auto idx = wedge_indices(m);
    std::size_t i = idx[0], j = idx[1];
    auto dst = br.values(m);
    if (j < dg) {
      Vector x = base.g().bracket_basis(i, j);
      std::size_t pair[2] = {i, j};
      Vector w = c.omega.on_basis(pair);
      for (std::size_t r = 0; r < dg; ++r) dst[r] = x[r];
      for (std::size_t r = 0; r < dv; ++r) dst[dg + r] = w[r];
    } else if (i < dg) {
      for (std::size_t r = 0; r < dv; ++r) dst[dg + r] = rep.varrho()[i](r, j - dg);
    }
  }
  RationalMatrix op = direct_sum(base.d(), rep.k());
  for (std::size_t r = 0; r < dv; ++r) {
    for (std::size_t col = 0; col < dg; ++col) op(dg + r, col) = c.chi(r, col);
  }
  auto names = base.g().names();
  for (auto const& n : default_basis_names(dv, "u")) names.push_back(n);
  DifferenceLieAlgebra total;
  try {
    total = DifferenceLieAlgebra::validate(LieAlgebra::validate(names, br), op);
  } catch (MathError const& e) {
    throw InternalInconsistency(std::string("extension built from a cocycle is invalid: ") + e.what());
  }
  return AbelianExtension::validate(std::move(total), base, rep.k());
}

ExtractedCocycle cocycle_from_extension(AbelianExtension const& e, RationalMatrix const& section) {
  std::size_t dg = e.dim_g(), dh = e.dim_h();
  if (section.rows() != dg + dh || section.cols() != dg) throw DimensionMismatch("section must map g into g ⊕ h");
  for (std::size_t i = 0; i < dg; ++i) {
    if (g_part(section.column(i), dg) != unit_vector(dg, i)) throw NotASection("p ∘ s is not the identity");
  }
  auto const& tg = e.total().g();
  auto s = [&](std::span<const Rational> x) { return section.apply(x); };

  std::vector<RationalMatrix> varrho;
  for (std::size_t i = 0; i < dg; ++i) {
    RationalMatrix m(dh, dh);
    for (std::size_t a = 0; a < dh; ++a) {
      m.set_column(a, h_part(tg.bracket(section.column(i), embed_h(unit_vector(dh, a), dg)), dg));
    }
    varrho.push_back(std::move(m));
  }
  AlternatingMap omega(dg, 2, dh);
  for (WedgeMask m : omega.tuples()) {
    auto idx = wedge_indices(m);
    Vector v = tg.bracket(section.column(idx[0]), section.column(idx[1])) -
               s(e.base().g().bracket_basis(idx[0], idx[1]));
    Vector w = h_part(v, dg);
    std::copy(w.begin(), w.end(), omega.values(m).begin());
  }
  RationalMatrix chi(dh, dg);
  for (std::size_t i = 0; i < dg; ++i) {
    Vector v = e.total().d().apply(section.column(i)) - s(e.base().d().column(i));
    chi.set_column(i, h_part(v, dg));
  }
  auto rep = DiffRepresentation::validate(e.base(), std::move(varrho), e.k());
  ExtensionCocycle c{std::move(omega), std::move(chi)};
  auto residual = coeff_delta(rep, c.as_cochain());
  if (!residual.f.is_zero() || !residual.theta.is_zero()) {
    throw InternalInconsistency("cocycle read off an extension is not closed");
  }
  return {std::move(c), std::move(rep)};
}

namespace {

RationalMatrix kappa_of(RationalMatrix const& n, std::size_t dg, std::size_t dh) {
  auto k = RationalMatrix::identity(dg + dh);
  for (std::size_t r = 0; r < dh; ++r) {
    for (std::size_t c = 0; c < dg; ++c) k(dg + r, c) = n(r, c);
  }
  return k;
}

Vector iso_residual(AbelianExtension const& e1, AbelianExtension const& e2, RationalMatrix const& kappa) {
  std::size_t dt = e1.total().dim();
  auto const& b1 = e1.total().g();
  auto const& b2 = e2.total().g();
  Vector out;
  for (std::size_t a = 0; a < dt; ++a) {
    for (std::size_t b = a + 1; b < dt; ++b) {
      Vector r = kappa.apply(b1.bracket_basis(a, b)) - b2.bracket(kappa.column(a), kappa.column(b));
      out.insert(out.end(), r.begin(), r.end());
    }
    Vector r = kappa.apply(e1.total().d().column(a)) - e2.total().d().apply(kappa.column(a));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

RationalMatrix extension_isomorphic(AbelianExtension const& e1, AbelianExtension const& e2) {
  std::size_t dg = e1.dim_g(), dh = e1.dim_h();
  if (e2.dim_g() != dg || e2.dim_h() != dh || e1.base().g().bracket_map() != e2.base().g().bracket_map() ||
      e1.base().d() != e2.base().d() || e1.k() != e2.k()) {
    throw IncompatibleBaseOrKernel("extensions have different base or kernel");
  }
  RationalMatrix zero(dh, dg);
  Vector r0 = iso_residual(e1, e2, kappa_of(zero, dg, dh));
  std::vector<Vector> columns;
  for (std::size_t r = 0; r < dh; ++r) {
    for (std::size_t c = 0; c < dg; ++c) {
      RationalMatrix unit(dh, dg);
      unit(r, c) = 1;
      columns.push_back(iso_residual(e1, e2, kappa_of(unit, dg, dh)) - r0);
    }
  }
  auto a = RationalMatrix::from_columns(r0.size(), columns);
  auto sol = solve(a, Rational(-1) * r0);
  if (!sol.solution) {
    throw NotIsomorphic("extensions are not isomorphic: rank " + std::to_string(sol.rank_coefficients) +
                            " of the coefficient matrix, " + std::to_string(sol.rank_augmented) + " augmented",
                        sol.rank_coefficients, sol.rank_augmented);
  }
  RationalMatrix n(dh, dg);
  for (std::size_t r = 0; r < dh; ++r) {
    for (std::size_t c = 0; c < dg; ++c) n(r, c) = (*sol.solution)[r * dg + c];
  }
  auto kappa = kappa_of(n, dg, dh);
  if (!is_zero(iso_residual(e1, e2, kappa))) {
    throw InternalInconsistency("solution of the isomorphism system is not a homomorphism");
  }
  return kappa;
}

}  // namespace rdlie
