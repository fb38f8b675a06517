#include "rdlie/structures.hpp"

#include <sstream>

#include "rdlie/nr.hpp"

namespace rdlie {

namespace {

std::string summarize(std::string const& head, std::vector<AxiomFailure> const& failures) {
  std::ostringstream os;
  os << head << " (" << failures.size() << " failing basis tuple" << (failures.size() == 1 ? "" : "s") << ")";
  if (!failures.empty()) {
    os << "; first: " << failures.front().axiom << " at (";
    for (std::size_t k = 0; k < failures.front().indices.size(); ++k) {
      os << (k ? "," : "") << failures.front().indices[k] + 1;
    }
    os << ")";
  }
  return os.str();
}

void push_if_nonzero(std::vector<AxiomFailure>& out, std::string axiom, std::vector<std::size_t> idx, Vector r) {
  if (!is_zero(r)) out.push_back({std::move(axiom), std::move(idx), std::move(r)});
}

RationalMatrix commutator(RationalMatrix const& a, RationalMatrix const& b) { return a * b - b * a; }

RationalMatrix combination(std::vector<RationalMatrix> const& mats, std::span<const Rational> x, std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (!x[i].is_zero()) m = m + x[i] * mats[i];
  }
  return m;
}

void check_square(RationalMatrix const& m, std::size_t n, char const* what) {
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch(std::string(what) + " has the wrong shape");
}

}  // namespace

std::vector<std::string> default_basis_names(std::size_t dim, std::string const& prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

// ---------------------------------------------------------------------------

std::vector<AxiomFailure> jacobi_failures(AlternatingMap const& bracket) {
  std::size_t n = bracket.domain_dim();
  std::vector<AxiomFailure> out;
  auto br = [&](Vector const& x, Vector const& y) { return bracket.evaluate({x, y}); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        Vector r = br(br(ei, ej), ek) + br(br(ej, ek), ei) + br(br(ek, ei), ej);
        push_if_nonzero(out, "jacobi", {i, j, k}, std::move(r));
      }
    }
  }
  return out;
}

AlternatingMap bracket_from_entries(std::size_t dim, std::vector<BracketEntry> const& entries) {
  AlternatingMap b(dim, 2, dim);
  for (auto const& e : entries) {
    if (e.i >= dim || e.j >= dim || e.value.size() != dim) throw DimensionMismatch("bracket entry out of range");
    if (e.i == e.j) {
      if (!is_zero(e.value)) throw InputError("bracket of a basis vector with itself must vanish");
      continue;
    }
    std::size_t lo = std::min(e.i, e.j), hi = std::max(e.i, e.j);
    auto dst = b.values(bit(lo) | bit(hi));
    for (std::size_t t = 0; t < dim; ++t) dst[t] = e.i < e.j ? e.value[t] : -e.value[t];
  }
  return b;
}

LieAlgebra LieAlgebra::unchecked(std::vector<std::string> names, AlternatingMap bracket) {
  if (bracket.arity() != 2 || bracket.domain_dim() != names.size() || bracket.target_dim() != names.size()) {
    throw DimensionMismatch("bracket does not match the number of basis names");
  }
  LieAlgebra a;
  a.names_ = std::move(names);
  a.bracket_ = std::move(bracket);
  return a;
}

LieAlgebra LieAlgebra::validate(std::vector<std::string> names, AlternatingMap bracket) {
  auto a = unchecked(std::move(names), std::move(bracket));
  auto failures = jacobi_failures(a.bracket_);
  if (!failures.empty()) throw JacobiViolation(summarize("Jacobi identity fails", failures), std::move(failures));
  return a;
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
  return unchecked(default_basis_names(dim), AlternatingMap(dim, 2, dim));
}

Vector LieAlgebra::bracket(std::span<const Rational> x, std::span<const Rational> y) const {
  return bracket_.evaluate({Vector(x.begin(), x.end()), Vector(y.begin(), y.end())});
}

Vector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  std::size_t idx[2] = {i, j};
  return bracket_.on_basis(idx);
}

RationalMatrix LieAlgebra::ad(std::span<const Rational> x) const {
  RationalMatrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, bracket(x, unit_vector(dim(), j)));
  return m;
}

RationalMatrix LieAlgebra::ad_basis(std::size_t i) const { return ad(unit_vector(dim(), i)); }

// ---------------------------------------------------------------------------

std::vector<AxiomFailure> action_failures(LieAlgebra const& g, LieAlgebra const& h,
                                          std::vector<RationalMatrix> const& rho) {
  std::vector<AxiomFailure> out;
  std::size_t dg = g.dim(), dh = h.dim();
  for (std::size_t i = 0; i < dg; ++i) {
    for (std::size_t a = 0; a < dh; ++a) {
      for (std::size_t b = a + 1; b < dh; ++b) {
        auto ua = unit_vector(dh, a), ub = unit_vector(dh, b);
        Vector r = rho[i].apply(h.bracket(ua, ub)) - h.bracket(rho[i].apply(ua), ub) - h.bracket(ua, rho[i].apply(ub));
        push_if_nonzero(out, "derivation", {i, a, b}, std::move(r));
      }
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    for (std::size_t j = i + 1; j < dg; ++j) {
      RationalMatrix r = combination(rho, g.bracket_basis(i, j), dh) - commutator(rho[i], rho[j]);
      for (std::size_t a = 0; a < dh; ++a) push_if_nonzero(out, "homomorphism", {i, j, a}, r.column(a));
    }
  }
  return out;
}

LieActTriple LieActTriple::unchecked(LieAlgebra g, LieAlgebra h, std::vector<RationalMatrix> rho) {
  if (rho.size() != g.dim()) throw DimensionMismatch("action needs one matrix per basis vector of g");
  for (auto const& m : rho) check_square(m, h.dim(), "action matrix");
  LieActTriple t;
  t.g_ = std::move(g);
  t.h_ = std::move(h);
  t.rho_ = std::move(rho);
  return t;
}

LieActTriple LieActTriple::validate(LieAlgebra g, LieAlgebra h, std::vector<RationalMatrix> rho) {
  for (auto const* a : {&g, &h}) {
    auto jf = jacobi_failures(a->bracket_map());
    if (!jf.empty()) throw JacobiViolation(summarize("Jacobi identity fails", jf), std::move(jf));
  }
  auto t = unchecked(std::move(g), std::move(h), std::move(rho));
  auto failures = action_failures(t.g_, t.h_, t.rho_);
  if (!failures.empty()) throw NotAnAction(summarize("not an action by derivations", failures), std::move(failures));
  return t;
}

LieActTriple LieActTriple::adjoint(LieAlgebra const& g) {
  std::vector<RationalMatrix> rho;
  for (std::size_t i = 0; i < g.dim(); ++i) rho.push_back(g.ad_basis(i));
  return unchecked(g, g, std::move(rho));
}

RationalMatrix LieActTriple::rho_of(std::span<const Rational> x) const { return combination(rho_, x, h_.dim()); }

BigradedMap rho_block(std::vector<RationalMatrix> const& rho, std::size_t dim_g, std::size_t dim_h) {
  BigradedMap b(dim_g, dim_h, 1, 1, Side::H);
  for (std::size_t i = 0; i < dim_g; ++i) {
    for (std::size_t a = 0; a < dim_h; ++a) {
      auto dst = b.values(bit(i), bit(a));
      for (std::size_t t = 0; t < dim_h; ++t) dst[t] = rho[i](t, a);
    }
  }
  return b;
}

AlternatingMap LieActTriple::pi_lift() const {
  return BigradedMap::from_coordinates(g_.dim(), h_.dim(), 2, 0, Side::G, g_.bracket_map().coordinates()).lift();
}

AlternatingMap LieActTriple::rho_lift() const { return rho_block(rho_, g_.dim(), h_.dim()).lift(); }

AlternatingMap LieActTriple::mu_lift() const {
  return BigradedMap::from_coordinates(g_.dim(), h_.dim(), 0, 2, Side::H, h_.bracket_map().coordinates()).lift();
}

AlternatingMap LieActTriple::structure_lift() const { return pi_lift() + rho_lift() + mu_lift(); }

LieAlgebra LieActTriple::semidirect() const {
  auto names = g_.names();
  names.insert(names.end(), h_.names().begin(), h_.names().end());
  return LieAlgebra::unchecked(std::move(names), structure_lift());
}

// ---------------------------------------------------------------------------

std::vector<AxiomFailure> difference_op_failures(LieActTriple const& t, RationalMatrix const& d) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  if (d.rows() != dh || d.cols() != dg) throw DimensionMismatch("operator must map g to h");
  std::vector<AxiomFailure> out;
  for (std::size_t i = 0; i < dg; ++i) {
    for (std::size_t j = i + 1; j < dg; ++j) {
      Vector dx = d.column(i), dy = d.column(j);
      Vector r = t.rho()[i].apply(dy) - t.rho()[j].apply(dx) + t.h().bracket(dx, dy) - d.apply(t.g().bracket_basis(i, j));
      push_if_nonzero(out, "difference operator", {i, j}, std::move(r));
    }
  }
  return out;
}

RelDiffStructure RelDiffStructure::unchecked(LieActTriple t, RationalMatrix d) {
  if (d.rows() != t.h().dim() || d.cols() != t.g().dim()) throw DimensionMismatch("operator must map g to h");
  RelDiffStructure s;
  s.triple_ = std::move(t);
  s.d_ = std::move(d);
  return s;
}

RelDiffStructure RelDiffStructure::validate(LieActTriple t, RationalMatrix d) {
  auto failures = difference_op_failures(t, d);
  if (!failures.empty()) {
    throw NotDifferenceOp(summarize("not a relative difference operator", failures), std::move(failures));
  }
  return unchecked(std::move(t), std::move(d));
}

RelDiffStructure validate_rel_diff_op(LieActTriple const& t, RationalMatrix const& d) {
  return RelDiffStructure::validate(t, d);
}

AlternatingMap RelDiffStructure::d_lift() const {
  return lift_to_sum(AlternatingMap::linear(d_), dim_g(), dim_h());
}

bool graph_closure_check(LieActTriple const& t, RationalMatrix const& d) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  auto sd = t.semidirect();
  auto graph_point = [&](std::size_t i) {
    Vector z(dg + dh);
    z[i] = Rational(1);
    auto dx = d.column(i);
    for (std::size_t a = 0; a < dh; ++a) z[dg + a] = dx[a];
    return z;
  };
  for (std::size_t i = 0; i < dg; ++i) {
    for (std::size_t j = i + 1; j < dg; ++j) {
      auto w = sd.bracket(graph_point(i), graph_point(j));
      Vector wg(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(dg));
      Vector wh(w.begin() + static_cast<std::ptrdiff_t>(dg), w.end());
      if (d.apply(wg) != wh) return false;
    }
  }
  return true;
}

std::vector<AxiomFailure> representation_failures(LieAlgebra const& g, std::vector<RationalMatrix> const& rep) {
  if (rep.size() != g.dim()) throw DimensionMismatch("representation needs one matrix per basis vector");
  std::size_t n = rep.empty() ? 0 : rep.front().rows();
  std::vector<AxiomFailure> out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      RationalMatrix r = combination(rep, g.bracket_basis(i, j), n) - commutator(rep[i], rep[j]);
      for (std::size_t a = 0; a < n; ++a) push_if_nonzero(out, "representation", {i, j, a}, r.column(a));
    }
  }
  return out;
}

std::vector<RationalMatrix> rho_d(RelDiffStructure const& s) {
  std::vector<RationalMatrix> out;
  for (std::size_t i = 0; i < s.dim_g(); ++i) out.push_back(s.triple().rho()[i] + s.h().ad(s.d().column(i)));
  if (!representation_failures(s.g(), out).empty()) {
    throw InternalInconsistency("induced action ρ_D is not a representation");
  }
  return out;
}

// ---------------------------------------------------------------------------

AlternatingMap courant_bracket(AlternatingMap const& f1, AlternatingMap const& f2, LieAlgebra const& h) {
  if (f1.domain_dim() != f2.domain_dim() || f1.target_dim() != h.dim() || f2.target_dim() != h.dim()) {
    throw DimensionMismatch("bracket operands must map ∧g to h");
  }
  std::size_t m = f1.arity(), n = f2.arity(), dim = f1.domain_dim();
  AlternatingMap out(dim, m + n, h.dim());
  int outer = parity_sign(static_cast<long>(m * n + 1));
  for (WedgeMask whole : out.tuples()) {
    auto dst = out.values(whole);
    for (WedgeMask first : WedgeTable::get(dim).masks(m)) {
      if ((first & whole) != first) continue;
      WedgeMask second = whole & ~first;
      int sign = outer * block_sign(first, second);
      auto v1 = f1.values(first), v2 = f2.values(second);
      auto b = h.bracket(v1, v2);
      for (std::size_t t = 0; t < b.size(); ++t) {
        if (sign > 0) {
          dst[t] += b[t];
        } else {
          dst[t] -= b[t];
        }
      }
    }
  }
  return out;
}

AlternatingMap courant_bracket_derived(AlternatingMap const& f1, AlternatingMap const& f2, LieActTriple const& t) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  auto inner = nr_bracket(t.mu_lift(), lift_to_sum(f1, dg, dh));
  auto full = nr_bracket(inner, lift_to_sum(f2, dg, dh));
  auto p = project_to_f(full, dg, dh);
  if (parity_sign(static_cast<long>(f1.arity()) - 1) < 0) p *= Rational(-1);
  return p;
}

AlternatingMap d_pi_rho(AlternatingMap const& f, LieActTriple const& t) {
  std::size_t dg = t.g().dim(), dh = t.h().dim();
  return project_to_f(nr_bracket(t.pi_lift() + t.rho_lift(), lift_to_sum(f, dg, dh)), dg, dh);
}

bool dgla_mc_check(LieActTriple const& t, RationalMatrix const& d) {
  auto dm = AlternatingMap::linear(d);
  auto lhs = d_pi_rho(dm, t);
  auto half = courant_bracket(dm, dm, t.h());
  half *= Rational(1, 2);
  lhs += half;
  return lhs.is_zero();
}

// ---------------------------------------------------------------------------

DifferenceLieAlgebra DifferenceLieAlgebra::unchecked(LieAlgebra g, RationalMatrix d) {
  check_square(d, g.dim(), "difference operator");
  DifferenceLieAlgebra a;
  a.g_ = std::move(g);
  a.d_ = std::move(d);
  return a;
}

DifferenceLieAlgebra DifferenceLieAlgebra::validate(LieAlgebra g, RationalMatrix d) {
  auto jf = jacobi_failures(g.bracket_map());
  if (!jf.empty()) throw JacobiViolation(summarize("Jacobi identity fails", jf), std::move(jf));
  auto a = unchecked(std::move(g), std::move(d));
  auto failures = difference_op_failures(LieActTriple::adjoint(a.g_), a.d_);
  if (!failures.empty()) throw NotDifferenceOp(summarize("not a difference operator", failures), std::move(failures));
  return a;
}

RelDiffStructure DifferenceLieAlgebra::as_relative() const {
  return RelDiffStructure::unchecked(LieActTriple::adjoint(g_), d_);
}

std::vector<AxiomFailure> diff_representation_failures(DifferenceLieAlgebra const& base,
                                                       std::vector<RationalMatrix> const& varrho,
                                                       RationalMatrix const& k) {
  auto out = representation_failures(base.g(), varrho);
  std::size_t n = k.rows();
  for (std::size_t i = 0; i < base.dim(); ++i) {
    RationalMatrix rdx = combination(varrho, base.d().column(i), n);
    RationalMatrix r = k * varrho[i] - rdx - varrho[i] * k - rdx * k;
    for (std::size_t a = 0; a < n; ++a) push_if_nonzero(out, "compatibility with K", {i, a}, r.column(a));
  }
  return out;
}

DiffRepresentation DiffRepresentation::unchecked(DifferenceLieAlgebra base, std::vector<RationalMatrix> varrho,
                                                 RationalMatrix k) {
  if (k.rows() != k.cols()) throw DimensionMismatch("K must be square");
  if (varrho.size() != base.dim()) throw DimensionMismatch("representation needs one matrix per basis vector");
  for (auto const& m : varrho) check_square(m, k.rows(), "representation matrix");
  DiffRepresentation r;
  r.base_ = std::move(base);
  r.varrho_ = std::move(varrho);
  r.k_ = std::move(k);
  return r;
}

DiffRepresentation DiffRepresentation::validate(DifferenceLieAlgebra base, std::vector<RationalMatrix> varrho,
                                                RationalMatrix k) {
  auto r = unchecked(std::move(base), std::move(varrho), std::move(k));
  auto failures = diff_representation_failures(r.base_, r.varrho_, r.k_);
  if (!failures.empty()) {
    throw NotARepresentation(summarize("not a representation of the difference Lie algebra", failures),
                             std::move(failures));
  }
  return r;
}

DiffRepresentation DiffRepresentation::adjoint(DifferenceLieAlgebra const& base) {
  std::vector<RationalMatrix> ad;
  for (std::size_t i = 0; i < base.dim(); ++i) ad.push_back(base.g().ad_basis(i));
  return unchecked(base, std::move(ad), base.d());
}

RationalMatrix DiffRepresentation::varrho_of(std::span<const Rational> x) const {
  return combination(varrho_, x, v_dim());
}

RationalMatrix direct_sum(RationalMatrix const& a, RationalMatrix const& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  }
  return m;
}

DifferenceLieAlgebra semidirect_difference(DiffRepresentation const& rep) {
  LieAlgebra v = LieAlgebra::unchecked(default_basis_names(rep.v_dim(), "v"), AlternatingMap(rep.v_dim(), 2, rep.v_dim()));
  auto t = LieActTriple::unchecked(rep.base().g(), v, rep.varrho());
  auto total = t.semidirect();
  return DifferenceLieAlgebra::validate(LieAlgebra::unchecked(total.names(), total.bracket_map()),
                                        direct_sum(rep.base().d(), rep.k()));
}

std::vector<AxiomFailure> homomorphism_failures(RelDiffStructure const& s, RelDiffStructure const& target,
                                                RationalMatrix const& psi_g, RationalMatrix const& psi_h) {
  if (psi_g.rows() != target.dim_g() || psi_g.cols() != s.dim_g() || psi_h.rows() != target.dim_h() ||
      psi_h.cols() != s.dim_h()) {
    throw DimensionMismatch("homomorphism matrices have the wrong shape");
  }
  std::vector<AxiomFailure> out;
  for (std::size_t i = 0; i < s.dim_g(); ++i) {
    for (std::size_t j = i + 1; j < s.dim_g(); ++j) {
      Vector r = psi_g.apply(s.g().bracket_basis(i, j)) - target.g().bracket(psi_g.column(i), psi_g.column(j));
      push_if_nonzero(out, "g-homomorphism", {i, j}, std::move(r));
    }
  }
  for (std::size_t a = 0; a < s.dim_h(); ++a) {
    for (std::size_t b = a + 1; b < s.dim_h(); ++b) {
      Vector r = psi_h.apply(s.h().bracket_basis(a, b)) - target.h().bracket(psi_h.column(a), psi_h.column(b));
      push_if_nonzero(out, "h-homomorphism", {a, b}, std::move(r));
    }
  }
  RationalMatrix dd = target.d() * psi_g - psi_h * s.d();
  for (std::size_t i = 0; i < s.dim_g(); ++i) push_if_nonzero(out, "operator intertwining", {i}, dd.column(i));
  for (std::size_t i = 0; i < s.dim_g(); ++i) {
    RationalMatrix r = psi_h * s.triple().rho()[i] - target.triple().rho_of(psi_g.column(i)) * psi_h;
    for (std::size_t a = 0; a < s.dim_h(); ++a) push_if_nonzero(out, "action intertwining", {i, a}, r.column(a));
  }
  return out;
}

}  // namespace rdlie
