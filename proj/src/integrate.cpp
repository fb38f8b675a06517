#include "rdlie/integrate.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

namespace rdlie {

namespace {

SubspaceBasis bracket_span(LieAlgebra const& a, std::vector<Vector> const& ideal) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (auto const& v : ideal) out.push_back(a.bracket(unit_vector(a.dim(), i), v));
  }
  return SubspaceBasis::span_of(a.dim(), out);
}

template <class S>
std::vector<S> bracket_generic(std::vector<std::vector<Vector>> const& constants, std::span<const S> x,
                               std::span<const S> y) {
  std::size_t n = x.size();
  std::vector<S> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector const& c = constants[i][j];
      if (c.empty()) continue;
      S w = x[i] * y[j] - x[j] * y[i];
      if (w.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!c[k].is_zero()) out[k] += w * S(c[k]);
      }
    }
  }
  return out;
}

void accumulate_word(std::map<BracketWord, Rational>& acc, std::vector<std::pair<unsigned, unsigned>> const& blocks,
                     unsigned total) {
  BracketWord word;
  Rational denom(1);
  for (auto [r, s] : blocks) {
    for (unsigned i = 0; i < r; ++i) word.push_back(false);
    for (unsigned i = 0; i < s; ++i) word.push_back(true);
    denom *= factorial(r) * factorial(s);
  }
  std::size_t m = word.size();
  if (m >= 2 && word[m - 1] == word[m - 2]) return;
  auto n = static_cast<long>(blocks.size());
  Rational c = Rational(n % 2 == 1 ? 1 : -1, n) / (denom * Rational(static_cast<long>(total)));
  acc[word] += c;
}

void enumerate_blocks(std::map<BracketWord, Rational>& acc, std::vector<std::pair<unsigned, unsigned>>& blocks,
                      unsigned total, unsigned order) {
  if (!blocks.empty()) accumulate_word(acc, blocks, total);
  for (unsigned k = 1; total + k <= order; ++k) {
    for (unsigned r = 0; r <= k; ++r) {
      blocks.emplace_back(r, k - r);
      enumerate_blocks(acc, blocks, total + k, order);
      blocks.pop_back();
    }
  }
}

std::string format_vector(std::span<const Rational> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

std::size_t nilpotency_class(LieAlgebra const& a) {
  std::vector<Vector> current;
  for (std::size_t i = 0; i < a.dim(); ++i) current.push_back(unit_vector(a.dim(), i));
  std::size_t c = 0;
  while (!current.empty()) {
    SubspaceBasis next = bracket_span(a, current);
    if (next.dim() == current.size()) {
      throw NotNilpotent("lower central series stabilizes at a subspace of dimension " +
                         std::to_string(next.dim()));
    }
    current = next.vectors;
    ++c;
  }
  return c;
}

unsigned default_bch_order() {
  char const* env = std::getenv("RDLIE_BCH_ORDER");
  if (env == nullptr || *env == '\0') return kDefaultBchOrder;
  unsigned value = 0;
  auto [end, ec] = std::from_chars(env, env + std::strlen(env), value);
  if (ec != std::errc() || *end != '\0' || value == 0 || value > kMaxBchOrder) {
    throw InputError("RDLIE_BCH_ORDER must be an integer in [1, " + std::to_string(kMaxBchOrder) + "]");
  }
  return value;
}

BCHTable::BCHTable(unsigned order) : order_(order) {
  if (order == 0 || order > kMaxBchOrder) {
    throw InputError("BCH order must lie in [1, " + std::to_string(kMaxBchOrder) + "]");
  }
  std::map<BracketWord, Rational> acc;
  std::vector<std::pair<unsigned, unsigned>> blocks;
  enumerate_blocks(acc, blocks, 0, order);
  for (auto& [word, c] : acc) {
    if (!c.is_zero()) terms_.push_back({c, word});
  }
}

BCHTable const& bch_table(unsigned order) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<BCHTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[order];
  if (!slot) slot = std::make_unique<BCHTable>(order);
  return *slot;
}

struct NilpotentGroup::Impl {
  LieAlgebra algebra;
  std::size_t nil_class = 0;
  unsigned order = 0;
  BCHTable const* table = nullptr;
  std::vector<std::vector<Vector>> constants;

  template <class S>
  std::vector<S> product(std::span<const S> x, std::span<const S> y) const {
    std::size_t n = algebra.dim();
    if (x.size() != n || y.size() != n) throw DimensionMismatch("group element has the wrong dimension");
    std::vector<S> out(n);
    for (auto const& term : table->terms()) {
      if (term.word.size() > nil_class) continue;
      std::span<const S> last = term.word.back() ? y : x;
      std::vector<S> v(last.begin(), last.end());
      for (std::size_t k = term.word.size() - 1; k-- > 0;) {
        v = bracket_generic<S>(constants, term.word[k] ? y : x, std::span<const S>(v));
      }
      S c(term.coefficient);
      for (std::size_t i = 0; i < n; ++i) out[i] += c * v[i];
    }
    return out;
  }
};

NilpotentGroup::NilpotentGroup(LieAlgebra algebra, unsigned order) {
  auto impl = std::make_shared<Impl>();
  impl->nil_class = rdlie::nilpotency_class(algebra);
  if (impl->nil_class > order) {
    throw ClassExceedsOrder("nilpotency class " + std::to_string(impl->nil_class) + " exceeds BCH order " +
                            std::to_string(order));
  }
  impl->order = order;
  impl->table = &bch_table(order);
  std::size_t n = algebra.dim();
  impl->constants.assign(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector c = algebra.bracket_basis(i, j);
      if (!is_zero(c)) impl->constants[i][j] = std::move(c);
    }
  }
  impl->algebra = std::move(algebra);
  impl_ = std::move(impl);
}

LieAlgebra const& NilpotentGroup::algebra() const { return impl_->algebra; }
std::size_t NilpotentGroup::dim() const { return impl_ ? impl_->algebra.dim() : 0; }
std::size_t NilpotentGroup::nilpotency_class() const { return impl_->nil_class; }
unsigned NilpotentGroup::order() const { return impl_->order; }

Vector NilpotentGroup::multiply(std::span<const Rational> x, std::span<const Rational> y) const {
  return impl_->product<Rational>(x, y);
}

std::vector<DualScalar> NilpotentGroup::multiply(std::span<const DualScalar> x,
                                                 std::span<const DualScalar> y) const {
  return impl_->product<DualScalar>(x, y);
}

Vector NilpotentGroup::inverse(std::span<const Rational> x) const {
  Vector out(x.begin(), x.end());
  for (auto& c : out) c = -c;
  return out;
}

Vector bch(LieAlgebra const& a, std::span<const Rational> x, std::span<const Rational> y) {
  return NilpotentGroup(a).multiply(x, y);
}

GroupElement operator*(GroupElement const& a, GroupElement const& b) {
  if (!(a.group == b.group)) throw DimensionMismatch("group elements live in different groups");
  return {a.group, a.group.multiply(a.coords, b.coords)};
}

RationalMatrix nilpotent_exp(RationalMatrix const& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("matrix exponential needs a square matrix");
  RationalMatrix out = RationalMatrix::identity(n);
  RationalMatrix power = RationalMatrix::identity(n);
  if (n == 0) return out;
  for (unsigned k = 1; k <= n; ++k) {
    power = power * m;
    if (power.is_zero()) return out;
    out = out + Rational(1) / factorial(k) * power;
  }
  throw ActionNotNilpotent("matrix is not nilpotent");
}

RationalMatrix integrated_action(RelDiffStructure const& s, std::span<const Rational> x) {
  if (x.size() != s.dim_g()) throw DimensionMismatch("action argument has the wrong dimension");
  try {
    return nilpotent_exp(s.triple().rho_of(x));
  } catch (ActionNotNilpotent const&) {
    throw ActionNotNilpotent("rho(" + format_vector(x) + ") is not nilpotent");
  }
}

RelDiffGroup integrate_operator(RelDiffStructure const& s, unsigned order) {
  RelDiffGroup out;
  out.gh_ = NilpotentGroup(s.triple().semidirect(), order);
  out.g_ = NilpotentGroup(s.g(), order);
  out.h_ = NilpotentGroup(s.h(), order);
  out.s_ = s;
  return out;
}

RationalMatrix RelDiffGroup::action(std::span<const Rational> x) const { return integrated_action(s_, x); }

Vector RelDiffGroup::act(std::span<const Rational> x, std::span<const Rational> u) const {
  return action(x).apply(u);
}

Vector RelDiffGroup::operator_at(std::span<const Rational> x) const {
  std::size_t m = s_.dim_g();
  if (x.size() != m) throw DimensionMismatch("operator argument has the wrong dimension");
  Vector dx = s_.d().apply(x);
  Vector left(x.begin(), x.end());
  left.insert(left.end(), dx.begin(), dx.end());
  Vector right = zero_vector(m + s_.dim_h());
  for (std::size_t i = 0; i < m; ++i) right[i] = -x[i];
  Vector z = gh_.multiply(left, right);
  return {z.begin() + static_cast<std::ptrdiff_t>(m), z.end()};
}

Vector RelDiffGroup::operator_tangent(std::span<const Rational> x) const {
  std::size_t m = s_.dim_g();
  if (x.size() != m) throw DimensionMismatch("operator argument has the wrong dimension");
  Vector dx = s_.d().apply(x);
  std::vector<DualScalar> left, right(m + s_.dim_h());
  for (std::size_t i = 0; i < m; ++i) {
    left.emplace_back(Rational(0), x[i]);
    right[i] = DualScalar(Rational(0), -x[i]);
  }
  for (auto const& c : dx) left.emplace_back(Rational(0), c);
  std::vector<DualScalar> z = gh_.multiply(std::span<const DualScalar>(left), std::span<const DualScalar>(right));
  Vector out;
  for (std::size_t a = m; a < z.size(); ++a) {
    if (!z[a].value.is_zero()) throw InternalInconsistency("operator does not fix the identity");
    out.push_back(z[a].infinitesimal);
  }
  return out;
}

std::pair<Vector, Vector> RelDiffGroup::pair_multiply(std::span<const Rational> a, std::span<const Rational> u,
                                                      std::span<const Rational> b,
                                                      std::span<const Rational> v) const {
  return {g_.multiply(a, b), h_.multiply(u, act(a, v))};
}

std::vector<Vector> grid_points(std::size_t dim, std::vector<Rational> const& values) {
  std::vector<Vector> out{Vector{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<Vector> next;
    for (auto const& p : out) {
      for (auto const& v : values) {
        Vector q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Rational> default_grid_values() {
  return {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
}

std::vector<SamplePair> grid_pairs(std::vector<Vector> const& points) {
  std::vector<SamplePair> out;
  std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back({points[i], points[(37 * i + 11) % n]});
  return out;
}

std::vector<SamplePair> default_sample_pairs(std::size_t dim) {
  return grid_pairs(grid_points(dim, default_grid_values()));
}

GroupLawReport group_law_check(RelDiffGroup const& g, std::vector<SamplePair> const& samples) {
  return group_law_check(g, [&g](std::span<const Rational> x) { return g.operator_at(x); }, samples);
}

GroupLawReport group_law_check(RelDiffGroup const& g, OperatorEvaluator const& op,
                               std::vector<SamplePair> const& samples) {
  GroupLawReport report;
  for (auto const& p : samples) {
    ++report.pairs_checked;
    Vector lhs = op(g.g_group().multiply(p.a, p.b));
    Vector rhs = g.h_group().multiply(op(p.a), g.act(p.a, op(p.b)));
    if (lhs != rhs) {
      report.failure = GroupLawFailure{p, std::move(lhs), std::move(rhs)};
      return report;
    }
  }
  return report;
}

FunctorialityReport functoriality_check(RelDiffStructure const& s, RelDiffStructure const& target,
                                        RationalMatrix const& psi_g, RationalMatrix const& psi_h,
                                        std::vector<Vector> const& g_samples,
                                        std::vector<Vector> const& h_samples, unsigned order) {
  auto bad = homomorphism_failures(s, target, psi_g, psi_h);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "not a homomorphism of relative difference Lie algebras: " << bad.front().axiom << " fails";
    throw NotAHomomorphism(os.str());
  }
  RelDiffGroup src = integrate_operator(s, order);
  RelDiffGroup dst = integrate_operator(target, order);
  FunctorialityReport report;
  for (auto const& x : g_samples) {
    ++report.operator_samples;
    Vector lhs = psi_h.apply(src.operator_at(x));
    Vector rhs = dst.operator_at(psi_g.apply(x));
    if (lhs != rhs) report.failures.push_back("operator naturality fails at x = " + format_vector(x));
  }
  if (!h_samples.empty()) {
    for (std::size_t i = 0; i < g_samples.size(); ++i) {
      auto const& x = g_samples[i];
      auto const& u = h_samples[(37 * i + 11) % h_samples.size()];
      ++report.action_samples;
      Vector lhs = psi_h.apply(src.act(x, u));
      Vector rhs = dst.act(psi_g.apply(x), psi_h.apply(u));
      if (lhs != rhs) {
        report.failures.push_back("action naturality fails at x = " + format_vector(x) + ", u = " + format_vector(u));
      }
    }
  }
  return report;
}

}  // namespace rdlie
