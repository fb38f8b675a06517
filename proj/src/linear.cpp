#include "rdlie/linear.hpp"

#include "rdlie/errors.hpp"

namespace rdlie {

Vector zero_vector(std::size_t n) { return Vector(n); }

bool is_zero(std::span<const Rational> v) {
  for (auto const& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = Rational(1);
  return v;
}

Vector operator+(Vector const& a, Vector const& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector operator-(Vector const& a, Vector const& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector operator*(Rational const& s, Vector const& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vector& a, Rational const& s, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i) a[i].add_product(s, b[i]);
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, std::vector<Vector> const& columns) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, std::vector<Vector> const& rows) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector RationalMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void RationalMatrix::set_column(std::size_t c, std::span<const Rational> v) {
  if (v.size() != rows_) throw DimensionMismatch("column length differs from row count");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vector RationalMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r].add_product((*this)(r, c), v[c]);
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool RationalMatrix::is_zero() const { return rdlie::is_zero(data_); }

RationalMatrix operator*(RationalMatrix const& a, RationalMatrix const& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
  RationalMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      auto const& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j).add_product(aik, b(k, j));
    }
  }
  return p;
}

RationalMatrix operator+(RationalMatrix const& a, RationalMatrix const& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum size mismatch");
  RationalMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
  return s;
}

RationalMatrix operator-(RationalMatrix const& a, RationalMatrix const& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference size mismatch");
  RationalMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
  return s;
}

RationalMatrix operator*(Rational const& s, RationalMatrix m) {
  for (auto& x : m.data_) x *= s;
  return m;
}

EchelonForm rref(RationalMatrix const& m) {
  RationalMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    }
    Rational inv = Rational(1) / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Rational factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (!a(row, c).is_zero()) a(r, c) -= factor * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(RationalMatrix const& m) { return rref(m).rank(); }

SubspaceBasis SubspaceBasis::span_of(std::size_t ambient_dim, std::vector<Vector> const& vectors) {
  SubspaceBasis basis{ambient_dim, {}};
  IncrementalBasis inc(ambient_dim);
  for (auto const& v : vectors) {
    if (inc.insert(v)) basis.vectors.push_back(v);
  }
  return basis;
}

bool SubspaceBasis::contains(std::span<const Rational> v) const {
  IncrementalBasis inc(ambient_dim);
  for (auto const& b : vectors) inc.insert(b);
  return inc.in_span(v);
}

SubspaceBasis kernel_basis(RationalMatrix const& m) {
  auto form = rref(m);
  SubspaceBasis basis{m.cols(), {}};
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : form.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = Rational(1);
    for (std::size_t r = 0; r < form.pivots.size(); ++r) v[form.pivots[r]] = -form.reduced(r, free);
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

SubspaceBasis image_basis(RationalMatrix const& m) {
  auto form = rref(m);
  SubspaceBasis basis{m.rows(), {}};
  for (auto p : form.pivots) basis.vectors.push_back(m.column(p));
  return basis;
}

std::size_t quotient_dim(SubspaceBasis const& kernel, SubspaceBasis const& image) {
  if (kernel.ambient_dim != image.ambient_dim) throw DimensionMismatch("subspaces live in different spaces");
  IncrementalBasis inc(kernel.ambient_dim);
  for (auto const& k : kernel.vectors) inc.insert(k);
  for (auto const& v : image.vectors) {
    if (!inc.in_span(v)) throw ImageNotContained("image is not contained in kernel (coboundary does not square to zero)");
  }
  return kernel.dim() - image.dim();
}

std::vector<Vector> quotient_representatives(SubspaceBasis const& kernel, SubspaceBasis const& image) {
  (void)quotient_dim(kernel, image);
  IncrementalBasis inc(kernel.ambient_dim);
  for (auto const& v : image.vectors) inc.insert(v);
  std::vector<Vector> reps;
  for (auto const& k : kernel.vectors) {
    if (inc.insert(k)) reps.push_back(k);
  }
  return reps;
}

LinearSolution solve(RationalMatrix const& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length differs from row count");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto form = rref(aug);
  LinearSolution result;
  result.rank_augmented = form.rank();
  result.rank_coefficients = form.rank();
  if (!form.pivots.empty() && form.pivots.back() == a.cols()) {
    result.rank_coefficients = form.rank() - 1;
    return result;
  }
  Vector x(a.cols());
  for (std::size_t r = 0; r < form.pivots.size(); ++r) x[form.pivots[r]] = form.reduced(r, a.cols());
  result.solution = std::move(x);
  return result;
}

Vector IncrementalBasis::reduce(std::span<const Rational> v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector does not match ambient dimension");
  Vector w(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rational f = w[leads_[i]];
    if (f.is_zero()) continue;
    axpy(w, -f, rows_[i]);
  }
  return w;
}

bool IncrementalBasis::insert(std::span<const Rational> v) {
  Vector w = reduce(v);
  std::size_t lead = 0;
  while (lead < w.size() && w[lead].is_zero()) ++lead;
  if (lead == w.size()) return false;
  Rational inv = Rational(1) / w[lead];
  for (auto& x : w) x *= inv;
  rows_.push_back(std::move(w));
  leads_.push_back(lead);
  return true;
}

bool IncrementalBasis::in_span(std::span<const Rational> v) const { return rdlie::is_zero(reduce(v)); }

}  // namespace rdlie
