#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rdlie/rational.hpp"

namespace rdlie {

using Vector = std::vector<Rational>;

Vector zero_vector(std::size_t n);
bool is_zero(std::span<const Rational> v);
Vector unit_vector(std::size_t n, std::size_t i);
Vector operator+(Vector const& a, Vector const& b);
Vector operator-(Vector const& a, Vector const& b);
Vector operator*(Rational const& s, Vector const& v);
/// a += s * b
void axpy(Vector& a, Rational const& s, std::span<const Rational> b);

/// Dense row-major matrix over ℚ.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  /// Builds a matrix whose columns are the given vectors, each of length `rows`.
  static RationalMatrix from_columns(std::size_t rows, std::vector<Vector> const& columns);
  static RationalMatrix from_rows(std::size_t cols, std::vector<Vector> const& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Rational const& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] Vector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Rational> v);

  [[nodiscard]] Vector apply(std::span<const Rational> v) const;
  [[nodiscard]] RationalMatrix transpose() const;
  [[nodiscard]] bool is_zero() const;

  friend RationalMatrix operator*(RationalMatrix const& a, RationalMatrix const& b);
  friend RationalMatrix operator+(RationalMatrix const& a, RationalMatrix const& b);
  friend RationalMatrix operator-(RationalMatrix const& a, RationalMatrix const& b);
  friend RationalMatrix operator*(Rational const& s, RationalMatrix m);
  friend bool operator==(RationalMatrix const& a, RationalMatrix const& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form. Pivot is the first nonzero entry in each column
/// scanning rows top to bottom, so results are deterministic.
EchelonForm rref(RationalMatrix const& m);
std::size_t rank(RationalMatrix const& m);

/// Linearly independent vectors spanning a subspace of ℚ^ambient_dim.
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  std::vector<Vector> vectors;

  [[nodiscard]] std::size_t dim() const { return vectors.size(); }
  /// Extracts an independent spanning subset of arbitrary vectors.
  static SubspaceBasis span_of(std::size_t ambient_dim, std::vector<Vector> const& vectors);
  [[nodiscard]] bool contains(std::span<const Rational> v) const;
};

/// Basis of ker(m), one vector per free column, in increasing column order.
SubspaceBasis kernel_basis(RationalMatrix const& m);
/// Basis of the column space of m.
SubspaceBasis image_basis(RationalMatrix const& m);

/// dim(kernel) − dim(image). Throws ImageNotContained if image ⊄ kernel.
std::size_t quotient_dim(SubspaceBasis const& kernel, SubspaceBasis const& image);

/// Kernel vectors that, appended to the image basis in order, complete it to a
/// basis of the kernel. These are the canonical quotient representatives.
std::vector<Vector> quotient_representatives(SubspaceBasis const& kernel, SubspaceBasis const& image);

/// Result of solving A·x = b.
struct LinearSolution {
  std::optional<Vector> solution;
  std::size_t rank_coefficients = 0;
  std::size_t rank_augmented = 0;
};

LinearSolution solve(RationalMatrix const& a, std::span<const Rational> b);

/// Incremental independence test used to grow bases one vector at a time.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
  /// Adds v if it is independent of the current span; returns whether it was added.
  bool insert(std::span<const Rational> v);
  [[nodiscard]] bool in_span(std::span<const Rational> v) const;
  [[nodiscard]] std::size_t dim() const { return rows_.size(); }

 private:
  [[nodiscard]] Vector reduce(std::span<const Rational> v) const;

  std::size_t ambient_dim_;
  std::vector<Vector> rows_;          // echelon rows, leading entry 1
  std::vector<std::size_t> leads_;    // leading column of each row
};

}  // namespace rdlie
