#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace rdc {

/// Dense row-major matrix over Z with unbounded entries.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<mpz_class> column(std::size_t j) const;
  IntegerMatrix transposed() const;
  bool is_zero() const;
  /// Bareiss fraction-free elimination; square matrices only.
  mpz_class determinant() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// U A V = S with U, V unimodular and S = diag(d_1, ..., d_r, 0, ...),
/// d_i > 0 and d_i | d_{i+1}. The inverses are tracked alongside.
struct SmithForm {
  IntegerMatrix U, S, V;
  IntegerMatrix U_inv, V_inv;
  std::size_t rank = 0;

  std::vector<mpz_class> invariant_factors() const;
};

SmithForm smith_normal_form(const IntegerMatrix& a);

/// Columns spanning {x in Z^n : A x = 0}, as an n x k matrix.
IntegerMatrix integer_kernel(const IntegerMatrix& a);

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<std::vector<mpz_class>> solve_integer(const IntegerMatrix& a, const std::vector<mpz_class>& b);

/// Dense matrix over Q, used for real-subspace bookkeeping.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit RationalMatrix(const IntegerMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rank() const;
  /// Columns spanning the null space.
  RationalMatrix null_space() const;
  /// Rows spanning {y : y A = 0}.
  RationalMatrix left_null_space() const;
  std::optional<std::vector<mpq_class>> solve(const std::vector<mpq_class>& b) const;
  RationalMatrix transposed() const;
  /// Horizontal concatenation; row counts must agree.
  RationalMatrix beside(const RationalMatrix& right) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

}  // namespace rdc
