#include "rdc/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "rdc/error.hpp"

namespace rdc {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw malformed("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw malformed("matrix rows have unequal lengths");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<mpz_class> IntegerMatrix::column(std::size_t j) const {
  std::vector<mpz_class> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

mpz_class IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw malformed("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix m = *this;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw malformed("matrix product dimension mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// Elementary operations applied to S together with the transform matrices:
// row ops hit U on the left and U_inv on the right, column ops hit V on the
// right and V_inv on the left.
class SmithWorker {
 public:
  explicit SmithWorker(const IntegerMatrix& a)
      : f_{IntegerMatrix::identity(a.rows()), a, IntegerMatrix::identity(a.cols()),
           IntegerMatrix::identity(a.rows()), IntegerMatrix::identity(a.cols()), 0} {}

  SmithForm run() {
    IntegerMatrix& s = f_.S;
    const std::size_t m = s.rows(), n = s.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!move_min_to(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (s(i, t) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
          row_addmul(i, t, -q);
          if (s(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (s(t, j) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
          col_addmul(j, t, -q);
          if (s(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_min_to(t);
          continue;
        }
        // Row and column are clear; enforce divisibility of the remaining block.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
              row_addmul(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (s(t, t) < 0) row_negate(t);
    }
    f_.rank = t;
    return std::move(f_);
  }

 private:
  bool move_min_to(std::size_t t) {
    const IntegerMatrix& s = f_.S;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j) {
        if (s(i, j) == 0) continue;
        if (!found || abs(s(i, j)) < abs(s(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    if (bi != t) row_swap(bi, t);
    if (bj != t) col_swap(bj, t);
    return true;
  }

  void row_swap(std::size_t i, std::size_t k) {
    for (IntegerMatrix* m : {&f_.S, &f_.U})
      for (std::size_t j = 0; j < m->cols(); ++j) std::swap((*m)(i, j), (*m)(k, j));
    IntegerMatrix& ui = f_.U_inv;
    for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, k));
  }

  void col_swap(std::size_t j, std::size_t k) {
    for (IntegerMatrix* m : {&f_.S, &f_.V})
      for (std::size_t r = 0; r < m->rows(); ++r) std::swap((*m)(r, j), (*m)(r, k));
    IntegerMatrix& vi = f_.V_inv;
    for (std::size_t c = 0; c < vi.cols(); ++c) std::swap(vi(j, c), vi(k, c));
  }

  // row_i += q row_k
  void row_addmul(std::size_t i, std::size_t k, const mpz_class& q) {
    for (IntegerMatrix* m : {&f_.S, &f_.U})
      for (std::size_t j = 0; j < m->cols(); ++j) (*m)(i, j) += q * (*m)(k, j);
    IntegerMatrix& ui = f_.U_inv;
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, k) -= q * ui(r, i);
  }

  // col_j += q col_k
  void col_addmul(std::size_t j, std::size_t k, const mpz_class& q) {
    for (IntegerMatrix* m : {&f_.S, &f_.V})
      for (std::size_t r = 0; r < m->rows(); ++r) (*m)(r, j) += q * (*m)(r, k);
    IntegerMatrix& vi = f_.V_inv;
    for (std::size_t c = 0; c < vi.cols(); ++c) vi(k, c) -= q * vi(j, c);
  }

  void row_negate(std::size_t i) {
    for (IntegerMatrix* m : {&f_.S, &f_.U})
      for (std::size_t j = 0; j < m->cols(); ++j) (*m)(i, j) = -(*m)(i, j);
    IntegerMatrix& ui = f_.U_inv;
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, i) = -ui(r, i);
  }

  SmithForm f_;
};

}  // namespace

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> out;
  out.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) out.push_back(S(i, i));
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& a) { return SmithWorker(a).run(); }

IntegerMatrix integer_kernel(const IntegerMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  const std::size_t n = a.cols();
  IntegerMatrix k(n, n - f.rank);
  for (std::size_t j = f.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - f.rank) = f.V(i, j);
  return k;
}

std::optional<std::vector<mpz_class>> solve_integer(const IntegerMatrix& a, const std::vector<mpz_class>& b) {
  if (b.size() != a.rows()) throw malformed("solve_integer: right-hand side has the wrong length");
  const SmithForm f = smith_normal_form(a);
  // A = U^-1 S V^-1, so A x = b  <=>  S y = U b with x = V y.
  std::vector<mpz_class> ub(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.rows(); ++k) ub[i] += f.U(i, k) * b[k];
  std::vector<mpz_class> y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < f.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), f.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / f.S(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < f.rank; ++k) x[i] += f.V(i, k) * y[k];
  return x;
}

RationalMatrix::RationalMatrix(const IntegerMatrix& m) : RationalMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const mpq_class inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const mpq_class f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t RationalMatrix::rank() const {
  RationalMatrix m = *this;
  return rref(m).size();
}

RationalMatrix RationalMatrix::null_space() const {
  RationalMatrix m = *this;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  RationalMatrix out(cols_, cols_ - pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    out(free, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) out(pivots[r], k) = -m(r, free);
    ++k;
  }
  return out;
}

RationalMatrix RationalMatrix::left_null_space() const { return transposed().null_space().transposed(); }

std::optional<std::vector<mpq_class>> RationalMatrix::solve(const std::vector<mpq_class>& b) const {
  if (b.size() != rows_) throw malformed("solve: right-hand side has the wrong length");
  RationalMatrix aug(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  std::vector<mpq_class> x(cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
  return x;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::beside(const RationalMatrix& right) const {
  if (rows_ != right.rows_) throw malformed("beside: row counts differ");
  RationalMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw malformed("matrix product dimension mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

}  // namespace rdc
