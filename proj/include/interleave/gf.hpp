#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace interleave {

/** @brief Prime field GF(p), p < 2^31. */
class Field {
 public:
  using Elem = std::uint32_t;

  explicit Field(std::uint32_t p = 2) : p_(p) {
    if (p < 2 || p >= (1u << 31)) throw std::invalid_argument("field characteristic out of range");
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  }

  std::uint32_t characteristic() const { return p_; }
  Elem add(Elem a, Elem b) const { return static_cast<Elem>((static_cast<std::uint64_t>(a) + b) % p_); }
  Elem sub(Elem a, Elem b) const { return static_cast<Elem>((static_cast<std::uint64_t>(a) + p_ - b) % p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_); }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
    // Fermat: a^(p-2)
    std::uint64_t r = 1, b = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<Elem>(r);
  }
  Elem from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    return static_cast<Elem>(m < 0 ? m + p_ : m);
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

/** @brief Dense row-major matrix over GF(p). */
class Matrix {
 public:
  using Elem = Field::Elem;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field f = Field(2))
      : rows_(rows), cols_(cols), field_(f), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, Field f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols, Field f) {
    Matrix m(rows.size(), cols, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (Elem x : data_)
      if (x) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix shape mismatch: " + a.shape() + " * " + b.shape());
    const Field& f = a.field_;
    Matrix c(a.rows_, b.cols_, f);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Elem x = a(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j)) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size(), field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }
  Matrix row_range(std::size_t from, std::size_t to) const {
    Matrix m(to - from, cols_, field_);
    for (std::size_t i = from; i < to; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - from, j) = (*this)(i, j);
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_{2};
  std::vector<Elem> data_;
};

/** @brief [A | B]. */
inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

/** @brief [A 0; 0 B]. */
inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

/** @brief Reduced row echelon form with its pivot columns. */
struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

inline Rref rref(Matrix m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Field::Elem inv = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Field::Elem factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/** @brief Columns of m forming a basis of its column space (first independent ones). */
inline Matrix column_basis(const Matrix& m) { return m.columns(rref(m).pivots); }

/** @brief Basis of {x : m x = 0} as columns. */
inline Matrix nullspace(const Matrix& m) {
  Rref r = rref(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix basis(m.cols(), free.size(), f);
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) basis(r.pivots[i], k) = f.neg(r.reduced(i, free[k]));
  }
  return basis;
}

/** @brief Some X with a X = b, or nullopt. */
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  Rref r = rref(hstack(a, b));
  Matrix x(a.cols(), b.cols(), a.field());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    std::size_t c = r.pivots[i];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = r.reduced(i, a.cols() + j);
  }
  return x;
}

/** @brief Standard basis vectors completing the independent columns of s to a basis. */
inline Matrix complement_basis(const Matrix& s) {
  Rref r = rref(hstack(s, Matrix::identity(s.rows(), s.field())));
  std::vector<std::size_t> extra;
  for (auto c : r.pivots)
    if (c >= s.cols()) extra.push_back(c - s.cols());
  return Matrix::identity(s.rows(), s.field()).columns(extra);
}

inline Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  auto x = solve(a, Matrix::identity(a.rows(), a.field()));
  if (!x || rank(a) != a.rows()) throw std::domain_error("singular matrix");
  return *x;
}

}  // namespace interleave
