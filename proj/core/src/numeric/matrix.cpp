#include "jetflow/numeric/matrix.hpp"

#include <sstream>
#include <utility>

#include "jetflow/errors.hpp"

namespace jetflow {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const GaussianRational> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<GaussianRational>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw DomainError("Matrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_lower_triangular() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DomainError("Matrix::block: out of range");
  Matrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  }
  return b;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("Matrix: shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("Matrix: shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const GaussianRational& s) {
  for (auto& x : data_) {
    if (!x.is_zero()) x *= s;
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("Matrix: shape mismatch in *");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GaussianRational& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const GaussianRational& y = b(k, c);
        if (!y.is_zero()) out(r, c) += x * y;
      }
    }
  }
  return out;
}

std::vector<GaussianRational> operator*(const Matrix& a, std::span<const GaussianRational> v) {
  if (a.cols_ != v.size()) throw DomainError("Matrix: shape mismatch in matrix-vector product");
  std::vector<GaussianRational> out(a.rows_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) {
      if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
    }
  }
  return out;
}

Matrix Matrix::pow(unsigned long exponent) const {
  if (!is_square()) throw DomainError("Matrix::pow: not square");
  Matrix result = identity(rows_);
  Matrix base = *this;
  while (exponent != 0) {
    if ((exponent & 1UL) != 0) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw DomainError("Matrix::inverse: not square");
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) throw DomainError("Matrix::inverse: singular matrix");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const GaussianRational s = a(col, col).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      if (!a(col, c).is_zero()) a(col, c) *= s;
      if (!inv(col, c).is_zero()) inv(col, c) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const GaussianRational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(col, c).is_zero()) a(r, c) -= f * a(col, c);
        if (!inv(col, c).is_zero()) inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

std::size_t Matrix::rank() const {
  Matrix a = *this;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t piv = rank;
    while (piv < rows_ && a(piv, col).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != rank) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(a(piv, c), a(rank, c));
    }
    const GaussianRational inv = a(rank, col).inverse();
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (a(r, col).is_zero()) continue;
      const GaussianRational f = a(r, col) * inv;
      for (std::size_t c = col; c < cols_; ++c) {
        if (!a(rank, c).is_zero()) a(r, c) -= f * a(rank, c);
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t Matrix::nilpotency_index() const {
  if (!is_square()) throw DomainError("Matrix::nilpotency_index: not square");
  if (rows_ == 0) return 1;
  Matrix p = *this;
  for (std::size_t k = 1; k <= rows_; ++k) {
    if (p.is_zero()) return k;
    p = p * (*this);
  }
  return 0;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c != 0) os << ", ";
      os << (*this)(r, c);
    }
    os << "]\n";
  }
  return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace jetflow
