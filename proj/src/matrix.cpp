#include "thinmono/matrix.hpp"

#include <sstream>
#include <utility>

#include "thinmono/errors.hpp"

namespace thinmono {

SquareMatrix5::SquareMatrix5() { a_.fill(Rational(0)); }

SquareMatrix5 SquareMatrix5::identity() {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim; ++i) m(i, i) = 1;
  return m;
}

SquareMatrix5 SquareMatrix5::reversal() {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim; ++i) m(i, kDim - 1 - i) = 1;
  return m;
}

SquareMatrix5 SquareMatrix5::from_rows(const std::array<std::array<Rational, kDim>, kDim>& rows) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SquareMatrix5 SquareMatrix5::transpose() const {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

Rational SquareMatrix5::determinant() const {
  SquareMatrix5 m = *this;
  Rational det = 1;
  for (std::size_t col = 0; col < kDim; ++col) {
    std::size_t pivot = col;
    while (pivot < kDim && m(pivot, col) == 0) ++pivot;
    if (pivot == kDim) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < kDim; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < kDim; ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < kDim; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

SquareMatrix5 SquareMatrix5::inverse() const {
  SquareMatrix5 m = *this;
  SquareMatrix5 inv = identity();
  for (std::size_t col = 0; col < kDim; ++col) {
    std::size_t pivot = col;
    while (pivot < kDim && m(pivot, col) == 0) ++pivot;
    if (pivot == kDim) throw SingularTransformError("matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < kDim; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational p = m(col, col);
    for (std::size_t j = 0; j < kDim; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < kDim; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t j = 0; j < kDim; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

SquareMatrix5 SquareMatrix5::pow(unsigned e) const {
  SquareMatrix5 result = identity();
  SquareMatrix5 base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

bool SquareMatrix5::is_integral() const {
  for (const auto& x : a_) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

std::size_t SquareMatrix5::rank() const {
  std::vector<std::vector<Rational>> rows(kDim, std::vector<Rational>(kDim));
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) rows[i][j] = (*this)(i, j);
  }
  return rank_of(std::move(rows));
}

SquareMatrix5 operator+(const SquareMatrix5& x, const SquareMatrix5& y) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim * kDim; ++i) m.a_[i] = x.a_[i] + y.a_[i];
  return m;
}

SquareMatrix5 operator-(const SquareMatrix5& x, const SquareMatrix5& y) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim * kDim; ++i) m.a_[i] = x.a_[i] - y.a_[i];
  return m;
}

SquareMatrix5 operator-(const SquareMatrix5& x) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim * kDim; ++i) m.a_[i] = -x.a_[i];
  return m;
}

SquareMatrix5 operator*(const SquareMatrix5& x, const SquareMatrix5& y) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t k = 0; k < kDim; ++k) {
      const Rational& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < kDim; ++j) m(i, j) += xik * y(k, j);
    }
  }
  return m;
}

SquareMatrix5 operator*(const Rational& c, const SquareMatrix5& x) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < kDim * kDim; ++i) m.a_[i] = c * x.a_[i];
  return m;
}

Vector5 operator*(const SquareMatrix5& x, const Vector5& v) {
  Vector5 out;
  for (std::size_t i = 0; i < kDim; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < kDim; ++j) acc += x(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

std::string SquareMatrix5::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < kDim; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < kDim; ++j) out << (j ? ", " : "") << thinmono::to_string((*this)(i, j));
    out << "]";
  }
  out << "]";
  return out.str();
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    const Rational p = rows[r][col];
    for (auto& x : rows[r]) x /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size()).size();
}

std::vector<std::vector<Rational>> row_echelon_basis(std::vector<std::vector<Rational>> rows,
                                                     std::size_t ncols) {
  const auto pivots = rref(rows, ncols);
  rows.resize(pivots.size());
  return rows;
}

std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> rows,
                                              std::size_t ncols) {
  const auto pivots = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVector5 primitive_integer(const Vector5& v) {
  BigInt den_lcm = 1;
  for (const auto& x : v) den_lcm = lcm(den_lcm, x.get_den());
  IntVector5 out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = v[i].get_num() * (den_lcm / v[i].get_den());
  return primitive_integer(out);
}

IntVector5 primitive_integer(const IntVector5& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  IntVector5 out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = v[i] / g;
  return out;
}

Vector5 to_rational(const IntVector5& v) {
  Vector5 out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = v[i];
  return out;
}

}  // namespace thinmono
