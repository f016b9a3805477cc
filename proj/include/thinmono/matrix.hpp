#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "thinmono/rational.hpp"

namespace thinmono {

inline constexpr std::size_t kDim = 5;

using Vector5 = std::array<Rational, kDim>;
using IntVector5 = std::array<BigInt, kDim>;

/// Dense 5x5 matrix over Q.
class SquareMatrix5 {
 public:
  SquareMatrix5();  // zero matrix

  static SquareMatrix5 identity();
  /// Anti-diagonal permutation matrix reversing the coordinate order.
  static SquareMatrix5 reversal();
  /// Builds from 5 rows of 5 entries.
  static SquareMatrix5 from_rows(const std::array<std::array<Rational, kDim>, kDim>& rows);

  Rational& operator()(std::size_t row, std::size_t col) { return a_[row * kDim + col]; }
  const Rational& operator()(std::size_t row, std::size_t col) const { return a_[row * kDim + col]; }

  SquareMatrix5 transpose() const;
  Rational determinant() const;
  bool is_invertible() const { return determinant() != 0; }
  /// Throws SingularTransformError when singular.
  SquareMatrix5 inverse() const;
  SquareMatrix5 pow(unsigned e) const;
  bool is_integral() const;

  /// Rank of the matrix.
  std::size_t rank() const;

  friend SquareMatrix5 operator+(const SquareMatrix5& x, const SquareMatrix5& y);
  friend SquareMatrix5 operator-(const SquareMatrix5& x, const SquareMatrix5& y);
  friend SquareMatrix5 operator-(const SquareMatrix5& x);
  friend SquareMatrix5 operator*(const SquareMatrix5& x, const SquareMatrix5& y);
  friend SquareMatrix5 operator*(const Rational& c, const SquareMatrix5& x);
  friend Vector5 operator*(const SquareMatrix5& x, const Vector5& v);
  friend bool operator==(const SquareMatrix5& x, const SquareMatrix5& y) { return x.a_ == y.a_; }

  std::string to_string() const;

 private:
  std::array<Rational, kDim * kDim> a_;
};

/// Rank of an arbitrary rational matrix given as rows.
std::size_t rank_of(std::vector<std::vector<Rational>> rows);

/// Nonzero rows of the reduced row echelon form.
std::vector<std::vector<Rational>> row_echelon_basis(std::vector<std::vector<Rational>> rows,
                                                     std::size_t ncols);

/// Basis of the right null space of the matrix given as rows (ncols columns).
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> rows,
                                              std::size_t ncols);

/// Scales a nonzero rational vector by a positive factor to a primitive
/// integer vector (gcd of entries 1). Returns zero for the zero vector.
IntVector5 primitive_integer(const Vector5& v);
IntVector5 primitive_integer(const IntVector5& v);

Vector5 to_rational(const IntVector5& v);

}  // namespace thinmono
