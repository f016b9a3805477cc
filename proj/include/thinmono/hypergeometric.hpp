#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thinmono/matrix.hpp"
#include "thinmono/polynomial.hpp"

namespace thinmono {

/// Inertia of a nondegenerate symmetric form, normalized so plus >= minus.
struct Signature {
  int plus = 0;
  int minus = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
  std::string to_string() const;
};

/// Order of a matrix: finite with value, or infinite.
struct Order {
  std::optional<unsigned> finite;
  bool is_finite() const { return finite.has_value(); }
  friend bool operator==(const Order&, const Order&) = default;
  std::string to_string() const;
};

/// Companion matrix with ones on the subdiagonal and last column
/// -(a_0, ..., a_4). Throws DegreeError unless p is monic of degree 5.
SquareMatrix5 companion_matrix(const IntPolynomial& p);

/// Coefficients of det(xI - M), constant term first (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const SquareMatrix5& m);

/// The invariant symmetric form of <A, B>, normalized to a primitive integer
/// matrix with positive first nonzero entry (row-major). Throws
/// FormNotUniqueError unless the invariant forms make up exactly one line.
SquareMatrix5 invariant_form(const SquareMatrix5& a, const SquareMatrix5& b);

/// Exact inertia by symmetric congruence reduction. Throws DegenerateFormError
/// if rank < 5.
Signature signature(const SquareMatrix5& q);

/// Least i > 0 with (B^i - I)^5 = 0. Throws IndexNotFoundError past the cap.
unsigned unipotency_index(const SquareMatrix5& b);

/// Hard cap on the unipotency search: twice the lcm of all n <= 60 with
/// phi(n) <= 5.
unsigned unipotency_cap();

Order order_of(const SquareMatrix5& b);

/// Least k with B^k = -I, if any.
std::optional<unsigned> minus_identity_power(const SquareMatrix5& b);

/// Hypergeometric generators A (from f), B (from g) and T = B A^-1.
struct Generators {
  IntPolynomial f, g;
  SquareMatrix5 a, b, t;
};

/// Throws CoprimalityError if f and g share a root.
Generators make_generators(const ParamVector& alpha, const ParamVector& beta);

}  // namespace thinmono
