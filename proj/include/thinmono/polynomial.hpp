#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "thinmono/rational.hpp"

namespace thinmono {

/// Integer polynomial, coefficients stored constant term first. The zero
/// polynomial has no coefficients and degree -1; otherwise the leading
/// coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);

  static IntPolynomial constant(const BigInt& c);
  /// x^n
  static IntPolynomial monomial(unsigned n);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i; zero beyond the degree.
  BigInt coeff(std::size_t i) const;

  BigInt evaluate(const BigInt& x) const;
  IntPolynomial pow(unsigned e) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Quotient and remainder of a by a monic divisor.
std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& a,
                                                     const IntPolynomial& monic_divisor);

/// n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
IntPolynomial cyclotomic(unsigned n);

unsigned euler_phi(unsigned n);

/// True iff f and g have no common complex root (gcd over Q is constant).
bool coprime_roots(const IntPolynomial& f, const IntPolynomial& g);

/// Cyclotomic factors Phi_n (n ascending) of p found by trial division over
/// all n with phi(n) <= deg p. `complete` is false if a non-cyclotomic
/// cofactor remains.
struct CyclotomicFactorization {
  std::vector<std::pair<unsigned, unsigned>> factors;  // (n, multiplicity)
  bool complete = false;
};
CyclotomicFactorization factor_cyclotomic(const IntPolynomial& p);

/// Five exact parameters in [0,1), sorted, closed under Galois conjugation
/// of the corresponding roots of unity.
class ParamVector {
 public:
  /// Entries are reduced mod 1 and sorted. Throws GaloisClosureError if the
  /// roots exp(2 pi i p_j) do not form a Galois-closed multiset.
  explicit ParamVector(std::array<Rational, 5> entries);

  const std::array<Rational, 5>& entries() const { return entries_; }
  friend bool operator==(const ParamVector&, const ParamVector&) = default;

  /// Cyclotomic decomposition (n, multiplicity), n ascending.
  const std::vector<std::pair<unsigned, unsigned>>& cyclotomic_factors() const {
    return factors_;
  }

 private:
  std::array<Rational, 5> entries_;
  std::vector<std::pair<unsigned, unsigned>> factors_;
};

/// prod_j (x - exp(2 pi i p_j)) as an integer polynomial.
IntPolynomial polynomial_from_params(const ParamVector& p);

}  // namespace thinmono
