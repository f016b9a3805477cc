#include "thinmono/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "thinmono/errors.hpp"

namespace thinmono {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::monomial(unsigned n) {
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  return IntPolynomial(std::move(c));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : BigInt(0);
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial result = constant(1);
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& a,
                                                     const IntPolynomial& monic_divisor) {
  if (!monic_divisor.is_monic()) throw DegreeError("divisor must be monic");
  std::vector<BigInt> rem = a.coefficients();
  const int db = monic_divisor.degree();
  if (a.degree() < db) return {IntPolynomial{}, a};
  std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - db + 1), BigInt(0));
  for (int i = a.degree(); i >= db; --i) {
    const BigInt lead = rem[static_cast<std::size_t>(i)];
    if (lead == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = lead;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i - db + j)] -= lead * monic_divisor.coeff(static_cast<std::size_t>(j));
    }
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

IntPolynomial cyclotomic(unsigned n) {
  if (n == 0) throw DegreeError("cyclotomic polynomial index must be positive");
  IntPolynomial p = IntPolynomial::monomial(n) - IntPolynomial::constant(1);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = divmod_monic(p, cyclotomic(d));
    p = std::move(q);
  }
  return p;
}

unsigned euler_phi(unsigned n) {
  unsigned count = 0;
  for (unsigned k = 1; k <= n; ++k) {
    if (std::gcd(k, n) == 1) ++count;
  }
  return count;
}

namespace {

// Dense polynomial over Q, constant term first, used only for the Euclidean
// algorithm in coprime_roots.
using RationalPoly = std::vector<Rational>;

void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly remainder(RationalPoly a, const RationalPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= factor * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

bool coprime_roots(const IntPolynomial& f, const IntPolynomial& g) {
  RationalPoly a(f.coefficients().begin(), f.coefficients().end());
  RationalPoly b(g.coefficients().begin(), g.coefficients().end());
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return a.size() == 1 || b.size() == 1;
  while (!b.empty()) {
    RationalPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

CyclotomicFactorization factor_cyclotomic(const IntPolynomial& p) {
  CyclotomicFactorization out;
  if (p.is_zero()) return out;
  IntPolynomial rest = p;
  // Only Phi_n with phi(n) <= deg p can divide p; phi(n) >= sqrt(n/2).
  const unsigned deg = static_cast<unsigned>(std::max(p.degree(), 0));
  const unsigned bound = 2 * deg * deg + 2;
  for (unsigned n = 1; n <= bound && rest.degree() > 0; ++n) {
    if (euler_phi(n) > deg) continue;
    const IntPolynomial phi = cyclotomic(n);
    unsigned mult = 0;
    for (;;) {
      auto [q, r] = divmod_monic(rest, phi);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    if (mult > 0) out.factors.emplace_back(n, mult);
  }
  out.complete = rest.degree() == 0 && abs(rest.coeff(0)) == 1;
  return out;
}

ParamVector::ParamVector(std::array<Rational, 5> entries) : entries_(std::move(entries)) {
  for (auto& e : entries_) {
    // reduce mod 1 into [0, 1)
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
    e -= fl;
  }
  std::sort(entries_.begin(), entries_.end());

  std::map<unsigned, std::map<unsigned, unsigned>> by_denominator;
  for (const auto& e : entries_) {
    if (!e.get_den().fits_uint_p()) throw GaloisClosureError("parameter denominator too large");
    by_denominator[static_cast<unsigned>(e.get_den().get_ui())]
                  [static_cast<unsigned>(e.get_num().get_ui())]++;
  }
  for (const auto& [d, numerators] : by_denominator) {
    const unsigned mult = numerators.begin()->second;
    for (unsigned k = 0; k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      const auto it = numerators.find(k);
      const unsigned seen = it == numerators.end() ? 0 : it->second;
      if (seen != mult) {
        throw GaloisClosureError("parameters with denominator " + std::to_string(d) +
                                 " are not closed under Galois conjugation");
      }
    }
    factors_.emplace_back(d, mult);
  }
}

IntPolynomial polynomial_from_params(const ParamVector& p) {
  IntPolynomial result = IntPolynomial::constant(1);
  for (const auto& [n, mult] : p.cyclotomic_factors()) result = result * cyclotomic(n).pow(mult);
  return result;
}

}  // namespace thinmono
