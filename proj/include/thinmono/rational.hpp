#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace thinmono {

// Arbitrary precision scalars. mpq_class keeps every value canonical
// (reduced, positive denominator) after each arithmetic operation.
using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "p/q", "p" or "-p/q". Throws SchemaError on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

inline int sign(const BigInt& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace thinmono
