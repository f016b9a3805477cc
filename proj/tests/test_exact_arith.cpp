#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "thinmono/errors.hpp"
#include "thinmono/hypergeometric.hpp"

using namespace thinmono;

namespace {

IntPolynomial poly(std::initializer_list<long> coeffs) {
  std::vector<BigInt> c;
  for (long v : coeffs) c.emplace_back(v);
  return IntPolynomial(c);
}

const IntPolynomial kX = IntPolynomial::monomial(1);
const IntPolynomial kOne = IntPolynomial::constant(1);

SquareMatrix5 diag(std::array<long, 5> d) {
  SquareMatrix5 m;
  for (std::size_t i = 0; i < 5; ++i) m(i, i) = d[i];
  return m;
}

std::array<Rational, 5> last_column(const SquareMatrix5& m) {
  std::array<Rational, 5> c;
  for (std::size_t i = 0; i < 5; ++i) c[i] = m(i, 4);
  return c;
}

}  // namespace

TEST_CASE("rationals are kept reduced with positive denominator") {
  const Rational r = parse_rational("-6/4");
  CHECK(r.get_num() == -3);
  CHECK(r.get_den() == 2);
  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("7/7") == 1);
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rational("abc"), SchemaError);
  CHECK_THROWS_AS(parse_rational(""), SchemaError);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == kX - kOne);
  CHECK(cyclotomic(2) == kX + kOne);
  // x^8 - 1 = (x^4 - 1)(x^4 + 1) and x^4 - 1 = Phi1 Phi2 Phi4.
  const IntPolynomial x8m1 = IntPolynomial::monomial(8) - kOne;
  const auto [q, r] = divmod_monic(x8m1, cyclotomic(1) * cyclotomic(2) * cyclotomic(4));
  CHECK(r.is_zero());
  CHECK(cyclotomic(8) == q);
  CHECK(cyclotomic(8) == poly({1, 0, 0, 0, 1}));
  CHECK(cyclotomic(12) == poly({1, 0, -1, 0, 1}));
  CHECK(cyclotomic(10) == poly({1, -1, 1, -1, 1}));

  SUBCASE("product over divisors is x^n - 1") {
    for (unsigned n = 1; n <= 30; ++n) {
      IntPolynomial prod = kOne;
      for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0) prod = prod * cyclotomic(d);
      }
      CHECK(prod == IntPolynomial::monomial(n) - kOne);
      CHECK(cyclotomic(n).degree() == static_cast<int>(euler_phi(n)));
    }
  }
}

TEST_CASE("parameter vectors") {
  SUBCASE("reduced mod 1 and sorted") {
    const ParamVector p({Rational(3, 2), Rational(0), Rational(-1, 2), Rational(1), Rational(5, 2)});
    for (const auto& e : p.entries()) {
      CHECK(e >= 0);
      CHECK(e < 1);
    }
    CHECK(std::is_sorted(p.entries().begin(), p.entries().end()));
  }
  SUBCASE("Galois closure is enforced") {
    CHECK_THROWS_AS(ParamVector({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(2, 3),
                                 Rational(2, 3)}),
                    GaloisClosureError);
    CHECK_THROWS_AS(ParamVector({Rational(0), Rational(0), Rational(0), Rational(0), Rational(1, 4)}),
                    GaloisClosureError);
    CHECK_NOTHROW(ParamVector({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 3),
                               Rational(2, 3)}));
  }
  SUBCASE("polynomials") {
    CHECK(polynomial_from_params(params({"0", "0", "0", "0", "0"})) == (kX - kOne).pow(5));
    CHECK(polynomial_from_params(params({"1/2", "1/8", "3/8", "5/8", "7/8"})) ==
          (kX + kOne) * poly({1, 0, 0, 0, 1}));
    CHECK(polynomial_from_params(params({"0", "0", "0", "1/3", "2/3"})) ==
          (kX - kOne).pow(3) * poly({1, 1, 1}));
  }
}

TEST_CASE("companion matrices") {
  SUBCASE("(x-1)^5") {
    const SquareMatrix5 c = companion_matrix((kX - kOne).pow(5));
    const std::array<Rational, 5> expected{1, -5, 10, -10, 5};
    CHECK(last_column(c) == expected);
    for (std::size_t i = 1; i < 5; ++i) CHECK(c(i, i - 1) == 1);
  }
  SUBCASE("x^5") {
    const std::array<Rational, 5> zero{};
    CHECK(last_column(companion_matrix(IntPolynomial::monomial(5))) == zero);
  }
  SUBCASE("Phi2 Phi8") {
    const std::array<Rational, 5> expected{-1, -1, 0, 0, -1};
    CHECK(last_column(companion_matrix(poly({1, 1, 0, 0, 1, 1}))) == expected);
  }
  SUBCASE("wrong degree") {
    CHECK_THROWS_AS(companion_matrix(poly({1, 0, 0, 0, 1})), DegreeError);
    CHECK_THROWS_AS(companion_matrix(poly({1, 0, 0, 0, 0, 2})), DegreeError);
  }
  SUBCASE("characteristic polynomial of a companion is the polynomial") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<BigInt> c(6);
      for (int i = 0; i < 5; ++i) c[i] = coef(rng);
      c[5] = 1;
      const IntPolynomial p(c);
      const auto chi = characteristic_polynomial(companion_matrix(p));
      REQUIRE(chi.size() == 6);
      for (int i = 0; i < 6; ++i) CHECK(chi[i] == Rational(c[i]));
    }
  }
}

TEST_CASE("coprimality of root sets") {
  CHECK(coprime_roots((kX - kOne).pow(5), (kX + kOne).pow(5)));
  CHECK_FALSE(coprime_roots((kX - kOne).pow(5), (kX - kOne) * cyclotomic(3)));
  CHECK(coprime_roots((kX - kOne).pow(3) * cyclotomic(3), cyclotomic(2) * cyclotomic(8)));
}

TEST_CASE("matrix inverse and rank") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> entry(-4, 4);
  int invertible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    SquareMatrix5 m;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = entry(rng);
    }
    if (!m.is_invertible()) {
      CHECK_THROWS_AS(m.inverse(), SingularTransformError);
      CHECK(m.rank() < 5);
      continue;
    }
    ++invertible;
    CHECK(m * m.inverse() == SquareMatrix5::identity());
    CHECK(m.inverse() * m == SquareMatrix5::identity());
    CHECK(m.rank() == 5);
    CHECK((m * m).determinant() == m.determinant() * m.determinant());
  }
  CHECK(invertible > 50);
}

TEST_CASE("invariant forms and signatures") {
  SUBCASE("diagonal forms") {
    CHECK(signature(diag({1, 1, 1, -1, -1})) == Signature{3, 2});
    CHECK(signature(diag({-1, -1, -1, -1, 1})) == Signature{4, 1});
    CHECK_THROWS_AS(signature(diag({1, 1, 1, -1, 0})), DegenerateFormError);
  }
  SUBCASE("zero diagonal uses the hyperbolic split") {
    SquareMatrix5 q = SquareMatrix5::reversal();
    CHECK(signature(q) == Signature{3, 2});
  }
  SUBCASE("scaling does not change the normalized signature") {
    const SquareMatrix5 q = diag({2, -1, 3, 1, -5});
    CHECK(signature(Rational(7, 3) * q) == signature(q));
    CHECK(signature(Rational(-7, 3) * q) == signature(q));
  }
  SUBCASE("A = B = I leaves every symmetric form invariant") {
    CHECK_THROWS_AS(invariant_form(SquareMatrix5::identity(), SquareMatrix5::identity()),
                    FormNotUniqueError);
  }
  SUBCASE("case 7 generators") {
    const Generators g = make_generators(params({"0", "0", "0", "0", "0"}),
                                         params({"1/2", "1/8", "3/8", "5/8", "7/8"}));
    const SquareMatrix5 q = invariant_form(g.a, g.b);
    CHECK(q == q.transpose());
    CHECK(g.a.transpose() * q * g.a == q);
    CHECK(g.b.transpose() * q * g.b == q);
    CHECK(q.is_integral());
    CHECK(signature(q) == Signature{3, 2});
  }
  SUBCASE("coprimality is required") {
    CHECK_THROWS_AS(make_generators(params({"0", "0", "0", "1/3", "2/3"}),
                                    params({"1/2", "1/2", "1/2", "1/3", "2/3"})),
                    CoprimalityError);
  }
}

TEST_CASE("unipotency index, order and -I powers") {
  const SquareMatrix5 id = SquareMatrix5::identity();
  const SquareMatrix5 b1 = companion_matrix((kX + kOne).pow(5));
  const SquareMatrix5 b7 = companion_matrix(cyclotomic(2) * cyclotomic(8));
  const SquareMatrix5 b8 = companion_matrix(cyclotomic(2) * cyclotomic(10));

  CHECK(unipotency_index(id) == 1);
  CHECK(unipotency_index(b1) == 2);
  CHECK(unipotency_index(b7) == 8);
  CHECK(unipotency_cap() == 240);

  CHECK(order_of(id) == Order{1});
  CHECK(order_of(b7) == Order{8});
  CHECK_FALSE(order_of(b1).is_finite());
  CHECK(b7.pow(8) == id);
  CHECK(b1.pow(2) != id);

  CHECK(minus_identity_power(b8) == 5u);
  CHECK(b8.pow(5) == -id);
  CHECK_FALSE(minus_identity_power(b7).has_value());
  CHECK(minus_identity_power(-id) == 1u);
  CHECK_FALSE(minus_identity_power(b1).has_value());

  SUBCASE("non-root-of-unity eigenvalues hit the cap") {
    SquareMatrix5 m = id;
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 1;
    CHECK_THROWS_AS(unipotency_index(m), IndexNotFoundError);
  }
}

TEST_CASE("catalog-wide properties of the generators") {
  for (const auto& c : shipped_catalog()) {
    CAPTURE(c.id);
    const Generators g = make_generators(c.alpha, c.beta);
    const SquareMatrix5 id = SquareMatrix5::identity();
    CHECK(g.f.is_monic());
    CHECK(g.f.degree() == 5);
    CHECK(abs(g.f.coeff(0)) == 1);
    CHECK(abs(g.b.determinant()) == 1);
    const SquareMatrix5 q = invariant_form(g.a, g.b);
    CHECK(g.a.transpose() * q * g.a == q);
    CHECK(g.b.transpose() * q * g.b == q);
    CHECK(g.t.transpose() * q * g.t == q);
    CHECK(g.t * g.t == id);
    CHECK(g.t == g.b * g.a.inverse());

    // Brute-force order: first power equal to I, up to the unipotency cap.
    std::optional<unsigned> brute;
    SquareMatrix5 p = id;
    for (unsigned k = 1; k <= unipotency_cap(); ++k) {
      p = p * g.b;
      if (p == id) {
        brute = k;
        break;
      }
    }
    CHECK(order_of(g.b).finite == brute);
  }
}
