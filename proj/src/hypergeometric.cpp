#include "thinmono/hypergeometric.hpp"

#include <numeric>
#include <utility>

#include "thinmono/errors.hpp"

namespace thinmono {

std::string Signature::to_string() const {
  return "(" + std::to_string(plus) + "," + std::to_string(minus) + ")";
}

std::string Order::to_string() const {
  return finite ? std::to_string(*finite) : std::string("infinite");
}

SquareMatrix5 companion_matrix(const IntPolynomial& p) {
  if (p.degree() != static_cast<int>(kDim) || !p.is_monic()) {
    throw DegreeError("companion matrix needs a monic polynomial of degree 5, got " + p.to_string());
  }
  SquareMatrix5 m;
  for (std::size_t i = 1; i < kDim; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < kDim; ++i) m(i, kDim - 1) = -Rational(p.coeff(i));
  return m;
}

std::vector<Rational> characteristic_polynomial(const SquareMatrix5& m) {
  // c_n = 1; M_k = M M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(M M_k)/k
  std::vector<Rational> c(kDim + 1, Rational(0));
  c[kDim] = 1;
  SquareMatrix5 mk;  // M_0 = 0
  for (std::size_t k = 1; k <= kDim; ++k) {
    mk = m * mk + c[kDim - k + 1] * SquareMatrix5::identity();
    const SquareMatrix5 prod = m * mk;
    Rational trace = 0;
    for (std::size_t i = 0; i < kDim; ++i) trace += prod(i, i);
    c[kDim - k] = -trace / static_cast<long>(k);
  }
  return c;
}

namespace {

constexpr std::size_t kSymUnknowns = kDim * (kDim + 1) / 2;

std::size_t sym_index(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  // row-major upper triangle
  return i * kDim - i * (i - 1) / 2 + (j - i);
}

void append_invariance_rows(const SquareMatrix5& g, std::vector<std::vector<Rational>>& rows) {
  // (g^T Q g - Q)_{kl} = sum_{ij} g_ik Q_ij g_jl - Q_kl
  for (std::size_t k = 0; k < kDim; ++k) {
    for (std::size_t l = k; l < kDim; ++l) {
      std::vector<Rational> row(kSymUnknowns, Rational(0));
      for (std::size_t i = 0; i < kDim; ++i) {
        if (g(i, k) == 0) continue;
        for (std::size_t j = 0; j < kDim; ++j) row[sym_index(i, j)] += g(i, k) * g(j, l);
      }
      row[sym_index(k, l)] -= 1;
      rows.push_back(std::move(row));
    }
  }
}

}  // namespace

SquareMatrix5 invariant_form(const SquareMatrix5& a, const SquareMatrix5& b) {
  std::vector<std::vector<Rational>> rows;
  append_invariance_rows(a, rows);
  append_invariance_rows(b, rows);
  const auto basis = null_space(std::move(rows), kSymUnknowns);
  if (basis.size() != 1) {
    throw FormNotUniqueError("invariant symmetric forms span dimension " +
                             std::to_string(basis.size()) + ", expected 1");
  }
  BigInt den_lcm = 1;
  for (const auto& x : basis[0]) den_lcm = lcm(den_lcm, x.get_den());
  BigInt g = 0;
  for (const auto& x : basis[0]) g = gcd(g, BigInt(x * den_lcm));
  SquareMatrix5 q;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) q(i, j) = basis[0][sym_index(i, j)] * den_lcm / g;
  }
  for (std::size_t i = 0; i < kDim * kDim; ++i) {
    const Rational& x = q(i / kDim, i % kDim);
    if (x == 0) continue;
    if (x < 0) q = -q;
    break;
  }
  return q;
}

Signature signature(const SquareMatrix5& q) {
  std::vector<std::vector<Rational>> m(kDim, std::vector<Rational>(kDim));
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) m[i][j] = q(i, j);
  }
  int plus = 0;
  int minus = 0;
  while (!m.empty()) {
    const std::size_t n = m.size();
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i][i] != 0) {
        piv = i;
        break;
      }
    }
    std::vector<std::vector<Rational>> next;
    if (piv != n) {
      const Rational d = m[piv][piv];
      (d > 0 ? plus : minus)++;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == piv) continue;
        std::vector<Rational> row;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == piv) continue;
          row.push_back(m[i][j] - m[i][piv] * m[piv][j] / d);
        }
        next.push_back(std::move(row));
      }
    } else {
      // Zero diagonal: split off a hyperbolic plane [[0, c], [c, 0]].
      std::size_t r = n;
      std::size_t s = n;
      for (std::size_t i = 0; i < n && r == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (m[i][j] != 0) {
            r = i;
            s = j;
            break;
          }
        }
      }
      if (r == n) throw DegenerateFormError("quadratic form has rank < 5");
      ++plus;
      ++minus;
      const Rational c = m[r][s];
      // Schur complement with K^-1 = [[0, 1/c], [1/c, 0]]
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r || i == s) continue;
        std::vector<Rational> row;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == r || j == s) continue;
          row.push_back(m[i][j] - (m[i][r] * m[s][j] + m[i][s] * m[r][j]) / c);
        }
        next.push_back(std::move(row));
      }
    }
    m = std::move(next);
  }
  if (plus < minus) std::swap(plus, minus);
  return {plus, minus};
}

unsigned unipotency_cap() {
  unsigned l = 1;
  for (unsigned n = 1; n <= 60; ++n) {
    if (euler_phi(n) <= kDim) l = std::lcm(l, n);
  }
  return 2 * l;
}

unsigned unipotency_index(const SquareMatrix5& b) {
  const unsigned cap = unipotency_cap();
  unsigned bound = cap;
  const auto chi = characteristic_polynomial(b);
  bool integral = true;
  std::vector<BigInt> coeffs;
  for (const auto& c : chi) {
    integral = integral && c.get_den() == 1;
    coeffs.push_back(c.get_num());
  }
  if (integral) {
    const auto fac = factor_cyclotomic(IntPolynomial(coeffs));
    if (fac.complete) {
      unsigned l = 1;
      for (const auto& [n, mult] : fac.factors) l = std::lcm(l, n);
      bound = std::min(l, cap);
    }
  }
  const SquareMatrix5 id = SquareMatrix5::identity();
  const SquareMatrix5 zero;
  SquareMatrix5 power = id;
  for (unsigned i = 1; i <= bound; ++i) {
    power = power * b;
    if ((power - id).pow(kDim) == zero) return i;
  }
  throw IndexNotFoundError("no unipotent power of B up to " + std::to_string(bound));
}

Order order_of(const SquareMatrix5& b) {
  const unsigned eta = unipotency_index(b);
  if (b.pow(eta) == SquareMatrix5::identity()) return Order{eta};
  return Order{};
}

std::optional<unsigned> minus_identity_power(const SquareMatrix5& b) {
  const Order ord = order_of(b);
  if (!ord.is_finite()) return std::nullopt;
  const SquareMatrix5 minus_id = -SquareMatrix5::identity();
  SquareMatrix5 power = SquareMatrix5::identity();
  for (unsigned k = 1; k <= *ord.finite; ++k) {
    power = power * b;
    if (power == minus_id) return k;
  }
  return std::nullopt;
}

Generators make_generators(const ParamVector& alpha, const ParamVector& beta) {
  Generators gens;
  gens.f = polynomial_from_params(alpha);
  gens.g = polynomial_from_params(beta);
  if (!coprime_roots(gens.f, gens.g)) {
    throw CoprimalityError("f = " + gens.f.to_string() + " and g = " + gens.g.to_string() +
                           " share a root");
  }
  gens.a = companion_matrix(gens.f);
  gens.b = companion_matrix(gens.g);
  gens.t = gens.b * gens.a.inverse();
  return gens;
}

}  // namespace thinmono
