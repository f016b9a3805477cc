#pragma once

// Independent reference for cone membership and intersection, built only on
// Fourier-Motzkin elimination over homogeneous integer systems. Deliberately
// shares no code with the double description kernel.

#include <algorithm>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace fm {

using Int = mpz_class;
using Vec = std::vector<Int>;

// a . z <= 0, a . z < 0 when strict, a . z = 0 when equality.
struct Constraint {
  Vec a;
  bool strict = false;
  bool equality = false;
  bool operator<(const Constraint& o) const {
    if (a != o.a) return a < o.a;
    return strict != o.strict ? strict < o.strict : equality < o.equality;
  }
};

using System = std::vector<Constraint>;

inline Constraint normalized(Constraint c) {
  Int g = 0;
  for (const auto& x : c.a) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : c.a) x /= g;
  }
  return c;
}

inline bool all_zero(const Vec& a, std::size_t from = 0) {
  return std::all_of(a.begin() + static_cast<long>(from), a.end(), [](const Int& x) { return x == 0; });
}

inline Vec combine(const Int& p, const Vec& x, const Int& q, const Vec& y) {
  Vec out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = p * x[k] + q * y[k];
  return out;
}

// Eliminates variable j; the result no longer mentions it. An equality
// mentioning j is used for substitution, otherwise inequalities are paired.
inline System eliminate(const System& s, std::size_t j) {
  const auto pivot = std::find_if(s.begin(), s.end(),
                                  [j](const Constraint& c) { return c.equality && c.a[j] != 0; });
  std::set<Constraint> out;
  if (pivot != s.end()) {
    const Int pj = pivot->a[j];
    for (const auto& c : s) {
      if (&c == &*pivot) continue;
      Constraint d = c;
      if (c.a[j] != 0) {
        // keep the sign of c's multiplier positive so inequalities stay valid
        const Int m = pj > 0 ? pj : Int(-pj);
        const Int q = pj > 0 ? Int(-c.a[j]) : c.a[j];
        d.a = combine(m, c.a, q, pivot->a);
      }
      out.insert(normalized(d));
    }
  } else {
    std::vector<const Constraint*> pos, neg;
    for (const auto& c : s) {
    if (c.a[j] > 0) {
      pos.push_back(&c);
    } else if (c.a[j] < 0) {
      neg.push_back(&c);
      } else {
        out.insert(normalized(c));
      }
    }
    for (const auto* p : pos) {
      for (const auto* n : neg) {
        Constraint c;
        c.a = combine(-n->a[j], p->a, p->a[j], n->a);
        c.strict = p->strict || n->strict;
        out.insert(normalized(c));
      }
    }
  }
  // Drop trivially true rows (0 <= 0, 0 = 0).
  System result;
  for (const auto& c : out) {
    if (all_zero(c.a) && !c.strict) continue;
    result.push_back(c);
  }
  return result;
}

// Feasibility of a homogeneous system: eliminates every variable and looks for
// a contradiction 0 < 0.
inline bool feasible(System s, std::size_t nvars) {
  for (std::size_t j = 0; j < nvars; ++j) s = eliminate(s, j);
  return std::none_of(s.begin(), s.end(), [](const Constraint& c) { return c.strict; });
}

inline void add_equal(System& s, const Vec& a) { s.push_back({a, false, true}); }

// v in cone(generators)?  Variables: lambda_1..lambda_k and a homogenizing t
// fixed positive, so that sum lambda_i g_i = t v with lambda >= 0, t > 0.
inline bool in_cone(const std::vector<Vec>& generators, const Vec& v) {
  const std::size_t k = generators.size();
  const std::size_t n = v.size();
  System s;
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k + 1, 0);
    for (std::size_t g = 0; g < k; ++g) row[g] = generators[g][i];
    row[k] = -v[i];
    add_equal(s, row);
  }
  for (std::size_t g = 0; g < k; ++g) {
    Vec row(k + 1, 0);
    row[g] = -1;
    s.push_back({row, false});
  }
  Vec t(k + 1, 0);
  t[k] = -1;
  s.push_back({t, true});
  return feasible(s, k + 1);
}

// Constraints in x alone describing cone(G) n cone(H), obtained by
// projecting out the multipliers.
inline System intersection_system(const std::vector<Vec>& g, const std::vector<Vec>& h, std::size_t n) {
  const std::size_t kg = g.size(), kh = h.size();
  const std::size_t nv = n + kg + kh;
  System s;
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(nv, 0);
    row[i] = -1;
    for (std::size_t j = 0; j < kg; ++j) row[n + j] = g[j][i];
    add_equal(s, row);
    Vec row2(nv, 0);
    row2[i] = -1;
    for (std::size_t j = 0; j < kh; ++j) row2[n + kg + j] = h[j][i];
    add_equal(s, row2);
  }
  for (std::size_t j = 0; j < kg + kh; ++j) {
    Vec row(nv, 0);
    row[n + j] = -1;
    s.push_back({row, false});
  }
  for (std::size_t j = n; j < nv; ++j) s = eliminate(s, j);
  for (auto& c : s) c.a.resize(n);
  return s;
}

inline bool satisfies(const System& s, const Vec& x) {
  for (const auto& c : s) {
    Int d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += c.a[i] * x[i];
    if (c.equality ? d != 0 : (d > 0 || (c.strict && d == 0))) return false;
  }
  return true;
}

// Does every x satisfying s also satisfy f . x >= 0?
inline bool implies(const System& s, const Vec& f, std::size_t n) {
  System t = s;
  t.push_back({f, true});  // f . x < 0 would be a counterexample
  return !feasible(t, n);
}

}  // namespace fm
