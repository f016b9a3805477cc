#include "thinmono/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "thinmono/errors.hpp"

namespace thinmono {

namespace {

BigInt dot(const IntVector5& a, const IntVector5& b) {
  BigInt acc = 0;
  for (std::size_t i = 0; i < kDim; ++i) acc += a[i] * b[i];
  return acc;
}

bool is_zero(const IntVector5& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

IntVector5 negated(const IntVector5& v) {
  IntVector5 out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = -v[i];
  return out;
}

// s * v - t * w, made primitive
IntVector5 combine(const BigInt& s, const IntVector5& v, const BigInt& t, const IntVector5& w) {
  IntVector5 out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = s * v[i] - t * w[i];
  return primitive_integer(out);
}

// Fixed-capacity bitset over constraint indices.
class IndexSet {
 public:
  explicit IndexSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void set_first(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) set(i);
  }
  IndexSet operator&(const IndexSet& o) const {
    IndexSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool subset_of(const IndexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct TrackedRay {
  IntVector5 v;
  IndexSet zeros;  // processed constraints tight at v
};

std::vector<IntVector5> echelon_basis(const std::vector<IntVector5>& vectors) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : vectors) rows.emplace_back(v.begin(), v.end());
  const auto basis = row_echelon_basis(std::move(rows), kDim);
  std::vector<IntVector5> out;
  for (const auto& b : basis) {
    Vector5 v;
    std::copy(b.begin(), b.end(), v.begin());
    IntVector5 p = primitive_integer(v);
    for (const auto& x : p) {
      if (x == 0) continue;
      if (x < 0) p = negated(p);
      break;
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

DoubleDescription canonicalize(std::vector<IntVector5> lineality, std::vector<IntVector5> rays) {
  DoubleDescription out;
  if (!lineality.empty()) out.lineality = echelon_basis(lineality);
  // Orthogonal basis of the lineality space for projection.
  std::vector<Vector5> ortho;
  for (const auto& l : out.lineality) {
    Vector5 u = to_rational(l);
    for (const auto& w : ortho) {
      Rational num = 0, den = 0;
      for (std::size_t i = 0; i < kDim; ++i) {
        num += u[i] * w[i];
        den += w[i] * w[i];
      }
      const Rational f = num / den;
      for (std::size_t i = 0; i < kDim; ++i) u[i] -= f * w[i];
    }
    ortho.push_back(std::move(u));
  }
  for (const auto& r : rays) {
    Vector5 v = to_rational(r);
    for (const auto& w : ortho) {
      Rational num = 0, den = 0;
      for (std::size_t i = 0; i < kDim; ++i) {
        num += v[i] * w[i];
        den += w[i] * w[i];
      }
      const Rational f = num / den;
      for (std::size_t i = 0; i < kDim; ++i) v[i] -= f * w[i];
    }
    IntVector5 p = primitive_integer(v);
    if (!is_zero(p)) out.rays.push_back(std::move(p));
  }
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

}  // namespace

DoubleDescription double_description(std::span<const IntVector5> inequalities) {
  std::vector<IntVector5> constraints;
  for (const auto& a : inequalities) {
    if (!is_zero(a)) constraints.push_back(primitive_integer(a));
  }
  {
    std::vector<IntVector5> seen;
    std::vector<IntVector5> kept;
    for (auto& a : constraints) {
      if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
      seen.push_back(a);
      kept.push_back(a);
    }
    constraints = std::move(kept);
  }
  const std::size_t m = constraints.size();

  std::vector<IntVector5> lineality;
  for (std::size_t i = 0; i < kDim; ++i) {
    IntVector5 e;
    for (auto& x : e) x = 0;
    e[i] = 1;
    lineality.push_back(e);
  }
  std::vector<TrackedRay> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const IntVector5& a = constraints[k];

    auto pivot = std::find_if(lineality.begin(), lineality.end(),
                              [&](const IntVector5& l) { return dot(a, l) != 0; });
    if (pivot != lineality.end()) {
      IntVector5 l0 = *pivot;
      lineality.erase(pivot);
      BigInt s0 = dot(a, l0);
      if (s0 < 0) {
        l0 = negated(l0);
        s0 = -s0;
      }
      for (auto& l : lineality) {
        const BigInt d = dot(a, l);
        if (d != 0) l = combine(s0, l, d, l0);
      }
      for (auto& r : rays) {
        const BigInt d = dot(a, r.v);
        if (d != 0) r.v = combine(s0, r.v, d, l0);
        r.zeros.set(k);
      }
      TrackedRay fresh{l0, IndexSet(m)};
      fresh.zeros.set_first(k);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<BigInt> values;
    values.reserve(rays.size());
    for (const auto& r : rays) values.push_back(dot(a, r.v));

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const int s = sgn(values[i]);
      if (s > 0) pos.push_back(i);
      if (s < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (values[i] == 0) rays[i].zeros.set(k);
      }
      continue;
    }

    // Two rays are adjacent iff no third ray is tight on every constraint
    // tight at both, and enough constraints are tight to span a 2-face.
    const std::size_t face_rank = kDim - lineality.size();
    const std::size_t min_common = face_rank >= 2 ? face_rank - 2 : 0;
    std::vector<TrackedRay> next;
    for (const auto p : pos) {
      for (const auto n : neg) {
        IndexSet common = rays[p].zeros & rays[n].zeros;
        if (common.count() < min_common) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        // values[p] > 0 > values[n]: both coefficients positive
        TrackedRay fresh{combine(values[p], rays[n].v, values[n], rays[p].v), std::move(common)};
        fresh.zeros.set(k);
        next.push_back(std::move(fresh));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (values[i] > 0) {
        next.push_back(std::move(rays[i]));
      } else if (values[i] == 0) {
        rays[i].zeros.set(k);
        next.push_back(std::move(rays[i]));
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVector5> ray_vectors;
  ray_vectors.reserve(rays.size());
  for (auto& r : rays) ray_vectors.push_back(std::move(r.v));
  return canonicalize(std::move(lineality), std::move(ray_vectors));
}

Cone::Cone() {
  // {0}: no rays; every coordinate is an equation.
  for (std::size_t i = 0; i < kDim; ++i) {
    IntVector5 e;
    for (auto& x : e) x = 0;
    e[i] = 1;
    facets_.push_back(e);
    facets_.push_back(negated(e));
  }
  std::sort(facets_.begin(), facets_.end());
}

Cone Cone::assemble(DoubleDescription primal, DoubleDescription dual) {
  Cone c;
  c.rays_ = std::move(primal.rays);
  for (const auto& l : primal.lineality) {
    c.rays_.push_back(l);
    c.rays_.push_back(negated(l));
  }
  std::sort(c.rays_.begin(), c.rays_.end());
  c.facets_ = std::move(dual.rays);
  for (const auto& e : dual.lineality) {
    c.facets_.push_back(e);
    c.facets_.push_back(negated(e));
  }
  std::sort(c.facets_.begin(), c.facets_.end());
  c.lineality_dim_ = static_cast<int>(primal.lineality.size());
  c.dim_ = static_cast<int>(kDim - dual.lineality.size());
  return c;
}

Cone Cone::from_rays(std::span<const IntVector5> generators) {
  DoubleDescription dual = double_description(generators);
  std::vector<IntVector5> inequalities = dual.rays;
  for (const auto& e : dual.lineality) {
    inequalities.push_back(e);
    inequalities.push_back(negated(e));
  }
  DoubleDescription primal = double_description(inequalities);
  return assemble(std::move(primal), std::move(dual));
}

Cone Cone::from_inequalities(std::span<const IntVector5> inequalities) {
  DoubleDescription primal = double_description(inequalities);
  std::vector<IntVector5> generators = primal.rays;
  for (const auto& l : primal.lineality) {
    generators.push_back(l);
    generators.push_back(negated(l));
  }
  DoubleDescription dual = double_description(generators);
  return assemble(std::move(primal), std::move(dual));
}

Cone Cone::from_columns(const std::vector<std::vector<BigInt>>& rows) {
  if (rows.size() != kDim) throw SchemaError("generator matrix must have 5 rows");
  const std::size_t ncols = rows.front().size();
  std::vector<IntVector5> gens;
  for (std::size_t j = 0; j < ncols; ++j) {
    IntVector5 v;
    for (std::size_t i = 0; i < kDim; ++i) {
      if (rows[i].size() != ncols) throw SchemaError("generator matrix rows differ in length");
      v[i] = rows[i][j];
    }
    gens.push_back(std::move(v));
  }
  return from_rays(gens);
}

bool Cone::contains(const IntVector5& v) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const IntVector5& f) { return dot(f, v) >= 0; });
}

IntVector5 Cone::interior_ray() const {
  IntVector5 sum;
  for (auto& x : sum) x = 0;
  for (const auto& r : rays_) {
    for (std::size_t i = 0; i < kDim; ++i) sum[i] += r[i];
  }
  return primitive_integer(sum);
}

std::string to_string(const IntVector5& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < kDim; ++i) out << (i ? "," : "") << v[i].get_str();
  out << ")";
  return out.str();
}

std::string Cone::to_string() const {
  std::ostringstream out;
  out << "Cone(dim=" << dim_ << ", rays=[";
  for (std::size_t i = 0; i < rays_.size(); ++i) out << (i ? ", " : "") << thinmono::to_string(rays_[i]);
  out << "])";
  return out.str();
}

Cone cone_from_rays(std::span<const IntVector5> generators) { return Cone::from_rays(generators); }

int dim(const Cone& c) { return c.dim(); }

Cone intersect(const Cone& c, const Cone& d) {
  std::vector<IntVector5> inequalities = c.facets();
  inequalities.insert(inequalities.end(), d.facets().begin(), d.facets().end());
  return Cone::from_inequalities(inequalities);
}

bool contains_ray(const Cone& c, const IntVector5& v) { return c.contains(v); }

bool is_subcone(const Cone& c, const Cone& d) {
  return std::all_of(c.rays().begin(), c.rays().end(),
                     [&](const IntVector5& r) { return d.contains(r); });
}

Cone transform(const Cone& c, const SquareMatrix5& l) {
  if (!l.is_invertible()) throw SingularTransformError("transform by a singular matrix");
  std::vector<IntVector5> images;
  images.reserve(c.rays().size());
  for (const auto& r : c.rays()) images.push_back(primitive_integer(l * to_rational(r)));
  return Cone::from_rays(images);
}

ConeSet unique_cones(ConeSet cones) {
  ConeSet out;
  for (auto& c : cones) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

ConeSet transform_set(const ConeSet& s, const SquareMatrix5& l) {
  if (!l.is_invertible()) throw SingularTransformError("transform by a singular matrix");
  ConeSet out;
  out.reserve(s.size());
  for (const auto& c : s) out.push_back(transform(c, l));
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_overlap(const ConeSet& s1,
                                                                 const ConeSet& s2) {
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (s1[i].dim() < static_cast<int>(kDim)) continue;
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (s2[j].dim() < static_cast<int>(kDim)) continue;
      if (intersect(s1[i], s2[j]).dim() == static_cast<int>(kDim)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> first_uncontained(const ConeSet& s1, const ConeSet& s2) {
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const bool covered = std::any_of(s2.begin(), s2.end(),
                                     [&](const Cone& d) { return is_subcone(s1[i], d); });
    if (!covered) return i;
  }
  return std::nullopt;
}

bool are_disjoint_open(const ConeSet& s1, const ConeSet& s2) { return !first_overlap(s1, s2); }

bool contained_in_set(const ConeSet& s1, const ConeSet& s2) { return !first_uncontained(s1, s2); }

bool every_target_contains_some(const ConeSet& s1, const ConeSet& s2) {
  return std::all_of(s2.begin(), s2.end(), [&](const Cone& d) {
    return std::any_of(s1.begin(), s1.end(), [&](const Cone& c) { return is_subcone(c, d); });
  });
}

}  // namespace thinmono
