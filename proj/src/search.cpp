#include "thinmono/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "thinmono/errors.hpp"

namespace thinmono {

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::Diverged: return "diverged";
  }
  return "unknown";
}

namespace {

using DMatrix = std::array<std::array<double, kDim>, kDim>;
using DVector = std::array<double, kDim>;

DMatrix to_double(const SquareMatrix5& m) {
  DMatrix d{};
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) d[i][j] = m(i, j).get_d();
  }
  return d;
}

// Largest entry scaled to magnitude one. The scaling is exact so that
// cancellation in later squarings does not matter.
DMatrix normalized(const SquareMatrix5& m) {
  Rational scale = 0;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) scale = std::max(scale, Rational(abs(m(i, j))));
  }
  DMatrix d{};
  if (scale == 0) return d;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) d[i][j] = Rational(m(i, j) / scale).get_d();
  }
  return d;
}

std::size_t max_bits(const SquareMatrix5& m) {
  std::size_t bits = 0;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      bits = std::max({bits, mpz_sizeinbase(m(i, j).get_num_mpz_t(), 2),
                       mpz_sizeinbase(m(i, j).get_den_mpz_t(), 2)});
    }
  }
  return bits;
}

double norm(const DVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Unit direction of the largest column, sign fixed so that the entry of
// largest magnitude is positive. Sets `rank_one` when every column is
// parallel to it.
DVector dominant_column(const DMatrix& m, bool& rank_one) {
  std::size_t best = 0;
  double best_norm = -1.0;
  std::array<DVector, kDim> cols{};
  for (std::size_t j = 0; j < kDim; ++j) {
    for (std::size_t i = 0; i < kDim; ++i) cols[j][i] = m[i][j];
    const double n = norm(cols[j]);
    if (n > best_norm) {
      best_norm = n;
      best = j;
    }
  }
  DVector v = cols[best];
  if (best_norm == 0.0) {
    rank_one = false;
    return v;
  }
  for (double& x : v) x /= best_norm;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < kDim; ++i) {
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  }
  if (v[arg] < 0) {
    for (double& x : v) x = -x;
  }
  rank_one = true;
  for (const auto& c : cols) {
    double proj = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) proj += c[i] * v[i];
    DVector resid{};
    for (std::size_t i = 0; i < kDim; ++i) resid[i] = c[i] - proj * v[i];
    if (norm(resid) > 1e-9 * best_norm) rank_one = false;
  }
  return v;
}

// Continued-fraction approximation of x with bounded depth.
Rational rationalize(double x, unsigned depth) {
  constexpr double kTolerance = 1e-12;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (unsigned k = 0; k < depth; ++k) {
    const double a = std::floor(rest);
    const BigInt ai(a);
    BigInt p2 = ai * p1 + p0;
    BigInt q2 = ai * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = p1.get_d() / q1.get_d();
    if (std::abs(approx - x) < kTolerance) break;
    const double frac = rest - a;
    if (frac < kTolerance) break;
    rest = 1.0 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

DVector direction(const IntVector5& v) {
  DVector d{};
  for (std::size_t i = 0; i < kDim; ++i) d[i] = v[i].get_d();
  const double n = norm(d);
  if (n > 0.0) {
    for (double& x : d) x /= n;
  }
  return d;
}

DVector centroid(const Cone& c) {
  DVector sum{};
  for (const auto& r : c.rays()) {
    const DVector d = direction(r);
    for (std::size_t i = 0; i < kDim; ++i) sum[i] += d[i];
  }
  const double n = norm(sum);
  if (n > 0.0) {
    for (double& x : sum) x /= n;
  }
  return sum;
}

DVector apply_unit(const DMatrix& m, const DVector& v) {
  DVector out{};
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) out[i] += m[i][j] * v[j];
  }
  const double n = norm(out);
  if (n > 0.0) {
    for (double& x : out) x /= n;
  }
  return out;
}

double dot(const DVector& a, const DVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) s += a[i] * b[i];
  return s;
}

IntVector5 image(const SquareMatrix5& g, const IntVector5& r) {
  return primitive_integer(g * to_rational(r));
}

// One ping-pong rule: every g * source must lie in a single target cone.
// Rays that do not are pulled back through the element of the best-aligned
// target and collected as additions to F.
struct Expansion {
  std::vector<IntVector5> additions;
  std::size_t violations = 0;
};

void pull_back(const std::vector<TableCone>& sources, const SquareMatrix5& g,
               const std::vector<TableCone>& targets, const Cone& f,
               const std::optional<SquareMatrix5>& e, Expansion& out) {
  const DVector f_center = centroid(f);
  std::vector<SquareMatrix5> inverses;
  std::vector<DMatrix> inverses_d;
  for (const auto& t : targets) {
    inverses.push_back(t.element.inverse());
    inverses_d.push_back(to_double(inverses.back()));
  }
  for (const auto& src : sources) {
    const Cone k = transform(src.cone, g);
    if (k.rays().empty()) continue;
    if (std::any_of(targets.begin(), targets.end(),
                    [&](const TableCone& t) { return is_subcone(k, t.cone); })) {
      continue;
    }
    ++out.violations;
    const DVector k_center = centroid(k);
    std::size_t best = 0;
    double best_score = -2.0;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const double score = dot(apply_unit(inverses_d[j], k_center), f_center);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    const TableCone& target = targets[best];
    for (const auto& r : k.rays()) {
      if (target.cone.contains(r)) continue;
      const IntVector5 back = image(inverses[best], r);
      out.additions.push_back(back);
      if (target.based_on_f0 && e) out.additions.push_back(image(-*e, back));
    }
  }
}

std::size_t count_overlaps(const std::vector<TableCone>& x, const std::vector<TableCone>& y) {
  std::size_t n = 0;
  for (const auto& cx : x) {
    if (cx.cone.dim() < static_cast<int>(kDim)) continue;
    for (const auto& cy : y) {
      if (cy.cone.dim() < static_cast<int>(kDim)) continue;
      if (intersect(cx.cone, cy.cone).dim() == static_cast<int>(kDim)) ++n;
    }
  }
  return n;
}

struct RoundResult {
  Expansion expansion;
  std::size_t overlaps = 0;
  bool applicable = true;
  std::string detail;
};

RoundResult finite_round(const SquareMatrix5& b, const SquareMatrix5& t, const Cone& f) {
  RoundResult rr;
  FiniteTable table;
  try {
    table = build_table_finite(b, f);
  } catch (const Error& e) {
    rr.applicable = false;
    rr.detail = e.what();
    return rr;
  }
  if (f.dim() == static_cast<int>(kDim)) rr.overlaps = count_overlaps(table.x, table.y);
  pull_back(table.y, t, table.x, f, std::nullopt, rr.expansion);
  return rr;
}

RoundResult infinite_round(const SquareMatrix5& b, const SquareMatrix5& t, const SquareMatrix5& e,
                           const Cone& f) {
  RoundResult rr;
  const InfiniteTable table = build_table_infinite(b, e, f);
  std::vector<TableCone> y = table.y_plus;
  y.insert(y.end(), table.y_minus.begin(), table.y_minus.end());
  if (f.dim() == static_cast<int>(kDim)) rr.overlaps = count_overlaps(table.x, y);

  pull_back(y, t, table.x, f, e, rr.expansion);
  std::vector<TableCone> sources = table.x;
  sources.insert(sources.end(), table.y_plus.begin(), table.y_plus.end());
  pull_back(sources, b, table.y_plus, f, e, rr.expansion);
  sources = table.x;
  sources.insert(sources.end(), table.y_minus.begin(), table.y_minus.end());
  pull_back(sources, b.inverse(), table.y_minus, f, e, rr.expansion);
  return rr;
}

using Rows = std::vector<std::vector<Rational>>;

Rows rows_of(const SquareMatrix5& m) {
  Rows r(kDim, std::vector<Rational>(kDim));
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) r[i][j] = m(i, j);
  }
  return r;
}

Rows stacked(std::initializer_list<SquareMatrix5> ms) {
  Rows out;
  for (const auto& m : ms) {
    const Rows r = rows_of(m);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

bool is_zero(const Vector5& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// c with v = c * w, assuming v and w are parallel and w nonzero.
Rational ratio(const Vector5& v, const Vector5& w) {
  for (std::size_t i = 0; i < kDim; ++i) {
    if (w[i] != 0) return v[i] / w[i];
  }
  return 0;
}

Vector5 combination(std::initializer_list<std::pair<Rational, Vector5>> terms) {
  Vector5 out{};
  for (const auto& [c, v] : terms) {
    for (std::size_t i = 0; i < kDim; ++i) out[i] += c * v[i];
  }
  return out;
}

// Vector v in the null space of `rows` with `level * v` parallel to `target`,
// scaled so that level * v = target.
std::optional<Vector5> flag_vector(const Rows& rows, const SquareMatrix5& level, const Vector5& target) {
  for (const auto& k : null_space(rows, kDim)) {
    Vector5 v;
    std::copy(k.begin(), k.end(), v.begin());
    const Vector5 image = level * v;
    if (is_zero(image)) continue;
    const Rational c = ratio(image, target);
    if (c == 0 || !is_zero(combination({{1, image}, {-c, target}}))) continue;
    return combination({{1 / c, v}});
  }
  return std::nullopt;
}

bool single_unipotent_block(const SquareMatrix5& n) {
  for (unsigned k = 1; k <= kDim; ++k) {
    if (n.pow(k).rank() != kDim - k) return false;
  }
  return true;
}

// Generators of a candidate F for finite-order B when TB and TB^-1 are
// unipotent with one Jordan block: the two fixed rays, flag vectors inside the
// fixed hyperplane of T, and one offset vector per fixed ray.
std::optional<std::vector<IntVector5>> flag_generators(const SquareMatrix5& b, const SquareMatrix5& t,
                                                       const Rational& along, const Rational& across) {
  const SquareMatrix5 id = SquareMatrix5::identity();
  const SquareMatrix5 n = t * b - id;
  const SquareMatrix5 m = t * b.inverse() - id;
  if (!single_unipotent_block(n) || !single_unipotent_block(m)) return std::nullopt;

  Vector5 s{};
  for (const auto& k : null_space(rows_of(n), kDim)) std::copy(k.begin(), k.end(), s.begin());
  const Vector5 c = m.pow(4) * s;  // limit direction of (TB^-1)^k s
  if (is_zero(s) || is_zero(c)) return std::nullopt;

  const SquareMatrix5 fix = t - id;
  const auto r2 = flag_vector(stacked({n.pow(2), fix}), n, s);
  const auto r3 = flag_vector(stacked({n.pow(3), fix}), n.pow(2), s);
  const auto r4 = flag_vector(stacked({n.pow(4), m.pow(4), fix}), n.pow(3), s);
  if (!r2 || !r3 || !r4) return std::nullopt;
  const Rational side = ratio(m.pow(2) * *r3, c) > 0 ? 1 : -1;

  std::vector<IntVector5> out;
  for (const Vector5& v : {s, c, *r2, combination({{1, *r4}, {1, *r2}, {1, *r3}}),
                           combination({{1, *r3}, {along, s}, {across, *r2}}),
                           combination({{side, *r3}, {along, c}, {across, *r2}})}) {
    out.push_back(primitive_integer(v));
  }
  return out;
}

// Closes the cone of `rays` under the maps (-1)^(i+1) T B^i.
std::optional<Cone> close_under_maps(std::vector<IntVector5> rays, const std::vector<SquareMatrix5>& maps,
                                     const SearchConfig& config) {
  for (unsigned round = 0; round < config.max_rounds; ++round) {
    const Cone f = Cone::from_rays(rays);
    if (f.rays().size() > config.seed_rays_cap) return std::nullopt;
    std::vector<IntVector5> added;
    for (const auto& r : f.rays()) {
      for (const auto& g : maps) {
        const IntVector5 y = image(g, r);
        if (!f.contains(y)) added.push_back(y);
      }
    }
    if (added.empty()) return f;
    rays = f.rays();
    rays.insert(rays.end(), added.begin(), added.end());
  }
  return std::nullopt;
}

std::optional<SearchOutcome> flag_search(const SquareMatrix5& b, const SquareMatrix5& t, unsigned order,
                                         const SearchConfig& config) {
  std::vector<SquareMatrix5> maps;
  const SquareMatrix5 minus_id = -SquareMatrix5::identity();
  SquareMatrix5 p = SquareMatrix5::identity();
  for (unsigned i = 1; i < order; ++i) {
    p = p * b;
    if (p == minus_id) continue;
    maps.push_back(i % 2 == 1 ? t * p : -(t * p));
  }
  unsigned attempt = 0;
  for (int along : {1, 2, 4}) {
    for (int across : {0, 1, 2}) {
      const auto gens = flag_generators(b, t, along, across);
      if (!gens) return std::nullopt;
      ++attempt;
      const auto f = close_under_maps(*gens, maps, config);
      if (!f) continue;
      VerificationReport report = verify_finite_order(b, t, *f);
      if (!report.passed()) continue;
      SearchOutcome outcome;
      outcome.status = SearchStatus::Found;
      outcome.rounds_used = attempt;
      outcome.cone = *f;
      outcome.report = std::move(report);
      outcome.detail = "flag closure";
      return outcome;
    }
  }
  return std::nullopt;
}

}  // namespace

Cone seed_cone(const SquareMatrix5& b, const SquareMatrix5& t, const SearchConfig& config) {
  constexpr std::size_t kMaxBits = 1 << 14;
  SquareMatrix5 power = t * b;
  // Once the direction settles, the error still decays only like 1/N for
  // unipotent TB; keep squaring so that it drops below double precision.
  constexpr int kPolishSquarings = 24;
  DVector previous{};
  bool have_previous = false;
  int polish = -1;  // squarings left once settled; -1 while unsettled
  for (unsigned it = 0; it < config.power_iterations; ++it) {
    power = power * power;
    if (max_bits(power) > kMaxBits) {
      throw DivergenceError("entries of (TB)^N grow exponentially");
    }
    const DMatrix m = normalized(power);
    bool rank_one = false;
    const DVector v = dominant_column(m, rank_one);
    if (rank_one && have_previous) {
      DVector diff{};
      for (std::size_t i = 0; i < kDim; ++i) diff[i] = v[i] - previous[i];
      if (polish < 0 && norm(diff) < 1e-12) polish = kPolishSquarings;
      if (polish >= 0 && polish-- == 0) {
        double largest = 0.0;
        for (double x : v) largest = std::max(largest, std::abs(x));
        Vector5 q;
        for (std::size_t i = 0; i < kDim; ++i) {
          q[i] = rationalize(v[i] / largest, config.rationalization_depth);
        }
        const IntVector5 ray = primitive_integer(q);
        return Cone::from_rays(std::vector<IntVector5>{ray});
      }
    }
    if (!rank_one) polish = -1;
    previous = v;
    have_previous = rank_one;
  }
  throw DivergenceError("powers of TB do not converge to a rank-one limit within " +
                        std::to_string(config.power_iterations) + " squarings");
}

SearchOutcome expand_cone(const SquareMatrix5& b, const SquareMatrix5& t, const Cone& start,
                          Mode mode, const SearchConfig& config) {
  SearchOutcome outcome;
  outcome.cone = start;
  std::optional<SquareMatrix5> e;
  if (mode == Mode::InfiniteOrder) {
    try {
      e = reversal_involution(b, t);
    } catch (const Error& err) {
      outcome.status = SearchStatus::Exhausted;
      outcome.detail = err.what();
      return outcome;
    }
  }

  Cone f = start;
  std::size_t previous_overlaps = 0;  // 0: previous round had none
  for (unsigned round = 0;; ++round) {
    outcome.rounds_used = round;
    outcome.cone = f;
    VerificationReport report = mode == Mode::FiniteOrder ? verify_finite_order(b, t, f)
                                                          : verify_infinite_order(b, t, f);
    if (report.passed()) {
      outcome.status = SearchStatus::Found;
      outcome.report = std::move(report);
      return outcome;
    }
    if (round >= config.max_rounds) {
      outcome.status = SearchStatus::Exhausted;
      outcome.detail = "round cap reached";
      return outcome;
    }

    RoundResult rr = mode == Mode::FiniteOrder ? finite_round(b, t, f)
                                               : infinite_round(b, t, *e, f);
    if (!rr.applicable) {
      outcome.status = SearchStatus::Exhausted;
      outcome.detail = rr.detail;
      return outcome;
    }
    if (rr.overlaps > 0) {
      // Expansion only enlarges cones, so overlaps never go away.
      if (previous_overlaps > 0 && rr.overlaps >= previous_overlaps) {
        outcome.status = SearchStatus::Diverged;
        outcome.detail = std::to_string(rr.overlaps) + " overlapping cone pairs";
        return outcome;
      }
      previous_overlaps = rr.overlaps;
    } else {
      previous_overlaps = 0;
    }

    std::vector<IntVector5> rays = f.rays();
    bool grew = false;
    for (const auto& r : rr.expansion.additions) {
      if (f.contains(r)) continue;
      rays.push_back(r);
      grew = true;
    }
    if (!grew) {
      outcome.status = rr.overlaps > 0 ? SearchStatus::Diverged : SearchStatus::Exhausted;
      outcome.detail = "no ray to add; failing step " +
                       (report.failure() ? report.failure()->name : std::string("?"));
      return outcome;
    }
    f = Cone::from_rays(rays);
    if (f.rays().size() > config.seed_rays_cap) {
      outcome.status = SearchStatus::Exhausted;
      outcome.detail = "ray cap exceeded (" + std::to_string(f.rays().size()) + " rays)";
      outcome.rounds_used = round + 1;
      outcome.cone = f;
      return outcome;
    }
  }
}

SearchOutcome search_certificate(const SquareMatrix5& b, const SquareMatrix5& t,
                                 const SearchConfig& config) {
  bool finite = false;
  try {
    finite = order_of(b).is_finite();
  } catch (const Error& err) {
    SearchOutcome outcome;
    outcome.detail = err.what();
    return outcome;
  }
  Cone seed;
  try {
    seed = seed_cone(b, t, config);
  } catch (const DivergenceError& err) {
    SearchOutcome outcome;
    outcome.status = SearchStatus::Diverged;
    outcome.detail = err.what();
    return outcome;
  }
  if (finite) {
    if (auto found = flag_search(b, t, *order_of(b).finite, config)) return *found;
  }
  return expand_cone(b, t, seed, finite ? Mode::FiniteOrder : Mode::InfiniteOrder, config);
}

}  // namespace thinmono
