#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thinmono/matrix.hpp"

namespace thinmono {

/// Lineality basis plus extreme rays (modulo lineality) of the cone
/// {x : <a, x> >= 0 for every a in inequalities}, computed by the double
/// description method. Output is canonical: lineality basis in reduced echelon
/// form, rays projected onto the orthogonal complement of the lineality
/// space, everything primitive and sorted.
struct DoubleDescription {
  std::vector<IntVector5> lineality;
  std::vector<IntVector5> rays;
};
DoubleDescription double_description(std::span<const IntVector5> inequalities);

/// Closed rational polyhedral cone in R^5 carrying both descriptions.
///
/// `rays()` lists the extreme rays together with +/- each lineality basis
/// vector; `facets()` lists the facet normals together with +/- each basis
/// vector of the orthogonal complement of the linear span. The cone is
/// {x : <f, x> >= 0 for all f in facets()} = cone(rays()). Both lists are
/// canonical, so two cones are equal iff their ray lists are equal.
class Cone {
 public:
  /// The trivial cone {0}.
  Cone();

  /// Cone generated by the given vectors. Zero vectors are ignored.
  static Cone from_rays(std::span<const IntVector5> generators);
  /// Cone generated by the columns of a 5-row integer matrix.
  static Cone from_columns(const std::vector<std::vector<BigInt>>& rows);
  /// Cone {x : <a, x> >= 0} for every given a.
  static Cone from_inequalities(std::span<const IntVector5> inequalities);

  const std::vector<IntVector5>& rays() const { return rays_; }
  const std::vector<IntVector5>& facets() const { return facets_; }
  int lineality_dim() const { return lineality_dim_; }
  int dim() const { return dim_; }

  bool contains(const IntVector5& v) const;
  /// Sum of the generators; an interior point when dim() == 5.
  IntVector5 interior_ray() const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.rays_ == b.rays_; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.rays_ < b.rays_; }

  std::string to_string() const;

 private:
  static Cone assemble(DoubleDescription primal, DoubleDescription dual);

  std::vector<IntVector5> rays_;
  std::vector<IntVector5> facets_;
  int lineality_dim_ = 0;
  int dim_ = 0;
};

/// Closures of the open cones making up one half of a ping-pong table.
using ConeSet = std::vector<Cone>;

Cone cone_from_rays(std::span<const IntVector5> generators);
int dim(const Cone& c);
Cone intersect(const Cone& c, const Cone& d);
bool contains_ray(const Cone& c, const IntVector5& v);
bool is_subcone(const Cone& c, const Cone& d);
/// Image L*C. Throws SingularTransformError if det L = 0.
Cone transform(const Cone& c, const SquareMatrix5& l);

/// Removes duplicates, keeping first occurrences in order.
ConeSet unique_cones(ConeSet cones);
ConeSet transform_set(const ConeSet& s, const SquareMatrix5& l);

/// First pair (i, j) with dim(S1[i] n S2[j]) == 5, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_overlap(const ConeSet& s1,
                                                                 const ConeSet& s2);
/// Index of the first cone of S1 not contained in any single cone of S2.
std::optional<std::size_t> first_uncontained(const ConeSet& s1, const ConeSet& s2);

/// For all C in S1, D in S2: the open cones are disjoint.
bool are_disjoint_open(const ConeSet& s1, const ConeSet& s2);
/// For all C in S1 there is D in S2 with C a subcone of D.
bool contained_in_set(const ConeSet& s1, const ConeSet& s2);
/// Reverse quantifier order: every D in S2 contains some C in S1. Not a
/// containment test; used to compare both readings on certificate data.
bool every_target_contains_some(const ConeSet& s1, const ConeSet& s2);

std::string to_string(const IntVector5& v);

}  // namespace thinmono
