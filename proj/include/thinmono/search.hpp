#pragma once

#include <optional>
#include <string>

#include "thinmono/pingpong.hpp"

namespace thinmono {

/// Heuristic search for a seed cone F. Everything here is a heuristic: a
/// failed search says nothing about whether a certificate exists.
struct SearchConfig {
  unsigned max_rounds = 64;
  /// Maximum continued-fraction depth when rationalizing the seed ray.
  unsigned rationalization_depth = 40;
  /// Maximum number of squarings in the power iteration.
  unsigned power_iterations = 200;
  /// The search gives up once F has more rays than this.
  unsigned seed_rays_cap = 64;
};

enum class SearchStatus { Found, Exhausted, Diverged };
std::string to_string(SearchStatus status);

struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  unsigned rounds_used = 0;
  std::optional<Cone> cone;                  // last cone tried; the certificate when Found
  std::optional<VerificationReport> report;  // passing report when Found
  std::string detail;
};

/// Dominant direction of lim (TB)^N, computed in floating point by repeated
/// squaring and rationalized by continued fractions. Returns the single-ray
/// cone it spans. Throws DivergenceError if the normalized powers do not
/// settle on a rank-one limit within config.power_iterations squarings.
Cone seed_cone(const SquareMatrix5& b, const SquareMatrix5& t, const SearchConfig& config = {});

/// Grows F by pulling back the parts of table images that land outside their
/// target cones, until the verifier for `mode` accepts or a cap is hit.
SearchOutcome expand_cone(const SquareMatrix5& b, const SquareMatrix5& t, const Cone& f, Mode mode,
                          const SearchConfig& config = {});

/// seed_cone followed by expand_cone, mode chosen from the order of B. For
/// finite-order B whose TB and TB^-1 are unipotent with a single Jordan block,
/// a flag closure is tried first: the fixed rays of TB and TB^-1 plus flag
/// vectors in the fixed hyperplane of T, closed under (-1)^(i+1) T B^i.
SearchOutcome search_certificate(const SquareMatrix5& b, const SquareMatrix5& t,
                                 const SearchConfig& config = {});

}  // namespace thinmono
