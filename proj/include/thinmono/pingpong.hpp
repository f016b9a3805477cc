#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinmono/cone.hpp"
#include "thinmono/hypergeometric.hpp"

namespace thinmono {

enum class Mode { FiniteOrder, InfiniteOrder };
enum class Presentation { FreeProduct, AmalgamatedOverPlusMinusI };

std::string to_string(Mode mode);
std::string to_string(Presentation presentation);

/// Seed cone and generators of one case.
struct PingPongCertificate {
  Cone seed;
  SquareMatrix5 b, t;
  std::string case_id;
};

/// A cone of a ping-pong table together with the group element g and base
/// cone it came from (cone = g * base, base being F or F0).
struct TableCone {
  Cone cone;
  SquareMatrix5 element;
  bool based_on_f0 = false;
  std::string label;
};

std::vector<Cone> cones_of(const std::vector<TableCone>& entries);

/// X = {F, -F}, Y = {+-B^i F : 1 <= i < eta, B^i != -I}.
struct FiniteTable {
  std::vector<TableCone> x, y;
};
/// Throws NotFiniteOrderError if B^eta != I.
FiniteTable build_table_finite(const SquareMatrix5& b, const Cone& f);

/// X = {F0, -F0} with F0 = F n (-E)F, Y+ = {+-B^i F : 1 <= i <= eta},
/// Y- = E Y+.
struct InfiniteTable {
  Cone f0;
  std::vector<TableCone> x, y_plus, y_minus;
};
InfiniteTable build_table_infinite(const SquareMatrix5& b, const SquareMatrix5& e, const Cone& f);

struct Step {
  std::string name;
  bool passed = false;
  std::string witness;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string case_id;
  Mode mode = Mode::FiniteOrder;
  std::optional<unsigned> eta;
  Order order_of_b;
  Presentation presentation = Presentation::FreeProduct;
  std::optional<unsigned> minus_identity_power;
  std::vector<Step> steps;

  bool passed() const;
  /// First failing step, if any.
  const Step* failure() const;
  /// Stable serialization; timings are omitted unless requested so that
  /// repeated runs produce identical bytes.
  nlohmann::json to_json(bool with_timings = false) const;
};

/// E = B J with J the coordinate reversal. Throws InvolutionPropertyError
/// unless E^2 = E B E^-1 B = E T E^-1 T = I.
SquareMatrix5 reversal_involution(const SquareMatrix5& b, const SquareMatrix5& t);

Presentation classify_presentation(const SquareMatrix5& b);

VerificationReport verify_finite_order(const SquareMatrix5& b, const SquareMatrix5& t,
                                       const Cone& f, const std::string& case_id = {});
VerificationReport verify_infinite_order(const SquareMatrix5& b, const SquareMatrix5& t,
                                         const Cone& f, const std::string& case_id = {});
/// Dispatches on the order of B.
VerificationReport verify(const SquareMatrix5& b, const SquareMatrix5& t, const Cone& f,
                          const std::string& case_id = {});
VerificationReport verify(const PingPongCertificate& cert);

}  // namespace thinmono
