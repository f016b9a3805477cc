#include <doctest.h>

#include "test_support.hpp"
#include "thinmono/errors.hpp"
#include "thinmono/pingpong.hpp"

using namespace thinmono;

namespace {

const Step* find_step(const VerificationReport& r, const std::string& name) {
  for (const auto& s : r.steps) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool closed_under_negation(const std::vector<Cone>& cones) {
  const SquareMatrix5 minus = -SquareMatrix5::identity();
  for (const auto& c : cones) {
    if (std::find(cones.begin(), cones.end(), transform(c, minus)) == cones.end()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("shipped certificates verify") {
  for (const char* id : {"o32-07", "o32-01", "o41-02"}) {
    CAPTURE(id);
    const VerificationReport r = verify_case(shipped_case(id));
    CHECK(r.passed());
    CHECK(r.failure() == nullptr);
  }
  CHECK(verify_case(shipped_case("o32-07")).mode == Mode::FiniteOrder);
  CHECK(verify_case(shipped_case("o32-01")).mode == Mode::InfiniteOrder);
}

TEST_CASE("finite-order tables") {
  SUBCASE("case 7") {
    const CaseSpec& c = shipped_case("o32-07");
    const Generators g = make_generators(c.alpha, c.beta);
    const FiniteTable t = build_table_finite(g.b, certificate_cone(c));
    CHECK(t.x.size() == 2);
    CHECK(t.y.size() == 14);
    CHECK(closed_under_negation(cones_of(t.x)));
    CHECK(closed_under_negation(cones_of(t.y)));
    for (const auto& e : t.y) CHECK(transform(certificate_cone(c), e.element) == e.cone);
  }
  SUBCASE("case 8 drops the powers equal to -I") {
    const CaseSpec& c = shipped_case("o32-08");
    const Generators g = make_generators(c.alpha, c.beta);
    const FiniteTable t = build_table_finite(g.b, certificate_cone(c));
    CHECK(t.y.size() == 16);
    CHECK(closed_under_negation(cones_of(t.y)));
  }
  SUBCASE("B of infinite order is rejected") {
    const CaseSpec& c = shipped_case("o32-01");
    const Generators g = make_generators(c.alpha, c.beta);
    CHECK_THROWS_AS(build_table_finite(g.b, certificate_cone(c)), NotFiniteOrderError);
  }
}

TEST_CASE("degenerate inputs fail with a named step") {
  const CaseSpec& c = shipped_case("o32-07");
  const Generators g = make_generators(c.alpha, c.beta);

  SUBCASE("B = -I leaves Y empty") {
    const VerificationReport r =
        verify_finite_order(-SquareMatrix5::identity(), g.t, certificate_cone(c));
    CHECK_FALSE(r.passed());
    REQUIRE(r.failure() != nullptr);
    CHECK(r.failure()->name == "y_nonempty");
  }
  SUBCASE("a single ray is not full-dimensional") {
    const Cone ray = Cone::from_rays(std::vector<IntVector5>{iv({1, 0, 0, 0, 0})});
    const VerificationReport r = verify(g.b, g.t, ray);
    REQUIRE(r.failure() != nullptr);
    CHECK(r.failure()->name == "f_full_dimensional");
  }
  SUBCASE("the whole space overlaps its images") {
    const Cone full = Cone::from_inequalities(std::vector<IntVector5>{});
    const VerificationReport r = verify(g.b, g.t, full);
    REQUIRE(r.failure() != nullptr);
    CHECK(r.failure()->name == "disjoint");
    CHECK_FALSE(r.failure()->witness.empty());
  }
  SUBCASE("T must be an involution") {
    const VerificationReport r = verify(g.b, g.b, certificate_cone(c));
    REQUIRE(r.failure() != nullptr);
    CHECK(r.failure()->name == "t_involution");
  }
}

TEST_CASE("reversal involution identities") {
  for (const char* id : {"o32-01", "o32-10"}) {
    CAPTURE(id);
    const CaseSpec& c = shipped_case(id);
    const Generators g = make_generators(c.alpha, c.beta);
    const SquareMatrix5 e = reversal_involution(g.b, g.t);
    const SquareMatrix5 id5 = SquareMatrix5::identity();
    CHECK(e == g.b * SquareMatrix5::reversal());
    CHECK(e * e == id5);
    CHECK(e * g.b * e.inverse() * g.b == id5);
    CHECK(e * g.t * e.inverse() * g.t == id5);

    const InfiniteTable t = build_table_infinite(g.b, e, certificate_cone(c));
    CHECK(t.f0 == intersect(certificate_cone(c), transform(certificate_cone(c), -e)));
    CHECK(t.x.size() == 2);
    CHECK(t.y_minus.size() == t.y_plus.size());
    for (std::size_t i = 0; i < t.y_plus.size(); ++i) {
      CHECK(t.y_minus[i].cone == transform(t.y_plus[i].cone, e));
    }
  }
  SquareMatrix5 reflection = SquareMatrix5::identity();
  reflection(0, 0) = -1;
  CHECK_THROWS_AS(reversal_involution(SquareMatrix5::identity(), reflection), InvolutionPropertyError);
}

TEST_CASE("every mutation of every certificate fails") {
  for (const auto& c : certified_cases()) {
    for (Mutation m : {Mutation::ApplyB, Mutation::NegateFirstRay, Mutation::NegateT}) {
      CAPTURE(c.id);
      CAPTURE(to_string(m));
      CHECK_FALSE(verify_mutated(c, m).passed());
    }
  }
}

TEST_CASE("reports") {
  const CaseSpec& c = shipped_case("o32-08");
  const VerificationReport a = verify_case(c);
  const VerificationReport b = verify_case(c);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_json()["verdict"] == "pass");
  CHECK(a.to_json()["presentation"] == "amalgamated_pm_identity");
  CHECK(a.to_json()["minus_identity_power"] == 5);
  CHECK_FALSE(a.to_json().dump().find("seconds") != std::string::npos);
  CHECK(a.to_json(true)["steps"][0].contains("seconds"));
  CHECK(find_step(a, "disjoint") != nullptr);
  CHECK(find_step(a, "t_maps_y_into_x")->passed);
}

TEST_CASE("presentation") {
  const CaseSpec& c7 = shipped_case("o32-07");
  const CaseSpec& c8 = shipped_case("o32-08");
  CHECK(classify_presentation(make_generators(c7.alpha, c7.beta).b) == Presentation::FreeProduct);
  CHECK(classify_presentation(make_generators(c8.alpha, c8.beta).b) ==
        Presentation::AmalgamatedOverPlusMinusI);
  CHECK(classify_presentation(-SquareMatrix5::identity()) == Presentation::AmalgamatedOverPlusMinusI);
  const CaseSpec& c1 = shipped_case("o32-01");
  CHECK(classify_presentation(make_generators(c1.alpha, c1.beta).b) == Presentation::FreeProduct);
}
