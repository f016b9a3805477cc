#include "thinmono/pingpong.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <utility>

#include "thinmono/errors.hpp"

namespace thinmono {

std::string to_string(Mode mode) {
  return mode == Mode::FiniteOrder ? "finite" : "infinite";
}

std::string to_string(Presentation presentation) {
  return presentation == Presentation::FreeProduct ? "free_product" : "amalgamated_pm_identity";
}

std::vector<Cone> cones_of(const std::vector<TableCone>& entries) {
  std::vector<Cone> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.cone);
  return out;
}

namespace {

const SquareMatrix5& identity5() {
  static const SquareMatrix5 id = SquareMatrix5::identity();
  return id;
}

std::string power_label(const std::string& prefix, unsigned i, bool negative,
                        const std::string& base) {
  std::string s = negative ? "-" : "";
  s += prefix;
  s += i == 1 ? "B " : "B^" + std::to_string(i) + " ";
  return s + base;
}

TableCone make_entry(const Cone& base, const SquareMatrix5& g, bool on_f0, std::string label) {
  return TableCone{transform(base, g), g, on_f0, std::move(label)};
}

using Check = std::function<std::pair<bool, std::string>()>;

// Runs one named check, appends it to the report, and returns whether it
// passed.
bool run_step(VerificationReport& report, std::string name, const Check& check) {
  const auto start = std::chrono::steady_clock::now();
  Step step;
  step.name = std::move(name);
  try {
    auto [ok, witness] = check();
    step.passed = ok;
    step.witness = std::move(witness);
  } catch (const Error& e) {
    step.passed = false;
    step.witness = e.what();
  }
  step.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.steps.push_back(std::move(step));
  return report.steps.back().passed;
}

std::pair<bool, std::string> sign_symmetric(const std::vector<TableCone>& half,
                                            const std::string& name) {
  const auto cones = cones_of(half);
  for (const auto& entry : half) {
    const Cone neg = transform(entry.cone, -identity5());
    if (std::find(cones.begin(), cones.end(), neg) == cones.end()) {
      return {false, "-(" + entry.label + ") missing from " + name};
    }
  }
  return {true, {}};
}

std::pair<bool, std::string> disjoint_check(const std::vector<TableCone>& x,
                                            const std::vector<TableCone>& y) {
  for (const auto& cx : x) {
    for (const auto& cy : y) {
      const Cone meet = intersect(cx.cone, cy.cone);
      if (meet.dim() == static_cast<int>(kDim)) {
        return {false, cx.label + " and " + cy.label + " overlap; interior ray " +
                           to_string(meet.interior_ray())};
      }
    }
  }
  return {true, {}};
}

// Every image g*C (C in sources) lies in a single cone of targets.
std::pair<bool, std::string> containment_check(const std::vector<TableCone>& sources,
                                               const SquareMatrix5& g, const std::string& g_name,
                                               const std::vector<TableCone>& targets) {
  const auto target_cones = cones_of(targets);
  for (const auto& src : sources) {
    const Cone image = transform(src.cone, g);
    if (std::any_of(target_cones.begin(), target_cones.end(),
                    [&](const Cone& d) { return is_subcone(image, d); })) {
      continue;
    }
    std::string witness = g_name + "(" + src.label + ") lies in no single target cone";
    for (const auto& r : image.rays()) {
      const bool covered = std::any_of(target_cones.begin(), target_cones.end(),
                                       [&](const Cone& d) { return d.contains(r); });
      if (!covered) {
        witness += "; ray " + to_string(r) + " is outside every target";
        break;
      }
    }
    return {false, witness};
  }
  return {true, {}};
}

void classify_into(VerificationReport& report, const SquareMatrix5& b) {
  try {
    report.eta = unipotency_index(b);
    report.order_of_b = order_of(b);
    report.minus_identity_power = minus_identity_power(b);
    report.presentation = report.minus_identity_power ? Presentation::AmalgamatedOverPlusMinusI
                                                      : Presentation::FreeProduct;
  } catch (const Error&) {
    report.eta.reset();
  }
}

bool common_prechecks(VerificationReport& report, const SquareMatrix5& t) {
  if (!run_step(report, "t_involution", [&]() -> std::pair<bool, std::string> {
        if (t * t == identity5()) return {true, {}};
        return {false, "T^2 != I"};
      })) {
    return false;
  }
  return run_step(report, "t_reflection", [&]() -> std::pair<bool, std::string> {
    const auto r = (t - identity5()).rank();
    if (r == 1) return {true, {}};
    return {false, "rank(T - I) = " + std::to_string(r)};
  });
}

bool seed_check(VerificationReport& report, const Cone& f) {
  return run_step(report, "f_full_dimensional", [&]() -> std::pair<bool, std::string> {
    if (f.dim() == static_cast<int>(kDim)) return {true, {}};
    return {false, "dim F = " + std::to_string(f.dim())};
  });
}

}  // namespace

bool VerificationReport::passed() const {
  return !steps.empty() &&
         std::all_of(steps.begin(), steps.end(), [](const Step& s) { return s.passed; });
}

const Step* VerificationReport::failure() const {
  for (const auto& s : steps) {
    if (!s.passed) return &s;
  }
  return nullptr;
}

nlohmann::json VerificationReport::to_json(bool with_timings) const {
  nlohmann::json j;
  j["case_id"] = case_id;
  j["mode"] = to_string(mode);
  j["eta"] = eta ? nlohmann::json(*eta) : nlohmann::json(nullptr);
  j["order_of_b"] = order_of_b.to_string();
  j["presentation"] = to_string(presentation);
  j["minus_identity_power"] =
      minus_identity_power ? nlohmann::json(*minus_identity_power) : nlohmann::json(nullptr);
  j["verdict"] = passed() ? "pass" : "fail";
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json sj{{"name", s.name}, {"passed", s.passed}, {"witness", s.witness}};
    if (with_timings) sj["seconds"] = s.seconds;
    steps_json.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps_json);
  return j;
}

FiniteTable build_table_finite(const SquareMatrix5& b, const Cone& f) {
  const unsigned eta = unipotency_index(b);
  if (b.pow(eta) != identity5()) throw NotFiniteOrderError("B^eta != I");
  FiniteTable table;
  table.x.push_back(TableCone{f, identity5(), false, "F"});
  table.x.push_back(make_entry(f, -identity5(), false, "-F"));
  const SquareMatrix5 minus_id = -identity5();
  SquareMatrix5 power = identity5();
  for (unsigned i = 1; i < eta; ++i) {
    power = power * b;
    if (power == minus_id) continue;
    table.y.push_back(make_entry(f, power, false, power_label("", i, false, "F")));
    table.y.push_back(make_entry(f, -power, false, power_label("", i, true, "F")));
  }
  return table;
}

InfiniteTable build_table_infinite(const SquareMatrix5& b, const SquareMatrix5& e, const Cone& f) {
  InfiniteTable table;
  table.f0 = intersect(f, transform(f, -e));
  table.x.push_back(TableCone{table.f0, identity5(), true, "F0"});
  table.x.push_back(make_entry(table.f0, -identity5(), true, "-F0"));
  const unsigned eta = unipotency_index(b);
  SquareMatrix5 power = identity5();
  for (unsigned i = 1; i <= eta; ++i) {
    power = power * b;
    for (const bool negative : {false, true}) {
      const SquareMatrix5 g = negative ? -power : power;
      table.y_plus.push_back(make_entry(f, g, false, power_label("", i, negative, "F")));
    }
  }
  for (const auto& entry : table.y_plus) {
    const std::string label = entry.label[0] == '-' ? "-E " + entry.label.substr(1)
                                                    : "E " + entry.label;
    table.y_minus.push_back(TableCone{transform(entry.cone, e), e * entry.element, false, label});
  }
  return table;
}

SquareMatrix5 reversal_involution(const SquareMatrix5& b, const SquareMatrix5& t) {
  const SquareMatrix5 e = b * SquareMatrix5::reversal();
  const SquareMatrix5& id = identity5();
  if (e * e != id) throw InvolutionPropertyError("E^2 != I");
  const SquareMatrix5 e_inv = e.inverse();
  if (e * b * e_inv * b != id) throw InvolutionPropertyError("E B E^-1 B != I");
  if (e * t * e_inv * t != id) throw InvolutionPropertyError("E T E^-1 T != I");
  return e;
}

Presentation classify_presentation(const SquareMatrix5& b) {
  return minus_identity_power(b) ? Presentation::AmalgamatedOverPlusMinusI
                                 : Presentation::FreeProduct;
}

VerificationReport verify_finite_order(const SquareMatrix5& b, const SquareMatrix5& t,
                                       const Cone& f, const std::string& case_id) {
  VerificationReport report;
  report.case_id = case_id;
  report.mode = Mode::FiniteOrder;
  classify_into(report, b);

  if (!common_prechecks(report, t)) return report;
  if (!run_step(report, "b_finite_order", [&]() -> std::pair<bool, std::string> {
        const unsigned eta = unipotency_index(b);
        if (b.pow(eta) == identity5()) return {true, {}};
        return {false, "B^" + std::to_string(eta) + " is unipotent but not I"};
      })) {
    return report;
  }
  if (!seed_check(report, f)) return report;

  const FiniteTable table = build_table_finite(b, f);
  if (!run_step(report, "y_nonempty", [&]() -> std::pair<bool, std::string> {
        if (!table.y.empty()) return {true, {}};
        return {false, "every power of B is +-I"};
      })) {
    return report;
  }
  if (!run_step(report, "sign_symmetric", [&]() -> std::pair<bool, std::string> {
        auto r = sign_symmetric(table.x, "X");
        if (!r.first) return r;
        return sign_symmetric(table.y, "Y");
      })) {
    return report;
  }
  if (!run_step(report, "disjoint", [&] { return disjoint_check(table.x, table.y); })) {
    return report;
  }
  run_step(report, "t_maps_y_into_x", [&] { return containment_check(table.y, t, "T", table.x); });
  return report;
}

VerificationReport verify_infinite_order(const SquareMatrix5& b, const SquareMatrix5& t,
                                         const Cone& f, const std::string& case_id) {
  VerificationReport report;
  report.case_id = case_id;
  report.mode = Mode::InfiniteOrder;
  classify_into(report, b);

  if (!common_prechecks(report, t)) return report;
  if (!seed_check(report, f)) return report;

  SquareMatrix5 e;
  if (!run_step(report, "e_involution_identities", [&]() -> std::pair<bool, std::string> {
        e = reversal_involution(b, t);
        return {true, {}};
      })) {
    return report;
  }
  InfiniteTable table;
  if (!run_step(report, "f0_full_dimensional", [&]() -> std::pair<bool, std::string> {
        table = build_table_infinite(b, e, f);
        if (table.f0.dim() == static_cast<int>(kDim)) return {true, {}};
        return {false, "dim F0 = " + std::to_string(table.f0.dim())};
      })) {
    return report;
  }
  std::vector<TableCone> y = table.y_plus;
  y.insert(y.end(), table.y_minus.begin(), table.y_minus.end());

  if (!run_step(report, "sign_symmetric", [&]() -> std::pair<bool, std::string> {
        auto r = sign_symmetric(table.x, "X");
        if (!r.first) return r;
        return sign_symmetric(y, "Y");
      })) {
    return report;
  }
  if (!run_step(report, "disjoint", [&] { return disjoint_check(table.x, y); })) return report;
  if (!run_step(report, "t_maps_y_into_x",
                [&] { return containment_check(y, t, "T", table.x); })) {
    return report;
  }
  std::vector<TableCone> x_and_plus = table.x;
  x_and_plus.insert(x_and_plus.end(), table.y_plus.begin(), table.y_plus.end());
  if (!run_step(report, "b_maps_x_and_yplus_into_yplus",
                [&] { return containment_check(x_and_plus, b, "B", table.y_plus); })) {
    return report;
  }
  std::vector<TableCone> x_and_minus = table.x;
  x_and_minus.insert(x_and_minus.end(), table.y_minus.begin(), table.y_minus.end());
  run_step(report, "binv_maps_x_and_yminus_into_yminus",
           [&] { return containment_check(x_and_minus, b.inverse(), "B^-1", table.y_minus); });
  return report;
}

VerificationReport verify(const SquareMatrix5& b, const SquareMatrix5& t, const Cone& f,
                          const std::string& case_id) {
  bool finite = false;
  try {
    finite = order_of(b).is_finite();
  } catch (const Error&) {
    finite = false;
  }
  return finite ? verify_finite_order(b, t, f, case_id) : verify_infinite_order(b, t, f, case_id);
}

VerificationReport verify(const PingPongCertificate& cert) {
  return verify(cert.b, cert.t, cert.seed, cert.case_id);
}

}  // namespace thinmono
