#include <doctest.h>

#include <fstream>
#include <random>

#include "test_support.hpp"
#include "thinmono/errors.hpp"

using namespace thinmono;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("thinmono-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
  }

 private:
  fs::path path_;
};

nlohmann::json case7_json() {
  std::ifstream in(fs::path(THINMONO_CATALOG_DIR) / "o32-07.json");
  return nlohmann::json::parse(in);
}

struct Golden {
  const char* id;
  std::size_t rays;
  long abs_sum;
};

// Column count and sum of absolute entries of each shipped certificate.
constexpr Golden kGolden[] = {
    {"o32-01", 14, 8978},  {"o32-02", 15, 4362},    {"o32-03", 17, 3936},  {"o32-04", 17, 3336},
    {"o32-05", 12, 1086},  {"o32-06", 15, 3054},    {"o32-07", 10, 558},   {"o32-08", 12, 930},
    {"o32-09", 12, 994},   {"o32-10", 16, 305794},  {"o32-11", 15, 58324}, {"o32-12", 16, 13704},
    {"o41-01", 11, 146},   {"o41-02", 11, 98},      {"o41-03", 13, 144},   {"o41-04", 13, 178},
    {"o41-05", 11, 166},   {"o41-06", 15, 932},     {"o41-07", 25, 15446}, {"o41-08", 17, 1014},
    {"o41-09", 19, 1930},
};

}  // namespace

TEST_CASE("shipped catalog") {
  const auto& cases = shipped_catalog();
  CHECK(cases.size() == 29);
  CHECK(std::is_sorted(cases.begin(), cases.end(),
                       [](const CaseSpec& a, const CaseSpec& b) { return a.id < b.id; }));
  std::size_t open = 0;
  for (const auto& c : cases) {
    CAPTURE(c.id);
    const bool is_open = c.id.find("-open-") != std::string::npos;
    CHECK(is_open == !c.certificate.has_value());
    CHECK(is_open == (c.status == StatusClaim::Open));
    open += is_open;
  }
  CHECK(open == 8);

  for (const Golden& g : kGolden) {
    CAPTURE(g.id);
    const auto& rows = *shipped_case(g.id).certificate;
    REQUIRE(rows.size() == 5);
    CHECK(rows.front().size() == g.rays);
    BigInt total = 0;
    for (const auto& row : rows) {
      for (const auto& x : row) total += abs(x);
    }
    CHECK(total == g.abs_sum);
  }
}

TEST_CASE("loading edge cases") {
  TempDir dir;
  CHECK(load_catalog(dir.path()).empty());

  SUBCASE("duplicate ids") {
    dir.write("a.json", case7_json().dump());
    dir.write("b.json", case7_json().dump());
    CHECK_THROWS_AS(load_catalog(dir.path()), DuplicateIdError);
  }
  SUBCASE("non-json files are ignored") {
    dir.write("notes.txt", "not json");
    dir.write("a.json", case7_json().dump());
    CHECK(load_catalog(dir.path()).size() == 1);
  }
  SUBCASE("malformed json") {
    dir.write("a.json", "{");
    CHECK_THROWS_AS(load_catalog(dir.path()), SchemaError);
  }
  CHECK_THROWS_AS(load_catalog(dir.path() / "missing"), SchemaError);
}

TEST_CASE("schema violations name the field") {
  auto expect_schema_error = [](nlohmann::json j, const std::string& field) {
    try {
      case_from_json(j, "case.json");
      FAIL("accepted invalid case");
    } catch (const SchemaError& e) {
      const std::string what = e.what();
      CHECK(what.find("case.json") != std::string::npos);
      CHECK(what.find(field) != std::string::npos);
    }
  };
  nlohmann::json j = case7_json();
  CHECK_NOTHROW(case_from_json(j));

  auto four = j;
  four["alpha"] = {"0", "0", "0", "0"};
  expect_schema_error(four, "alpha");

  auto not_closed = j;
  not_closed["beta"] = {"1/2", "1/2", "1/2", "2/3", "2/3"};
  expect_schema_error(not_closed, "beta");

  auto unknown = j;
  unknown["comment"] = "x";
  expect_schema_error(unknown, "comment");

  auto no_id = j;
  no_id.erase("id");
  expect_schema_error(no_id, "id");

  auto ragged = j;
  ragged["certificate"][2].erase(0);
  expect_schema_error(ragged, "certificate");

  auto zero_column = j;
  for (auto& row : zero_column["certificate"]) row[0] = 0;
  expect_schema_error(zero_column, "certificate");

  auto bad_mode = j;
  bad_mode["claimed_mode"] = "sometimes";
  expect_schema_error(bad_mode, "claimed_mode");

  auto bad_status = j;
  bad_status["status"] = "maybe";
  expect_schema_error(bad_status, "status");
}

TEST_CASE("serialization round trip") {
  for (const auto& c : shipped_catalog()) {
    CAPTURE(c.id);
    CHECK(case_from_json(case_to_json(c)) == c);
    CHECK(case_from_json(nlohmann::json::parse(format_case_file(c))) == c);
  }
  SUBCASE("integers beyond 64 bits survive") {
    CaseSpec c = shipped_case("o32-07");
    (*c.certificate)[0][0] = BigInt("-123456789012345678901234567890");
    CHECK(case_from_json(nlohmann::json::parse(format_case_file(c))) == c);
  }
}

TEST_CASE("classification") {
  const Classification c7 = classify_case(shipped_case("o32-07"));
  CHECK(c7.signature == Signature{3, 2});
  CHECK(c7.order == Order{8});
  CHECK(c7.eta == 8);
  CHECK(c7.mode() == Mode::FiniteOrder);
  CHECK(c7.presentation == Presentation::FreeProduct);
  CHECK(c7.mismatches.empty());

  const Classification c3 = classify_case(shipped_case("o41-03"));
  CHECK(c3.signature == Signature{4, 1});
  CHECK(c3.mode() == Mode::FiniteOrder);

  const Classification c8 = classify_case(shipped_case("o32-08"));
  CHECK(c8.presentation == Presentation::AmalgamatedOverPlusMinusI);
  CHECK(c8.minus_identity_power == 5u);

  CaseSpec wrong = shipped_case("o32-07");
  wrong.claimed_signature = Signature{4, 1};
  wrong.claimed_mode = Mode::InfiniteOrder;
  CHECK(classify_case(wrong).mismatches.size() == 2);
}

TEST_CASE("run records and reports") {
  CHECK_THROWS_AS(run_verification(shipped_case("o32-open-01")), MissingCertificateError);

  TempDir dir;
  ResultsStore store(dir.path());
  CHECK(store.load().empty());
  CHECK(make_report(store.load()).ok());

  const RunRecord pass = run_verification(shipped_case("o32-07"));
  CHECK(pass.verdict() == "pass");
  CHECK(pass.ok());
  CHECK(pass.to_json()["version"] == kVersion);
  store.append(pass);
  store.append(no_certificate_record(shipped_case("o32-open-01")));

  std::string first_line;
  std::getline(std::ifstream(store.file()) >> std::ws, first_line);

  CaseSpec wrong = shipped_case("o32-08");
  wrong.claimed_signature = Signature{4, 1};
  store.append(run_verification(wrong));

  std::string first_again;
  std::getline(std::ifstream(store.file()) >> std::ws, first_again);
  CHECK(first_line == first_again);
  CHECK(store.load().size() == 3);

  const Report report = make_report(store.load());
  CHECK(report.passed == 2);
  CHECK(report.no_certificate == 1);
  CHECK(report.flagged == 1);
  CHECK_FALSE(report.ok());
  CHECK(report.to_json()["rows"].size() == 3);
  CHECK(report.to_human().find("o32-08") != std::string::npos);

  SUBCASE("the latest record of a case wins") {
    store.append(run_verification(shipped_case("o32-08")));
    const Report again = make_report(store.load());
    CHECK(again.flagged == 0);
    CHECK(again.ok());
  }
}

TEST_CASE("an unsuccessful search writes no certificate") {
  TempDir dir;
  SearchConfig config;
  config.max_rounds = 2;
  const RunRecord r = run_search(shipped_case("o32-open-01"), config, dir.path());
  CHECK(r.kind == "search");
  CHECK(r.search_status != SearchStatus::Found);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(fs::exists(dir.path() / "found"));
}
