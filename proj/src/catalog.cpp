#include "thinmono/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "thinmono/errors.hpp"

namespace thinmono {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& field,
                               const std::string& message) {
  throw SchemaError(where + ": " + field + ": " + message);
}

ParamVector parse_params(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_array() || j.size() != 5) schema_error(where, field, "expected an array of 5 strings");
  std::array<Rational, 5> entries;
  for (std::size_t i = 0; i < 5; ++i) {
    const std::string path = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_string()) schema_error(where, path, "expected a string \"p/q\"");
    try {
      entries[i] = parse_rational(j[i].get<std::string>());
    } catch (const SchemaError& e) {
      schema_error(where, path, e.what());
    }
  }
  try {
    return ParamVector(entries);
  } catch (const GaloisClosureError& e) {
    schema_error(where, field, e.what());
  }
}

BigInt parse_integer(const json& j, const std::string& where, const std::string& field) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? BigInt(std::to_string(j.get<std::uint64_t>()))
                                  : BigInt(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  schema_error(where, field, "expected an integer");
}

json integer_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json params_to_json(const ParamVector& p) {
  json a = json::array();
  for (const auto& e : p.entries()) a.push_back(to_string(e));
  return a;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

const std::set<std::string> kCaseFields = {"id",     "alpha",  "beta",       "claimed_signature",
                                           "claimed_mode", "status", "certificate"};

}  // namespace

CaseSpec case_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "$", "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!kCaseFields.contains(key)) schema_error(where, key, "unknown field");
  }
  for (const char* key : {"id", "alpha", "beta", "status"}) {
    if (!j.contains(key)) schema_error(where, key, "missing required field");
  }
  if (!j["id"].is_string() || j["id"].get<std::string>().empty()) {
    schema_error(where, "id", "expected a non-empty string");
  }
  CaseSpec c{j["id"].get<std::string>(), parse_params(j["alpha"], where, "alpha"),
             parse_params(j["beta"], where, "beta"), std::nullopt, std::nullopt, std::nullopt,
             StatusClaim::Open};

  const json& status = j["status"];
  if (status == "thin") {
    c.status = StatusClaim::Thin;
  } else if (status == "open") {
    c.status = StatusClaim::Open;
  } else {
    schema_error(where, "status", "expected \"thin\" or \"open\"");
  }

  if (j.contains("claimed_signature")) {
    const json& s = j["claimed_signature"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer()) {
      schema_error(where, "claimed_signature", "expected [plus, minus]");
    }
    c.claimed_signature = Signature{s[0].get<int>(), s[1].get<int>()};
  }
  if (j.contains("claimed_mode")) {
    const json& m = j["claimed_mode"];
    if (m == "finite") {
      c.claimed_mode = Mode::FiniteOrder;
    } else if (m == "infinite") {
      c.claimed_mode = Mode::InfiniteOrder;
    } else {
      schema_error(where, "claimed_mode", "expected \"finite\" or \"infinite\"");
    }
  }
  if (j.contains("certificate")) {
    const json& m = j["certificate"];
    if (!m.is_array() || m.size() != kDim) {
      schema_error(where, "certificate", "expected an array of 5 rows");
    }
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t i = 0; i < kDim; ++i) {
      const std::string row_path = "certificate[" + std::to_string(i) + "]";
      if (!m[i].is_array() || m[i].empty()) schema_error(where, row_path, "expected a non-empty row");
      if (m[i].size() != m[0].size()) schema_error(where, row_path, "rows differ in length");
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < m[i].size(); ++k) {
        row.push_back(parse_integer(m[i][k], where, row_path + "[" + std::to_string(k) + "]"));
      }
      rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < rows[0].size(); ++k) {
      if (std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r[k] == 0; })) {
        schema_error(where, "certificate", "column " + std::to_string(k) + " is zero");
      }
    }
    c.certificate = std::move(rows);
  }
  return c;
}

json case_to_json(const CaseSpec& c) {
  json j;
  j["id"] = c.id;
  j["alpha"] = params_to_json(c.alpha);
  j["beta"] = params_to_json(c.beta);
  if (c.claimed_signature) {
    j["claimed_signature"] = {c.claimed_signature->plus, c.claimed_signature->minus};
  }
  if (c.claimed_mode) j["claimed_mode"] = c.claimed_mode == Mode::FiniteOrder ? "finite" : "infinite";
  j["status"] = c.status == StatusClaim::Thin ? "thin" : "open";
  if (c.certificate) {
    json rows = json::array();
    for (const auto& row : *c.certificate) {
      json r = json::array();
      for (const auto& v : row) r.push_back(integer_to_json(v));
      rows.push_back(std::move(r));
    }
    j["certificate"] = std::move(rows);
  }
  return j;
}

std::string format_case_file(const CaseSpec& c) {
  const json j = case_to_json(c);
  std::ostringstream out;
  out << "{\n";
  bool first = true;
  for (const char* key : {"id", "alpha", "beta", "claimed_signature", "claimed_mode", "status"}) {
    if (!j.contains(key)) continue;
    if (!first) out << ",\n";
    first = false;
    std::string value = j[key].dump();
    if (j[key].is_array()) {
      std::string spaced;
      for (char ch : value) {
        spaced += ch;
        if (ch == ',') spaced += ' ';
      }
      value = spaced;
    }
    out << "  \"" << key << "\": " << value;
  }
  if (c.certificate) {
    std::size_t width = 1;
    for (const auto& row : *c.certificate) {
      for (const auto& v : row) width = std::max(width, v.get_str().size());
    }
    out << ",\n  \"certificate\": [\n";
    for (std::size_t i = 0; i < c.certificate->size(); ++i) {
      const auto& row = (*c.certificate)[i];
      out << "    [";
      for (std::size_t k = 0; k < row.size(); ++k) {
        const std::string v = row[k].fits_slong_p() ? row[k].get_str() : '"' + row[k].get_str() + '"';
        out << (k ? ", " : "") << std::setw(static_cast<int>(width)) << v;
      }
      out << "]" << (i + 1 < c.certificate->size() ? "," : "") << "\n";
    }
    out << "  ]";
  }
  out << "\n}\n";
  return out.str();
}

std::vector<CaseSpec> load_catalog(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw SchemaError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<CaseSpec> cases;
  std::map<std::string, fs::path> seen;
  for (const auto& file : files) {
    std::ifstream in(file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw SchemaError(file.string() + ": $: " + e.what());
    }
    CaseSpec c = case_from_json(j, file.string());
    if (auto it = seen.find(c.id); it != seen.end()) {
      throw DuplicateIdError("case id " + c.id + " appears in " + it->second.string() + " and " +
                             file.string());
    }
    seen.emplace(c.id, file);
    cases.push_back(std::move(c));
  }
  std::sort(cases.begin(), cases.end(),
            [](const CaseSpec& a, const CaseSpec& b) { return a.id < b.id; });
  return cases;
}

json Classification::to_json() const {
  json j;
  j["case_id"] = case_id;
  j["signature"] = {signature.plus, signature.minus};
  j["order_of_b"] = order.to_string();
  j["mode"] = thinmono::to_string(mode());
  j["eta"] = eta;
  j["presentation"] = thinmono::to_string(presentation);
  j["minus_identity_power"] = minus_identity_power ? json(*minus_identity_power) : json(nullptr);
  j["mismatches"] = mismatches;
  return j;
}

Classification classify_case(const CaseSpec& c) {
  const Generators g = make_generators(c.alpha, c.beta);
  Classification out;
  out.case_id = c.id;
  out.signature = signature(invariant_form(g.a, g.b));
  out.order = order_of(g.b);
  out.eta = unipotency_index(g.b);
  out.presentation = classify_presentation(g.b);
  out.minus_identity_power = minus_identity_power(g.b);
  if (c.claimed_signature && *c.claimed_signature != out.signature) {
    out.mismatches.push_back("signature: claimed " + c.claimed_signature->to_string() +
                             ", computed " + out.signature.to_string());
  }
  if (c.claimed_mode && *c.claimed_mode != out.mode()) {
    out.mismatches.push_back("mode: claimed " + to_string(*c.claimed_mode) + ", computed " +
                             to_string(out.mode()));
  }
  return out;
}

std::string RunRecord::verdict() const {
  if (search_status) return to_string(*search_status);
  if (report) return report->passed() ? "pass" : "fail";
  return "no-certificate";
}

bool RunRecord::ok() const {
  if (!classification.mismatches.empty()) return false;
  if (search_status) return *search_status == SearchStatus::Found;
  return !report || report->passed();
}

json RunRecord::to_json() const {
  json j;
  j["case_id"] = case_id;
  j["kind"] = kind;
  j["timestamp"] = timestamp;
  j["version"] = version;
  j["verdict"] = verdict();
  j["classification"] = classification.to_json();
  j["report"] = report ? report->to_json(true) : json(nullptr);
  if (search_status) {
    j["search"] = {{"status", to_string(*search_status)}, {"rounds_used", rounds_used}};
  }
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

RunRecord run_verification(const CaseSpec& c) {
  if (!c.certificate) throw MissingCertificateError("case " + c.id + " has no certificate");
  RunRecord record;
  record.case_id = c.id;
  record.kind = "verify";
  record.timestamp = utc_timestamp();
  record.classification = classify_case(c);
  const Generators g = make_generators(c.alpha, c.beta);
  record.report = verify(g.b, g.t, Cone::from_columns(*c.certificate), c.id);
  return record;
}

RunRecord no_certificate_record(const CaseSpec& c) {
  RunRecord record;
  record.case_id = c.id;
  record.kind = "verify";
  record.timestamp = utc_timestamp();
  record.classification = classify_case(c);
  record.detail = "no certificate";
  return record;
}

RunRecord run_search(const CaseSpec& c, const SearchConfig& config,
                     const std::optional<fs::path>& catalog_dir) {
  RunRecord record;
  record.case_id = c.id;
  record.kind = "search";
  record.timestamp = utc_timestamp();
  record.classification = classify_case(c);
  const Generators g = make_generators(c.alpha, c.beta);
  SearchOutcome outcome = search_certificate(g.b, g.t, config);
  record.search_status = outcome.status;
  record.rounds_used = outcome.rounds_used;
  record.detail = outcome.detail;
  if (outcome.status == SearchStatus::Found) {
    outcome.report->case_id = c.id;
    record.report = outcome.report;
    if (catalog_dir) {
      CaseSpec found = c;
      std::vector<std::vector<BigInt>> rows(kDim);
      for (const auto& ray : outcome.cone->rays()) {
        for (std::size_t i = 0; i < kDim; ++i) rows[i].push_back(ray[i]);
      }
      found.certificate = std::move(rows);
      found.claimed_mode = outcome.report->mode;
      const fs::path dir = *catalog_dir / "found";
      fs::create_directories(dir);
      std::ofstream(dir / (c.id + ".json")) << format_case_file(found);
    }
  }
  return record;
}

fs::path default_results_dir() {
  if (const char* env = std::getenv("THINMONO_RESULTS"); env && *env) return env;
  return "results";
}

ResultsStore::ResultsStore(fs::path dir) : file_(dir / "runs.jsonl") {}

void ResultsStore::append(const RunRecord& record) {
  const std::string line = record.to_json().dump() + "\n";
  std::lock_guard lock(mutex_);
  fs::create_directories(file_.parent_path());
  std::ofstream out(file_, std::ios::app);
  out << line;
}

std::vector<json> ResultsStore::load() const {
  std::lock_guard lock(mutex_);
  std::vector<json> records;
  std::ifstream in(file_);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw SchemaError(file_.string() + ": line " + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

json Report::to_json() const {
  return {{"rows", rows},
          {"summary",
           {{"pass", passed},
            {"fail", failed},
            {"no_certificate", no_certificate},
            {"flagged", flagged}}}};
}

std::string Report::to_human() const {
  std::ostringstream out;
  out << std::left << std::setw(13) << "case" << std::setw(11) << "signature" << std::setw(10)
      << "order" << std::setw(6) << "eta" << std::setw(24) << "presentation"
      << "verdict\n";
  for (const auto& row : rows) {
    const auto& sig = row["signature"];
    out << std::setw(13) << row["case_id"].get<std::string>() << std::setw(11)
        << ("(" + sig[0].dump() + "," + sig[1].dump() + ")") << std::setw(10)
        << row["order_of_b"].get<std::string>() << std::setw(6) << row["eta"].dump()
        << std::setw(24) << row["presentation"].get<std::string>()
        << row["verdict"].get<std::string>();
    for (const auto& m : row["mismatches"]) out << "  [MISMATCH " << m.get<std::string>() << "]";
    out << "\n";
  }
  out << passed << " pass / " << failed << " fail / " << no_certificate << " no-certificate";
  if (flagged) out << " / " << flagged << " flagged";
  out << "\n";
  return out.str();
}

Report make_report(const std::vector<json>& records) {
  std::map<std::string, const json*> latest;
  for (const auto& r : records) {
    if (r.value("kind", "") != "verify") continue;
    latest[r.at("case_id").get<std::string>()] = &r;
  }
  Report report;
  for (const auto& [id, r] : latest) {
    const json& c = r->at("classification");
    json row{{"case_id", id},
             {"signature", c.at("signature")},
             {"order_of_b", c.at("order_of_b")},
             {"eta", c.at("eta")},
             {"presentation", c.at("presentation")},
             {"verdict", r->at("verdict")},
             {"mismatches", c.at("mismatches")}};
    const std::string verdict = row["verdict"];
    if (verdict == "pass") {
      ++report.passed;
    } else if (verdict == "no-certificate") {
      ++report.no_certificate;
    } else {
      ++report.failed;
    }
    if (!row["mismatches"].empty()) ++report.flagged;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace thinmono
