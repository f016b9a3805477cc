#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinmono/pingpong.hpp"
#include "thinmono/search.hpp"

namespace thinmono {

inline constexpr const char* kVersion = "0.1.0";

enum class StatusClaim { Thin, Open };

struct CaseSpec {
  std::string id;
  ParamVector alpha;
  ParamVector beta;
  std::optional<Signature> claimed_signature;
  std::optional<Mode> claimed_mode;
  /// Generator matrix, 5 rows; column j is the j-th ray.
  std::optional<std::vector<std::vector<BigInt>>> certificate;
  StatusClaim status = StatusClaim::Open;

  friend bool operator==(const CaseSpec&, const CaseSpec&) = default;
};

/// Throws SchemaError naming `where` and the offending field.
CaseSpec case_from_json(const nlohmann::json& j, const std::string& where = "<json>");
nlohmann::json case_to_json(const CaseSpec& c);

/// Case file text: the JSON object with each certificate row on one line.
std::string format_case_file(const CaseSpec& c);

/// Reads every *.json file directly inside `dir`, sorted by id.
/// Throws SchemaError, DuplicateIdError.
std::vector<CaseSpec> load_catalog(const std::filesystem::path& dir);

struct Classification {
  std::string case_id;
  Signature signature;
  Order order;
  unsigned eta = 0;
  Presentation presentation = Presentation::FreeProduct;
  std::optional<unsigned> minus_identity_power;
  /// Human-readable descriptions of claims that disagree with the computation.
  std::vector<std::string> mismatches;

  Mode mode() const { return order.is_finite() ? Mode::FiniteOrder : Mode::InfiniteOrder; }
  nlohmann::json to_json() const;
};

/// Throws CoprimalityError, FormNotUniqueError.
Classification classify_case(const CaseSpec& c);

struct RunRecord {
  std::string case_id;
  std::string kind;  // "verify" or "search"
  std::string timestamp;
  std::string version = kVersion;
  Classification classification;
  std::optional<VerificationReport> report;
  std::optional<SearchStatus> search_status;
  unsigned rounds_used = 0;
  std::string detail;

  /// "pass", "fail", "no-certificate", "found", "exhausted" or "diverged".
  std::string verdict() const;
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Throws MissingCertificateError when the case has no certificate.
RunRecord run_verification(const CaseSpec& c);

/// Record for a case without certificate, so that reports can list it.
RunRecord no_certificate_record(const CaseSpec& c);

/// On Found, writes the discovered cone as `<catalog_dir>/found/<id>.json`.
RunRecord run_search(const CaseSpec& c, const SearchConfig& config,
                     const std::optional<std::filesystem::path>& catalog_dir = std::nullopt);

/// `THINMONO_RESULTS` if set, else ./results.
std::filesystem::path default_results_dir();

/// Append-only store of run records in `<dir>/runs.jsonl`.
class ResultsStore {
 public:
  explicit ResultsStore(std::filesystem::path dir);
  void append(const RunRecord& record);
  std::vector<nlohmann::json> load() const;
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mutex_;
};

struct Report {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t passed = 0, failed = 0, no_certificate = 0, flagged = 0;
  bool ok() const { return failed == 0 && flagged == 0; }
  nlohmann::json to_json() const;
  std::string to_human() const;
};

/// Latest verification record per case, ordered by case id.
Report make_report(const std::vector<nlohmann::json>& records);

}  // namespace thinmono
