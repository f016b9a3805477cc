// Command-line front end: classify, verify, search and report on the case catalog.

#include <atomic>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "thinmono/catalog.hpp"
#include "thinmono/errors.hpp"

namespace fs = std::filesystem;
using namespace thinmono;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Selection {
  std::string case_id;
  bool all = false;
  std::string type;
};

std::vector<CaseSpec> select_cases(const std::vector<CaseSpec>& catalog, const Selection& sel) {
  std::vector<CaseSpec> out;
  for (const auto& c : catalog) {
    if (!sel.case_id.empty()) {
      if (c.id == sel.case_id) out.push_back(c);
    } else if (!sel.type.empty()) {
      if (c.id.rfind(sel.type + "-", 0) == 0) out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  if (!sel.case_id.empty() && out.empty()) throw SchemaError("unknown case id " + sel.case_id);
  return out;
}

std::string row_prefix(const Classification& c) {
  std::ostringstream out;
  out << std::left << std::setw(13) << c.case_id << std::setw(7) << c.signature.to_string()
      << std::setw(10) << c.order.to_string() << "eta=" << std::setw(4) << c.eta << std::setw(24)
      << to_string(c.presentation);
  return out.str();
}

int cmd_classify(const std::vector<CaseSpec>& cases) {
  int status = kExitOk;
  for (const auto& c : cases) {
    const Classification cl = classify_case(c);
    std::cout << row_prefix(cl);
    if (cl.minus_identity_power) std::cout << "B^" << *cl.minus_identity_power << "=-I";
    for (const auto& m : cl.mismatches) std::cout << "  [MISMATCH " << m << "]";
    std::cout << "\n";
    if (!cl.mismatches.empty()) status = kExitFailure;
  }
  return status;
}

int cmd_verify(const std::vector<CaseSpec>& cases, bool single, unsigned jobs, ResultsStore& store) {
  if (single && !cases.front().certificate) {
    std::cerr << "error: case " << cases.front().id << " has no certificate\n";
    store.append(no_certificate_record(cases.front()));
    return kExitInput;
  }
  struct Outcome {
    std::optional<RunRecord> record;
    double seconds = 0.0;
    std::string error;
  };
  std::vector<Outcome> outcomes(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        RunRecord r = cases[i].certificate ? run_verification(cases[i]) : no_certificate_record(cases[i]);
        store.append(r);
        outcomes[i].record = std::move(r);
      } catch (const Error& e) {
        outcomes[i].error = e.what();
      }
      outcomes[i].seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::max(1u, jobs); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = kExitOk;
  std::size_t passed = 0, failed = 0, missing = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.record) {
      std::cout << std::left << std::setw(13) << cases[i].id << "error: " << o.error << "\n";
      status = kExitFailure;
      ++failed;
      continue;
    }
    const RunRecord& r = *o.record;
    std::cout << row_prefix(r.classification) << std::left << std::setw(16) << r.verdict();
    if (r.report) {
      std::cout << std::fixed << std::setprecision(2) << o.seconds << "s";
      if (const Step* s = r.report->failure()) std::cout << "  " << s->name << ": " << s->witness;
    }
    for (const auto& m : r.classification.mismatches) std::cout << "  [MISMATCH " << m << "]";
    std::cout << "\n";
    if (!r.report) {
      ++missing;
    } else if (r.report->passed()) {
      ++passed;
    } else {
      ++failed;
    }
    if (!r.ok()) status = kExitFailure;
  }
  std::cout << passed << " pass / " << failed << " fail / " << missing << " no-certificate\n";
  return status;
}

int cmd_search(const CaseSpec& c, const SearchConfig& config, const fs::path& catalog_dir,
               ResultsStore& store) {
  const RunRecord r = run_search(c, config, catalog_dir);
  store.append(r);
  std::cout << c.id << ": " << r.verdict() << " after " << r.rounds_used << " rounds";
  if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
  std::cout << "\n";
  if (*r.search_status == SearchStatus::Found) {
    std::cout << "certificate written to " << (catalog_dir / "found" / (c.id + ".json")).string()
              << "\n";
    return kExitOk;
  }
  return kExitFailure;
}

int cmd_report(const std::string& format, ResultsStore& store) {
  const Report report = make_report(store.load());
  if (format == "json") {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_human();
  }
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ping-pong certificates for degree-5 orthogonal hypergeometric groups"};
  app.require_subcommand(1);
  std::string catalog_dir = THINMONO_CATALOG_DIR;
  std::string results_dir = default_results_dir().string();
  app.add_option("--catalog", catalog_dir, "Directory of case files")->capture_default_str();
  app.add_option("--results", results_dir, "Directory for runs.jsonl")->capture_default_str();

  Selection classify_sel;
  auto* classify = app.add_subcommand("classify", "Signature, order of B, eta and presentation");
  auto* cl_case = classify->add_option("--case", classify_sel.case_id, "Case id");
  classify->add_flag("--all", classify_sel.all, "All cases (default)")->excludes(cl_case);

  Selection verify_sel;
  unsigned jobs = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Verify catalog certificates");
  auto* v_case = verify_cmd->add_option("--case", verify_sel.case_id, "Case id");
  auto* v_all = verify_cmd->add_flag("--all", verify_sel.all, "All cases")->excludes(v_case);
  verify_cmd->add_option("--type", verify_sel.type, "Case family")
      ->check(CLI::IsMember({"o32", "o41"}))
      ->excludes(v_case)
      ->excludes(v_all);
  verify_cmd->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  std::string search_case;
  SearchConfig config;
  auto* search = app.add_subcommand("search", "Search for a seed cone");
  search->add_option("--case", search_case, "Case id")->required();
  search->add_option("--max-rounds", config.max_rounds, "Expansion round cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string format = "human";
  auto* report = app.add_subcommand("report", "Summarize recorded verification runs");
  report->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    ResultsStore store(results_dir);
    if (report->parsed()) return cmd_report(format, store);
    const std::vector<CaseSpec> catalog = load_catalog(catalog_dir);
    if (classify->parsed()) return cmd_classify(select_cases(catalog, classify_sel));
    if (verify_cmd->parsed()) {
      if (verify_sel.case_id.empty() && verify_sel.type.empty() && !verify_sel.all) {
        std::cerr << "error: verify needs --case, --type or --all\n";
        return kExitInput;
      }
      return cmd_verify(select_cases(catalog, verify_sel), !verify_sel.case_id.empty(), jobs, store);
    }
    const auto selected = select_cases(catalog, Selection{search_case, false, ""});
    return cmd_search(selected.front(), config, catalog_dir, store);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DuplicateIdError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
