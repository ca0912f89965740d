#pragma once

// Named verification tasks, report persistence and golden-report regression.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fda/catalog.hpp"
#include "fda/report.hpp"
#include "fda/serialize.hpp"

namespace fda {

struct TaskConfig {
  std::string task;
  std::map<std::string, std::string> params; ///< alpha, beta, max-degree, k, n, d, p, input, samples
  bool long_run = false;
  std::size_t cap = default_basis_cap;
  std::string ledger_hash; ///< empty means the built-in one
};

struct TaskInfo {
  std::string id;
  std::string summary;
};

const std::vector<TaskInfo>& task_list();

/// Throws Error(Errc::unknown_task) and Error(Errc::ledger_mismatch).
/// Tasks that need --long return a capped report instead of running.
Report run_task(const TaskConfig& config);
Report run_task(const TaskConfig& config, Catalog& catalog);

/// Flattened pinned scalars of a report tree, keyed "child/grandchild/name".
std::map<std::string, std::string> collect_pinned(const Report& r);

struct GoldenReport {
  std::string task;
  std::string verdict;
  std::map<std::string, std::string> pinned;
  std::string engine_version;
  std::string ledger_hash;

  friend bool operator==(const GoldenReport&, const GoldenReport&) = default;
};

GoldenReport make_golden(const Report& r, const TaskConfig& config);
json to_json(const GoldenReport& g);
GoldenReport golden_from_json(const json& j);

/// pass iff task, verdict and every pinned scalar agree exactly. Throws
/// Error(Errc::ledger_mismatch) when the ledger hashes differ.
Report compare_golden(const GoldenReport& current, const GoldenReport& golden);

/// {"schema": "fda.report/1", "task", "params", "engine_version", "ledger_hash", "timestamp", "report"}
json report_document(const Report& r, const TaskConfig& config, const std::string& timestamp);

/// Writes <dir>/<task>-<timestamp>.json and returns its path.
std::filesystem::path write_report(const Report& r, const TaskConfig& config, const std::filesystem::path& dir);

/// Exit code convention: 0 pass, 1 fail, 2 capped or unsupported.
int exit_code(const Report& r);

} // namespace fda
