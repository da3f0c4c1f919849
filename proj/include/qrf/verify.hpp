#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrf/group.hpp"
#include "qrf/io.hpp"

namespace qrf {

using Observations = std::vector<std::pair<std::string, std::string>>;

/// Suite names accepted by run_verify, in canonical order.
std::vector<std::string> suite_names();

struct SuiteConfig {
  FiniteGroup group = cyclic_group(1);
  std::string group_name = "z1";
  std::vector<std::string> suites;  // empty or {"all"} selects every suite
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int trials = 20;
  int threads = 0;  // 0: QRF_THREADS, else hardware concurrency
};

struct CheckRecord {
  std::string name;
  std::string anchor;  // the statement the check establishes
  bool pass = false;
  bool skipped = false;
  double max_deviation = 0.0;
  int trials = 0;
  double runtime_ms = 0.0;
  std::string note;  // error message or reason for skipping
  Observations observations;
};

struct Report {
  std::string group_name;
  int group_order = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckRecord> checks;  // ordered by name
  Observations observations;  // collected from the checks

  int passed() const;
  int failed() const;
  int skipped() const;
  bool all_pass() const { return failed() == 0; }
};

/// Outcome of one check body: largest deviation, number of trials, and
/// facts reported without a pass/fail judgement.
struct Outcome {
  double max_deviation = 0.0;
  int trials = 0;
  Observations observations;
};

/// A named check. The body gets a generator seeded from the run seed and the
/// check name, so results do not depend on scheduling.
struct CheckTask {
  std::string name;
  std::string anchor;
  std::function<Outcome(std::uint64_t seed)> body;
  std::string skip_reason;  // non-empty: recorded as skipped, body not run
};

/// Runs tasks on `threads` workers and returns records ordered by name.
/// Exceptions thrown by a body fail that check with the message as note.
std::vector<CheckRecord> run_checks(const std::vector<CheckTask>& tasks, double tol,
                                    std::uint64_t seed, int threads);

/// Throws ArgumentError for unknown suite names or a non-positive tolerance.
Report run_verify(const SuiteConfig& config);

/// QRF_THREADS if set to a positive integer, else the hardware concurrency.
int default_thread_count();

Json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

}  // namespace qrf
