#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dipl/agents.hpp"

namespace dipl {

inline constexpr int kMaxAttemptsPerStep = 50;

struct RunConfig {
  Domain domain = Domain::Fractions;
  AgentKind agent = AgentKind::Dipl;
  int problems = 100;
  std::uint64_t seed = 0;
  int window = 10;
  double threshold = 0.1;
  bool implicit_negatives = true;
  int retrain_every = 1;
};

// Throws std::invalid_argument when window < 1, threshold outside (0,1),
// problems < 1 or retrain_every < 1.
void validate(const RunConfig& cfg);

struct RunRecord {
  int problem_idx = 0;  // 1-based
  int steps = 0;
  int first_try_correct = 0;
  int demos = 0;
  double error = 0.0;

  bool operator==(const RunRecord&) const = default;
};

class RunAborted : public std::runtime_error {
 public:
  RunAborted(const std::string& what, std::vector<RunRecord> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<RunRecord>& partial() const { return partial_; }

 private:
  std::vector<RunRecord> partial_;
};

// Trains a fresh agent on cfg.problems generated problems. Problem seeds are
// drawn from a generator seeded with cfg.seed. When `transcript` is given,
// one line per agent event is written to it. Throws RunAborted when a step
// needs more than kMaxAttemptsPerStep attempts.
std::vector<RunRecord> run_training(const RunConfig& cfg, std::ostream* transcript = nullptr);

// Smallest 1-based n >= window whose trailing window mean is < threshold.
std::optional<int> mastery_intercept(const std::vector<double>& errors, int window, double threshold);
std::optional<int> mastery_intercept(const std::vector<RunRecord>& records, int window, double threshold);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
// Throws std::runtime_error on a malformed header or row.
std::vector<RunRecord> read_csv(std::istream& in);

struct SuiteConfig {
  std::vector<Domain> domains;
  std::vector<AgentKind> agents;
  std::vector<std::uint64_t> seeds;
  int problems = 100;
  int window = 10;
  double threshold = 0.1;
  bool implicit_negatives = true;
  int retrain_every = 1;
};

// Throws std::invalid_argument on missing keys or unknown names.
SuiteConfig parse_suite(const std::string& json_text);

struct CellSummary {
  Domain domain = Domain::Fractions;
  AgentKind agent = AgentKind::Dipl;
  // Intercept statistics; runs without mastery count as +infinity, and an
  // infinite statistic is reported as nullopt.
  std::optional<double> median, q1, q3;
  int n_runs = 0;
  int n_no_mastery = 0;
  int n_aborted = 0;
  std::vector<std::optional<int>> intercepts;  // seed order
};

// Linear-interpolation quantile of sorted values (may contain +inf).
double quantile(const std::vector<double>& sorted, double p);

// Runs every domain x agent x seed, writes "<domain>_<agent>_s<seed>.csv"
// per run and "summary.json" into out_dir. Aborted runs keep their partial
// CSV and are counted as no-mastery in their cell.
std::vector<CellSummary> run_ablation(const SuiteConfig& suite, const std::string& out_dir);

std::string summary_json(const std::vector<CellSummary>& cells);

}  // namespace dipl
