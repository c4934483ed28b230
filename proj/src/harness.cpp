#include "dipl/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace dipl {

void validate(const RunConfig& cfg) {
  if (cfg.window < 1) throw std::invalid_argument("window must be >= 1");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw std::invalid_argument("threshold must be in (0, 1)");
  if (cfg.problems < 1) throw std::invalid_argument("problems must be >= 1");
  if (cfg.retrain_every < 1) throw std::invalid_argument("retrain_every must be >= 1");
}

namespace {

void log_event(std::ostream* out, int problem, int step, std::string_view kind, const std::optional<int>& skill,
               const SAI& sai, std::optional<int> reward) {
  if (!out) return;
  *out << problem << ' ' << step << ' ' << kind << ' ' << (skill ? "S" + std::to_string(*skill) : "-") << ' '
       << to_string(sai) << ' ' << (reward ? std::to_string(*reward) : "-") << '\n';
}

}  // namespace

std::vector<RunRecord> run_training(const RunConfig& cfg, std::ostream* transcript) {
  validate(cfg);
  AgentConfig acfg;
  acfg.implicit_negatives = cfg.implicit_negatives;
  acfg.retrain_every = cfg.retrain_every;
  auto agent = make_agent(cfg.agent, cfg.domain, acfg);
  auto env = make_environment(cfg.domain);
  std::mt19937_64 seeds(cfg.seed);

  std::vector<RunRecord> records;
  for (int p = 1; p <= cfg.problems; ++p) {
    env->new_problem(seeds());
    if (transcript) *transcript << p << " 0 problem - " << env->problem_log_line() << " -\n";
    RunRecord rec;
    rec.problem_idx = p;
    while (!env->complete()) {
      ++rec.steps;
      bool first = true;
      for (int attempt = 1;; ++attempt) {
        if (attempt > kMaxAttemptsPerStep) {
          std::ostringstream msg;
          msg << "run aborted: problem " << p << " (" << env->problem_log_line() << ") step " << rec.steps
              << " exceeded " << kMaxAttemptsPerStep << " attempts";
          throw RunAborted(msg.str(), records);
        }
        const TutorState before = env->state();
        const AgentAction action = agent->act(before);
        if (const auto* prop = std::get_if<Proposal>(&action)) {
          const Reward r = env->step(prop->sai).reward;
          log_event(transcript, p, rec.steps, "attempt", prop->skill, prop->sai, r.value());
          agent->learn(AttemptResult{before, prop->sai, prop->skill, prop->binding, r});
          if (r.is_correct()) {
            if (first) ++rec.first_try_correct;
            break;
          }
        } else {
          const Demo demo = env->request_demo();
          log_event(transcript, p, rec.steps, "demo", std::nullopt, demo.sai, std::nullopt);
          agent->learn(DemoReceived{before, demo});
          env->step(demo.sai);
          ++rec.demos;
          break;
        }
        first = false;
      }
    }
    rec.error = 1.0 - static_cast<double>(rec.first_try_correct) / rec.steps;
    records.push_back(rec);
  }
  return records;
}

std::optional<int> mastery_intercept(const std::vector<double>& errors, int window, double threshold) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  // Each window is summed from scratch so accumulated rounding never decides
  // a boundary case.
  for (std::size_t n = window; n <= errors.size(); ++n) {
    double sum = 0.0;
    for (std::size_t j = n - window; j < n; ++j) sum += errors[j];
    if (sum / window < threshold) return static_cast<int>(n);
  }
  return std::nullopt;
}

std::optional<int> mastery_intercept(const std::vector<RunRecord>& records, int window, double threshold) {
  std::vector<double> errors;
  errors.reserve(records.size());
  for (const auto& r : records) errors.push_back(r.error);
  return mastery_intercept(errors, window, threshold);
}

namespace {

constexpr const char* kHeader = "problem_idx,steps,first_try_correct,demos,error";

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kHeader << '\n';
  for (const auto& r : records)
    out << r.problem_idx << ',' << r.steps << ',' << r.first_try_correct << ',' << r.demos << ','
        << format_double(r.error) << '\n';
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw std::runtime_error("unexpected CSV header: " + line);
  std::vector<RunRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != 5) throw std::runtime_error("CSV line " + std::to_string(lineno) + ": expected 5 columns");
    try {
      RunRecord r;
      std::size_t pos = 0;
      r.problem_idx = std::stoi(cells[0]);
      r.steps = std::stoi(cells[1]);
      r.first_try_correct = std::stoi(cells[2]);
      r.demos = std::stoi(cells[3]);
      r.error = std::stod(cells[4], &pos);
      if (pos != cells[4].size()) throw std::invalid_argument("trailing characters");
      out.push_back(r);
    } catch (const std::logic_error& e) {
      throw std::runtime_error("CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

SuiteConfig parse_suite(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("suite config is not valid JSON: ") + e.what());
  }
  for (const char* key : {"domains", "agents", "seeds", "problems", "window", "threshold", "implicit_negatives",
                          "retrain_every"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("suite config is missing \"") + key + "\"");
  SuiteConfig s;
  try {
    for (const auto& d : j.at("domains")) s.domains.push_back(parse_domain(d.get<std::string>()));
    for (const auto& a : j.at("agents")) s.agents.push_back(parse_agent(a.get<std::string>()));
    for (const auto& x : j.at("seeds")) s.seeds.push_back(x.get<std::uint64_t>());
    s.problems = j.at("problems").get<int>();
    s.window = j.at("window").get<int>();
    s.threshold = j.at("threshold").get<double>();
    s.implicit_negatives = j.at("implicit_negatives").get<bool>();
    s.retrain_every = j.at("retrain_every").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("suite config: ") + e.what());
  }
  return s;
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = (sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  if (lo == hi) return sorted[lo];
  if (std::isinf(sorted[hi])) return sorted[hi];
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

std::vector<CellSummary> run_ablation(const SuiteConfig& suite, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<CellSummary> cells;
  for (auto domain : suite.domains) {
    for (auto agent : suite.agents) {
      CellSummary cell;
      cell.domain = domain;
      cell.agent = agent;
      std::vector<double> values;
      for (auto seed : suite.seeds) {
        RunConfig cfg{domain, agent, suite.problems, seed, suite.window, suite.threshold, suite.implicit_negatives,
                      suite.retrain_every};
        std::vector<RunRecord> records;
        bool aborted = false;
        try {
          records = run_training(cfg);
        } catch (const RunAborted& e) {
          records = e.partial();
          aborted = true;
        }
        const std::string name =
            std::string(to_string(domain)) + "_" + std::string(to_string(agent)) + "_s" + std::to_string(seed) + ".csv";
        std::ofstream csv(std::filesystem::path(out_dir) / name, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + name);
        write_csv(csv, records);

        auto icpt = aborted ? std::nullopt : mastery_intercept(records, suite.window, suite.threshold);
        ++cell.n_runs;
        if (aborted) ++cell.n_aborted;
        if (!icpt) ++cell.n_no_mastery;
        cell.intercepts.push_back(icpt);
        values.push_back(icpt ? *icpt : std::numeric_limits<double>::infinity());
      }
      if (!values.empty()) {
        std::sort(values.begin(), values.end());
        auto finite = [](double v) { return std::isinf(v) ? std::nullopt : std::optional<double>(v); };
        cell.median = finite(quantile(values, 0.5));
        cell.q1 = finite(quantile(values, 0.25));
        cell.q3 = finite(quantile(values, 0.75));
      }
      cells.push_back(std::move(cell));
    }
  }
  std::ofstream summary(std::filesystem::path(out_dir) / "summary.json", std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write summary.json");
  summary << summary_json(cells);
  return cells;
}

std::string summary_json(const std::vector<CellSummary>& cells) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  auto opt = [](const auto& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  for (const auto& c : cells) {
    nlohmann::ordered_json cell;
    cell["domain"] = std::string(to_string(c.domain));
    cell["agent"] = std::string(to_string(c.agent));
    cell["median"] = opt(c.median);
    cell["q1"] = opt(c.q1);
    cell["q3"] = opt(c.q3);
    cell["n_runs"] = c.n_runs;
    cell["n_no_mastery"] = c.n_no_mastery;
    cell["n_aborted"] = c.n_aborted;
    auto& icpts = cell["intercepts"] = nlohmann::ordered_json::array();
    for (const auto& i : c.intercepts) icpts.push_back(opt(i));
    out.push_back(std::move(cell));
  }
  return out.dump(2) + "\n";
}

}  // namespace dipl
