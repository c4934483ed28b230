#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dipl/harness.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_intercept(std::ostream& out, const std::optional<int>& icpt) {
  if (icpt)
    out << "mastery_intercept " << *icpt << '\n';
  else
    out << "mastery_intercept none\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposed inductive procedure learning: training runs and ablations"};
  app.require_subcommand(1);

  dipl::RunConfig run;
  std::string domain = "fractions", agent = "dipl", out_csv, transcript_path;
  bool no_implicit = false;
  auto* train = app.add_subcommand("train", "train one agent on one domain and write a per-problem CSV");
  train->add_option("--domain", domain, "fractions | mc-addition")->required();
  train->add_option("--agent", agent, "dipl | dipl-norel | how-lhs | dt-demos")->required();
  train->add_option("--problems", run.problems)->required();
  train->add_option("--seed", run.seed)->required();
  train->add_option("--window", run.window)->capture_default_str();
  train->add_option("--threshold", run.threshold)->capture_default_str();
  train->add_option("--retrain-every", run.retrain_every)->capture_default_str();
  train->add_flag("--no-implicit-negatives", no_implicit);
  train->add_option("--transcript", transcript_path, "write the per-event agent transcript here");
  train->add_option("--out", out_csv)->required();

  std::string config_path, out_dir;
  auto* ablate = app.add_subcommand("ablate", "run a domain x agent x seed suite");
  ablate->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  ablate->add_option("--out-dir", out_dir)->required();

  std::string in_csv;
  int window = 10;
  double threshold = 0.1;
  auto* mastery = app.add_subcommand("mastery", "mastery intercept of a run CSV");
  mastery->add_option("--in", in_csv)->required()->check(CLI::ExistingFile);
  mastery->add_option("--window", window)->capture_default_str();
  mastery->add_option("--threshold", threshold)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      run.domain = dipl::parse_domain(domain);
      run.agent = dipl::parse_agent(agent);
      run.implicit_negatives = !no_implicit;
      std::ofstream transcript;
      if (!transcript_path.empty()) {
        transcript.open(transcript_path, std::ios::binary);
        if (!transcript) throw std::runtime_error("cannot write " + transcript_path);
      }
      std::vector<dipl::RunRecord> records;
      int status = 0;
      try {
        records = dipl::run_training(run, transcript_path.empty() ? nullptr : &transcript);
      } catch (const dipl::RunAborted& e) {
        std::cerr << e.what() << '\n';
        records = e.partial();
        status = 3;
      }
      std::ofstream out(out_csv, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + out_csv);
      dipl::write_csv(out, records);
      print_intercept(std::cout, dipl::mastery_intercept(records, run.window, run.threshold));
      return status;
    }
    if (*ablate) {
      const auto suite = dipl::parse_suite(slurp(config_path));
      const auto cells = dipl::run_ablation(suite, out_dir);
      std::cout << dipl::summary_json(cells);
      return 0;
    }
    if (*mastery) {
      std::ifstream in(in_csv, std::ios::binary);
      print_intercept(std::cout, dipl::mastery_intercept(dipl::read_csv(in), window, threshold));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
