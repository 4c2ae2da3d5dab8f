// Copyright 2026 The SCARP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "scarp/instance_io.hpp"

namespace {

using scarp::cli::RunConfig;

// Flags that mirror config keys; set only when given so they override a config file.
struct RunFlags {
  std::string config;
  std::string instance;
  std::string formulation;
  std::string preset;
  std::optional<double> time_limit;
  std::optional<long> gamma;
  std::optional<double> gap_tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> robots;
  bool no_cuts = false;
  bool no_symmetry = false;
  bool no_repair = false;
  std::vector<std::string> fix_spray;
  std::string solution;
  std::string report;
  std::string trace;
  bool quiet = false;

  void add_to(CLI::App& app, bool with_outputs) {
    app.add_option("instance", instance, "Instance file (canonical or val layout)");
    app.add_option("--config", config, "key = value settings applied before the flags");
    app.add_option("--formulation", formulation, "basic or large")->check(CLI::IsMember({"basic", "large"}));
    app.add_option("--preset", preset, "Basic-model, Lazy-constraints, Sym-elimination, Heuristic-repair, Heuristic-noSym");
    app.add_option("--time-limit", time_limit, "Seconds (default 7200)");
    app.add_option("--gamma", gamma, "Consecutive rejected repairs before the heuristic stops (default 3000)");
    app.add_option("--gap-tol", gap_tol, "Relative gap at which the search stops (default 1e-6)");
    app.add_option("--seed", seed, "Nonzero shuffles ties between equal-bound nodes");
    app.add_option("--workers", workers, "Search threads (1 is deterministic)");
    app.add_option("--robots", robots, "Robot count override (multi-spray robots for the large formulation)");
    app.add_flag("--no-cuts", no_cuts, "Add every connectivity row up front instead of separating");
    app.add_flag("--no-symmetry", no_symmetry, "Leave out symmetry rows");
    app.add_flag("--no-repair", no_repair, "Disable the greedy routing repair");
    app.add_option("--fix-spray", fix_spray, "Fix a spray amount: robot,i,j,amount (1-based)");
    app.add_flag("-q,--quiet", quiet, "No progress log on stderr");
    if (with_outputs) {
      app.add_option("--solution", solution, "Solution JSON output");
      app.add_option("--report", report, "Report JSON output");
      app.add_option("--trace", trace, "Bounds trace CSV output");
    }
  }

  RunConfig build() const {
    RunConfig c;
    if (!config.empty()) {
      const std::filesystem::path p(config);
      scarp::cli::apply_config_text(c, scarp::read_text_file(p), p.parent_path());
    }
    if (!instance.empty()) c.instance = instance;
    if (!formulation.empty()) scarp::cli::apply_setting(c, "formulation", formulation);
    if (!preset.empty()) scarp::cli::apply_setting(c, "preset", preset);
    if (time_limit) c.time_limit_s = *time_limit;
    if (gamma) c.gamma = *gamma;
    if (gap_tol) c.gap_tol = *gap_tol;
    if (seed) c.seed = *seed;
    if (workers) c.workers = *workers;
    if (robots) c.robots = *robots;
    if (no_cuts) scarp::cli::apply_setting(c, "cuts", "off");
    if (no_symmetry) scarp::cli::apply_setting(c, "symmetry", "off");
    if (no_repair) scarp::cli::apply_setting(c, "repair", "off");
    for (const auto& f : fix_spray) c.fix_spray.push_back(f);
    if (!solution.empty()) c.solution_path = solution;
    if (!report.empty()) c.report_path = report;
    if (!trace.empty()) c.trace_path = trace;
    if (c.instance.empty()) throw scarp::Error("no instance given");
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Splittable capacitated arc routing solver"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance");
  solve_flags.add_to(*solve, true);

  std::string manifest;
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench", "Run a manifest of instances and configurations, CSV out");
  bench->add_option("manifest", manifest, "Manifest file")->required();
  bench->add_option("-o,--output", bench_out, "CSV path (stdout when omitted)");

  RunFlags sweep_flags;
  std::vector<long> gammas;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("gamma-sweep", "One solve per gamma value, CSV out");
  sweep_flags.add_to(*sweep, false);
  sweep->add_option("--gammas", gammas, "Gamma values")->required()->delimiter(',');
  sweep->add_option("-o,--output", sweep_out, "CSV path (stdout when omitted)");

  std::string check_instance;
  std::string check_solution;
  CLI::App* check = app.add_subcommand("check", "Verify a solution file against an instance");
  check->add_option("instance", check_instance)->required();
  check->add_option("solution", check_solution)->required();

  std::string convert_in;
  std::string convert_out;
  CLI::App* convert = app.add_subcommand("convert", "Rewrite an instance in the canonical layout");
  convert->add_option("input", convert_in)->required();
  convert->add_option("output", convert_out, "Output path (stdout when omitted)");

  std::string dump_instance;
  std::string dump_formulation = "basic";
  std::string dump_out;
  std::optional<int> dump_robots;
  CLI::App* dump = app.add_subcommand("dump-model", "Write the model as free-format MPS");
  dump->add_option("instance", dump_instance)->required();
  dump->add_option("--formulation", dump_formulation)->check(CLI::IsMember({"basic", "large"}));
  dump->add_option("--robots", dump_robots);
  dump->add_option("-o,--output", dump_out);

  std::string gen_dir = "data/instances";
  CLI::App* generate = app.add_subcommand("generate", "Write the counterexample and reconstructed reference instances");
  generate->add_option("--out-dir", gen_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : scarp::cli::kExitUsage;
  }

  try {
    if (*solve) {
      const RunConfig c = solve_flags.build();
      return scarp::cli::cmd_solve(c, std::cout, solve_flags.quiet ? nullptr : &std::cerr);
    }
    if (*bench) {
      const std::filesystem::path p(manifest);
      const auto runs = scarp::cli::parse_manifest(scarp::read_text_file(p), p.parent_path());
      if (bench_out.empty()) return scarp::cli::cmd_bench(runs, std::cout, &std::cerr);
      std::ostringstream csv;
      const int code = scarp::cli::cmd_bench(runs, csv, &std::cerr);
      scarp::write_text_file(bench_out, csv.str());
      return code;
    }
    if (*sweep) {
      const RunConfig c = sweep_flags.build();
      std::ostream* log = sweep_flags.quiet ? nullptr : &std::cerr;
      if (sweep_out.empty()) return scarp::cli::cmd_gamma_sweep(c, gammas, std::cout, log);
      std::ostringstream csv;
      const int code = scarp::cli::cmd_gamma_sweep(c, gammas, csv, log);
      scarp::write_text_file(sweep_out, csv.str());
      return code;
    }
    if (*check) return scarp::cli::cmd_check(check_instance, check_solution, std::cout);
    if (*convert) return scarp::cli::cmd_convert(convert_in, convert_out);
    if (*dump)
      return scarp::cli::cmd_dump_model(dump_instance, scarp::parse_formulation(dump_formulation), dump_robots,
                                        dump_out);
    if (*generate) return scarp::cli::cmd_generate(gen_dir, std::cout);
  } catch (const scarp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scarp::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scarp::cli::kExitFailure;
  }
  return scarp::cli::kExitUsage;
}
