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

#ifndef SCARP_TOOLS_COMMANDS_HPP_
#define SCARP_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scarp/branch_and_cut.hpp"
#include "scarp/graph.hpp"
#include "scarp/solution.hpp"

namespace scarp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInfeasible = 2,
  kExitNoIncumbent = 3,
  kExitUsage = 4,
};

struct Toggles {
  bool lazy_cuts = true;
  bool symmetry = true;
  bool repair = true;
};

// Basic-model, Lazy-constraints, Sym-elimination, Heuristic-repair, Heuristic-noSym.
std::optional<Toggles> preset_toggles(std::string_view name);
const std::vector<std::string>& preset_names();

struct RunConfig {
  std::filesystem::path instance;
  Formulation formulation = Formulation::kBasic;
  double time_limit_s = 7200.0;
  long gamma = 3000;
  double gap_tol = 1e-6;
  std::uint64_t seed = 0;
  int workers = 1;
  Toggles toggles;
  std::string preset;           // empty when toggles were set one by one
  std::optional<int> robots;    // robot count override (multi-spray robots for large)
  std::vector<std::string> fix_spray;  // "robot,i,j,amount" entries, see parse_override
  std::filesystem::path solution_path;
  std::filesystem::path report_path;
  std::filesystem::path trace_path;
};

// Applies one `key = value` setting. Keys use the long flag names with '-' or
// '_' (time-limit, gap-tol, cuts, symmetry, repair, preset, robots,
// fix-spray, ...). Relative paths resolve against base_dir. Throws Error.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

// `key = value` lines, '#' comments.
void apply_config_text(RunConfig& config, std::string_view text, const std::filesystem::path& base_dir = {});

// "robot,i,j,amount" with 1-based robot and vertex ids.
SprayOverride parse_override(const Instance& instance, std::string_view text);

struct RunResult {
  std::optional<Instance> instance;  // empty when loading failed
  SolveReport report;
  int robots = 0;
  bool verified = false;
  bool materialize_failed = false;  // connectivity rows too many to add up front
  std::string error;
};

RunResult run(const RunConfig& config, std::ostream* log = nullptr);

// JSON document with "config", "result" and "timing" blocks. The result
// block holds everything that single-worker runs reproduce exactly.
std::string report_json(const RunConfig& config, const RunResult& result);
std::string result_block_json(const RunResult& result);

int exit_code_for(const SolveReport& report);

// Writes the requested files and a one-line summary to out.
int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream* log);

// Manifest: global `key = value` settings, then one `[run]` block per row;
// each block starts from the globals. `preset = all` expands to the five presets.
std::vector<RunConfig> parse_manifest(std::string_view text, const std::filesystem::path& base_dir);

std::string bench_header();
std::string bench_row(const RunConfig& config, const RunResult& result);
int cmd_bench(const std::vector<RunConfig>& runs, std::ostream& csv, std::ostream* log);

// Header gamma,lb,ub,gap,acc.
int cmd_gamma_sweep(const RunConfig& base, const std::vector<long>& gammas, std::ostream& csv,
                    std::ostream* log);

int cmd_check(const std::filesystem::path& instance_path, const std::filesystem::path& solution_path,
              std::ostream& out);

int cmd_convert(const std::filesystem::path& input, const std::filesystem::path& output);

int cmd_dump_model(const std::filesystem::path& instance_path, Formulation formulation,
                   std::optional<int> robots, const std::filesystem::path& output);

// Writes the counterexample and the reconstructed reference instances.
int cmd_generate(const std::filesystem::path& out_dir, std::ostream& out);

}  // namespace scarp::cli

#endif  // SCARP_TOOLS_COMMANDS_HPP_
