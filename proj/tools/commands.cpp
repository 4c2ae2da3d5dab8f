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

#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "scarp/formulation.hpp"
#include "scarp/generate.hpp"
#include "scarp/instance_io.hpp"
#include "scarp/structure.hpp"

namespace scarp::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  std::replace(out.begin(), out.end(), '_', '-');
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error("bad value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  std::string v(text);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw Error("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"Basic-model", "Lazy-constraints", "Sym-elimination",
                                              "Heuristic-repair", "Heuristic-noSym"};
  return names;
}

std::optional<Toggles> preset_toggles(std::string_view name) {
  if (name == "Basic-model") return Toggles{false, false, false};
  if (name == "Lazy-constraints") return Toggles{true, false, false};
  if (name == "Sym-elimination") return Toggles{true, true, false};
  if (name == "Heuristic-repair") return Toggles{true, true, true};
  if (name == "Heuristic-noSym") return Toggles{true, false, true};
  return std::nullopt;
}

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view raw_value,
                   const fs::path& base_dir) {
  const std::string key = normalize_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "instance") {
    config.instance = resolve(base_dir, value);
  } else if (key == "formulation") {
    config.formulation = parse_formulation(value);
  } else if (key == "time-limit") {
    config.time_limit_s = parse_number<double>(key, value);
  } else if (key == "gamma") {
    config.gamma = parse_number<long>(key, value);
  } else if (key == "gap-tol") {
    config.gap_tol = parse_number<double>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "workers") {
    config.workers = parse_number<int>(key, value);
  } else if (key == "cuts") {
    config.toggles.lazy_cuts = parse_bool(key, value);
    config.preset.clear();
  } else if (key == "symmetry") {
    config.toggles.symmetry = parse_bool(key, value);
    config.preset.clear();
  } else if (key == "repair") {
    config.toggles.repair = parse_bool(key, value);
    config.preset.clear();
  } else if (key == "preset") {
    const auto t = preset_toggles(value);
    if (!t) throw Error("unknown preset '" + std::string(value) + "'");
    config.toggles = *t;
    config.preset = std::string(value);
  } else if (key == "robots") {
    config.robots = parse_number<int>(key, value);
  } else if (key == "fix-spray") {
    config.fix_spray.emplace_back(value);
  } else if (key == "solution") {
    config.solution_path = resolve(base_dir, value);
  } else if (key == "report") {
    config.report_path = resolve(base_dir, value);
  } else if (key == "trace") {
    config.trace_path = resolve(base_dir, value);
  } else {
    throw Error("unknown setting '" + std::string(raw_key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text, const fs::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw Error("line " + std::to_string(number) + ": expected key = value");
    apply_setting(config, l.substr(0, eq), l.substr(eq + 1), base_dir);
  }
}

SprayOverride parse_override(const Instance& instance, std::string_view text) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) throw Error("fix-spray expects robot,i,j,amount");
  const int robot = parse_number<int>("fix-spray robot", parts[0]);
  const int i = parse_number<int>("fix-spray vertex", parts[1]);
  const int j = parse_number<int>("fix-spray vertex", parts[2]);
  const double amount = parse_number<double>("fix-spray amount", parts[3]);
  const auto e = instance.find_edge(i - 1, j - 1);
  if (!e) throw Error("fix-spray references a missing edge");
  if (robot < 1) throw Error("fix-spray robot ids start at 1");
  return {robot - 1, *e, amount};
}

RunResult run(const RunConfig& config, std::ostream* log) {
  RunResult result;
  result.instance = load_instance(config.instance);
  const Instance& instance = *result.instance;
  const ShortestPathTable spt = dijkstra_all(instance);
  Model model = config.formulation == Formulation::kBasic
                    ? (config.robots ? build_basic(instance, *config.robots) : build_basic(instance))
                    : build_large(instance, spt, config.robots);
  result.robots = model.num_robots;

  SolveParams params;
  params.time_limit_s = config.time_limit_s;
  params.gap_tol = config.gap_tol;
  params.gamma = config.gamma;
  params.seed = config.seed;
  params.workers = config.workers;
  params.lazy_cuts = config.toggles.lazy_cuts;
  params.symmetry = config.toggles.symmetry;
  params.repair = config.toggles.repair;
  params.log = log;
  for (const std::string& o : config.fix_spray) params.overrides.push_back(parse_override(instance, o));

  if (!params.lazy_cuts) {
    try {
      model = add_connectivity_rows(model, instance, params.max_materialized_rows);
    } catch (const Error& e) {
      result.materialize_failed = true;
      result.error = e.what();
      return result;
    }
  }
  result.report = solve(model, instance, params);
  if (result.report.incumbent) {
    result.report.incumbent = polish_solution(instance, *result.report.incumbent, model.num_robots);
    result.verified = verify_solution(instance, *result.report.incumbent, model.num_robots).feasible;
  }
  return result;
}

int exit_code_for(const SolveReport& report) {
  switch (report.status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasible:
      return kExitOk;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
    case SolveStatus::kLimit:
      return kExitNoIncumbent;
  }
  return kExitFailure;
}

namespace {

json result_block(const RunResult& r) {
  json j;
  if (r.materialize_failed) {
    j["status"] = "fail";
    j["error"] = r.error;
    return j;
  }
  const SolveReport& rep = r.report;
  const bool has = rep.incumbent.has_value();
  j["status"] = to_string(rep.status);
  j["objective"] = has ? json(rep.ub) : json(nullptr);
  j["lower_bound"] = number_or_null(rep.lb);
  j["gap_percent"] = number_or_null(rep.gap_percent);
  j["incumbent_gap_percent"] = number_or_null(incumbent_gap_percent(rep.ub, rep.lb));
  j["robots"] = r.robots;
  j["verified"] = r.verified;
  j["explored_nodes"] = rep.explored_nodes;
  j["simplex_iterations"] = rep.simplex_iterations;
  j["accepted_heuristics"] = rep.accepted_heuristics;
  j["repair_attempts"] = rep.repair_attempts;
  j["repair_incumbents"] = rep.repair_incumbents;
  j["lp_incumbents"] = rep.lp_incumbents;
  j["cuts_added"] = rep.cuts_added;
  j["lp_failures"] = rep.lp_failures;
  j["root_bound"] = rep.root_bound;
  return j;
}

}  // namespace

std::string result_block_json(const RunResult& result) { return result_block(result).dump(2); }

std::string report_json(const RunConfig& config, const RunResult& result) {
  json doc;
  json c;
  c["instance"] = config.instance.generic_string();
  c["name"] = result.instance ? json(result.instance->name()) : json(nullptr);
  c["formulation"] = std::string(to_string(config.formulation));
  c["preset"] = config.preset.empty() ? json(nullptr) : json(config.preset);
  c["lazy_cuts"] = config.toggles.lazy_cuts;
  c["symmetry"] = config.toggles.symmetry;
  c["repair"] = config.toggles.repair;
  c["time_limit_s"] = config.time_limit_s;
  c["gamma"] = config.gamma;
  c["gap_tol"] = config.gap_tol;
  c["seed"] = config.seed;
  c["workers"] = config.workers;
  c["robots"] = config.robots ? json(*config.robots) : json(nullptr);
  c["fix_spray"] = config.fix_spray;
  doc["config"] = c;
  doc["result"] = result_block(result);
  doc["timing"] = {{"wall_time_s", result.report.wall_time_s}};
  return doc.dump(2) + "\n";
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream* log) {
  const RunResult r = run(config, log);
  if (!config.report_path.empty()) write_text_file(config.report_path, report_json(config, r));
  if (r.materialize_failed) {
    out << "status=fail " << r.error << "\n";
    return kExitFailure;
  }
  const SolveReport& rep = r.report;
  if (!config.trace_path.empty()) write_text_file(config.trace_path, write_trace_csv(rep.trace));
  if (!config.solution_path.empty() && rep.incumbent) {
    const ShortestPathTable spt = dijkstra_all(*r.instance);
    const SolutionFile file = make_solution_file(*r.instance, spt, *rep.incumbent, rep.lb, rep.gap_percent);
    write_text_file(config.solution_path, write_solution(file));
  }
  out << "status=" << to_string(rep.status);
  if (rep.incumbent) out << " obj=" << format_number(rep.ub);
  out << " lb=" << format_number(rep.lb);
  out << " gap=" << (rep.gap_percent ? fixed(*rep.gap_percent, 2) + "%" : std::string("n/a"));
  out << " nodes=" << rep.explored_nodes << " acc=" << rep.accepted_heuristics
      << " time=" << fixed(rep.wall_time_s, 2) << "s\n";
  return exit_code_for(rep);
}

std::vector<RunConfig> parse_manifest(std::string_view text, const fs::path& base_dir) {
  RunConfig globals;
  std::vector<std::vector<std::pair<std::string, std::string>>> blocks;
  bool in_block = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    if (l == "[run]") {
      blocks.emplace_back();
      in_block = true;
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw Error("manifest line " + std::to_string(number) + ": expected key = value");
    if (in_block) {
      blocks.back().emplace_back(std::string(l.substr(0, eq)), std::string(l.substr(eq + 1)));
    } else {
      apply_setting(globals, l.substr(0, eq), l.substr(eq + 1), base_dir);
    }
  }
  std::vector<RunConfig> runs;
  for (const auto& block : blocks) {
    std::vector<std::string> presets{""};
    RunConfig base = globals;
    std::vector<std::pair<std::string, std::string>> rest;
    for (const auto& [k, v] : block) {
      if (normalize_key(k) == "preset" && trim(v) == "all") {
        presets = preset_names();
      } else {
        rest.emplace_back(k, v);
      }
    }
    for (const std::string& p : presets) {
      RunConfig c = base;
      if (!p.empty()) apply_setting(c, "preset", p, base_dir);
      for (const auto& [k, v] : rest) apply_setting(c, k, v, base_dir);
      if (c.instance.empty()) throw Error("manifest run without an instance");
      runs.push_back(std::move(c));
    }
  }
  return runs;
}

std::string bench_header() {
  return "instance,n,m,p,r,sum_d,config,formulation,status,obj,gap,t,acc,nodes,simplex_iter\n";
}

std::string bench_row(const RunConfig& config, const RunResult& r) {
  std::ostringstream row;
  const Instance& g = *r.instance;
  row << g.name() << ',' << g.num_vertices() << ',' << g.num_edges() << ',' << format_number(g.capacity())
      << ',' << r.robots << ',' << format_number(g.total_demand()) << ','
      << (config.preset.empty() ? std::string("custom") : config.preset) << ','
      << to_string(config.formulation) << ',';
  if (r.materialize_failed || !r.report.incumbent) {
    row << (r.materialize_failed ? "fail" : to_string(r.report.status)) << ",fail,,,,,\n";
    return row.str();
  }
  const SolveReport& rep = r.report;
  row << to_string(rep.status) << ',' << format_number(rep.ub) << ','
      << (rep.gap_percent ? fixed(*rep.gap_percent, 2) : std::string()) << ',' << fixed(rep.wall_time_s, 2)
      << ',' << rep.accepted_heuristics << ',' << rep.explored_nodes << ',' << rep.simplex_iterations << '\n';
  return row.str();
}

int cmd_bench(const std::vector<RunConfig>& runs, std::ostream& csv, std::ostream* log) {
  csv << bench_header();
  for (const RunConfig& c : runs) {
    if (log) *log << "# " << c.instance.generic_string() << " " << (c.preset.empty() ? "custom" : c.preset) << "\n";
    csv << bench_row(c, run(c, nullptr)) << std::flush;
  }
  return kExitOk;
}

int cmd_gamma_sweep(const RunConfig& base, const std::vector<long>& gammas, std::ostream& csv,
                    std::ostream* log) {
  csv << "gamma,lb,ub,gap,acc\n";
  for (long gamma : gammas) {
    RunConfig c = base;
    c.gamma = gamma;
    const RunResult r = run(c, log);
    if (r.materialize_failed) throw Error(r.error);
    const SolveReport& rep = r.report;
    csv << gamma << ',' << format_number(rep.lb) << ','
        << (rep.incumbent ? format_number(rep.ub) : std::string()) << ','
        << (rep.gap_percent ? fixed(*rep.gap_percent, 2) : std::string()) << ',' << rep.accepted_heuristics
        << '\n'
        << std::flush;
  }
  return kExitOk;
}

int cmd_check(const fs::path& instance_path, const fs::path& solution_path, std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  const SolutionFile file = read_solution(read_text_file(solution_path), instance);
  const Solution sol = solution_from_file(instance, file);
  const VerificationReport report = verify_solution(instance, sol);
  const double cost = solution_cost(instance, dijkstra_all(instance), sol);
  if (report.feasible) {
    out << "feasible cost=" << format_number(cost) << "\n";
    return kExitOk;
  }
  out << "infeasible cost=" << format_number(cost) << " violations=" << report.violations.size() << "\n";
  for (const Violation& v : report.violations) {
    out << "  " << to_string(v.kind);
    if (v.robot >= 0) out << " robot=" << v.robot + 1;
    if (v.edge >= 0) out << " edge=(" << instance.edge(v.edge).i + 1 << "," << instance.edge(v.edge).j + 1 << ")";
    out << " " << v.message << "\n";
  }
  return kExitFailure;
}

int cmd_convert(const fs::path& input, const fs::path& output) {
  const std::string text = write_canonical(load_instance(input));
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    write_text_file(output, text);
  }
  return kExitOk;
}

int cmd_dump_model(const fs::path& instance_path, Formulation formulation, std::optional<int> robots,
                   const fs::path& output) {
  const Instance instance = load_instance(instance_path);
  const Model model = formulation == Formulation::kBasic
                          ? (robots ? build_basic(instance, *robots) : build_basic(instance))
                          : build_large(instance, dijkstra_all(instance), robots);
  if (output.empty() || output == "-") {
    write_mps(model, std::cout, instance.name());
  } else {
    std::ofstream f(output);
    if (!f) throw Error("cannot write " + output.string());
    write_mps(model, f, instance.name());
  }
  return kExitOk;
}

int cmd_generate(const fs::path& out_dir, std::ostream& out) {
  fs::create_directories(out_dir);
  const fs::path ce = out_dir / "counterexample.txt";
  write_text_file(ce, write_canonical(counterexample_instance()));
  out << ce.generic_string() << "\n";
  for (const OrchardSpec& spec : reference_orchards()) {
    const fs::path p = out_dir / (spec.name + ".txt");
    write_text_file(p, write_canonical(generate_orchard(spec)));
    out << p.generic_string() << "\n";
  }
  return kExitOk;
}

}  // namespace scarp::cli
