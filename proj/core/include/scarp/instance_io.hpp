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

#ifndef SCARP_INSTANCE_IO_HPP_
#define SCARP_INSTANCE_IO_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scarp/graph.hpp"
#include "scarp/solution.hpp"

namespace scarp {

// Canonical instance text:
//
//   NAME <token>
//   VERTICES <n>
//   CAPACITY <P>
//   DEPOT <v>
//   EDGES <m>
//   <i> <j> <cost> <demand>     (m lines, 1-based vertex ids)
//
// Lines starting with '#' are comments. Edges given as j > i are normalized.
Instance parse_canonical(std::string_view text);
std::string write_canonical(const Instance& instance);

// Extra header fields carried by the val layout.
struct ValMetadata {
  int vehicles = 0;
  std::string comment;
};

// Reader for the val/gdb CARP layout (NOMBRE, VERTICES, ARISTAS_REQ, ...,
// LISTA_ARISTAS_REQ, DEPOSITO). Every listed edge is required.
Instance parse_val(std::string_view text, ValMetadata* metadata = nullptr);

// Reads a file in either layout; val files are recognized by their keywords.
Instance load_instance(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Solution document (JSON). Vertex ids are 1-based and edges are written
// as (i, j) with i < j.
struct SprayEntry {
  int i = 0;
  int j = 0;
  double amount = 0.0;
  friend bool operator==(const SprayEntry&, const SprayEntry&) = default;
};

struct RouteEntry {
  int robot = 0;
  std::vector<int> vertices;
  std::vector<SprayEntry> spray;
  friend bool operator==(const RouteEntry&, const RouteEntry&) = default;
};

struct SingletonEntry {
  int i = 0;
  int j = 0;
  int count = 0;
  friend bool operator==(const SingletonEntry&, const SingletonEntry&) = default;
};

struct SolutionFile {
  std::string instance;
  Formulation formulation = Formulation::kBasic;
  std::optional<double> objective;
  std::optional<double> lower_bound;
  std::optional<double> gap_percent;
  std::vector<RouteEntry> routes;
  std::vector<SingletonEntry> singletons;
  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

std::string write_solution(const SolutionFile& file);
// Schema checks only: routes closed, edge references with 0 < i < j.
SolutionFile read_solution(std::string_view text);
// Additionally checks routes start at the depot and every edge exists.
SolutionFile read_solution(std::string_view text, const Instance& instance);

SolutionFile make_solution_file(const Instance& instance, const ShortestPathTable& spt,
                                const Solution& solution, std::optional<double> lower_bound,
                                std::optional<double> gap_percent);
Solution solution_from_file(const Instance& instance, const SolutionFile& file);

struct TracePoint {
  double time_s = 0.0;
  double lb = 0.0;
  double ub = 0.0;
  long nodes = 0;
  long accepted_heuristics = 0;
};

// CSV with header time_s,lb,ub,nodes,accepted_heuristics.
std::string write_trace_csv(std::span<const TracePoint> trace);

// Shortest decimal text that parses back to the same double ("inf" for infinity).
std::string format_number(double value);

}  // namespace scarp

#endif  // SCARP_INSTANCE_IO_HPP_
