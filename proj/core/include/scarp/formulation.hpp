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

#ifndef SCARP_FORMULATION_HPP_
#define SCARP_FORMULATION_HPP_

#include <iosfwd>
#include <optional>

#include "scarp/graph.hpp"
#include "scarp/model.hpp"

namespace scarp {

// ceil(total_demand / capacity); throws when there is nothing to spray.
int robot_count(double total_demand, double capacity);
int robot_count(const Instance& instance);

// Robots allowed to spray several edges in the large formulation:
// min(|required edges| - 1, robot_count). Returns 0 for a single required edge.
int multi_robot_count(const Instance& instance);

// Basic formulation: X binary per (arc, robot), Y >= 0 per (required edge,
// robot), capacity, demand equality, linking and flow conservation rows.
// Connectivity rows are left out; they are separated lazily.
Model build_basic(const Instance& instance);
Model build_basic(const Instance& instance, int num_robots);

// Large edge demand formulation: multi_robot_count robots (or the override)
// plus integer Z singleton trips per required edge with 0 <= Z <= floor(D / P).
Model build_large(const Instance& instance, const ShortestPathTable& spt,
                  std::optional<int> num_robots = std::nullopt);

// Robot cost ordering (cheaper robots first) and route orientation at the depot.
Model add_symmetry(const Model& model, const Instance& instance);

// Materializes every depot-separating connectivity row for every robot.
// Throws Error if that would exceed max_rows.
Model add_connectivity_rows(const Model& model, const Instance& instance, long max_rows = 20000);

// Connectivity row P * sum_{S->T} x^r >= sum_{edges inside T} y^r.
Row connectivity_row(const Model& model, const Instance& instance, int robot,
                     const std::vector<char>& in_source_side);

// 100 (ub - lb) / lb; nullopt when lb <= 0 or either bound is not finite.
std::optional<double> gap_percent(double ub, double lb);
// 100 (ub - lb) / ub, the incumbent-relative gap reported by most MIP solvers.
std::optional<double> incumbent_gap_percent(double ub, double lb);

// Free-format MPS dump of the model (integer columns wrapped in MARKER lines).
void write_mps(const Model& model, std::ostream& out, const std::string& name = "SCARP");

// Column vector of a solution in the model's variable space. Throws Error if
// the solution does not fit the model (too many robots, repeated arcs).
std::vector<double> solution_to_point(const Model& model, const Instance& instance,
                                      const Solution& solution);

}  // namespace scarp

#endif  // SCARP_FORMULATION_HPP_
