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

#ifndef SCARP_STRUCTURE_HPP_
#define SCARP_STRUCTURE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "scarp/graph.hpp"
#include "scarp/solution.hpp"

namespace scarp {

using SprayMatrix = std::vector<std::vector<double>>;  // [robot][edge]

// Robots by support size: empty, one edge, two or more edges.
struct SupportClasses {
  std::vector<int> r0;
  std::vector<int> r1;
  std::vector<int> r2plus;
};

SupportClasses support_classes(const SprayMatrix& spray, double threshold = 1e-9);

// Robot/edge incidence of positive spray entries.
struct SprayBipartite {
  int num_robots = 0;
  int num_edges = 0;
  std::vector<std::vector<int>> robot_edges;  // sorted edge ids per robot
  std::vector<std::vector<int>> edge_robots;  // sorted robot ids per edge

  int robot_degree(int r) const { return static_cast<int>(robot_edges[static_cast<size_t>(r)].size()); }
};

SprayBipartite spray_bipartite(const SprayMatrix& spray, double threshold = 1e-9);

// Shifts spray around cycles of the robot/edge incidence among multi-edge
// robots until it is a forest. Row sums (robot load) and column sums (edge
// coverage) are unchanged and every shift zeroes at least one entry.
SprayMatrix cancel_cycles(const SprayMatrix& spray, double delta_min = 1e-7);

// Same on a solution; routes and singleton trips are kept. Throws Error if
// the input is not feasible.
Solution cancel_cycles(const Instance& instance, const Solution& solution);

// Output cleanup: cancel_cycles, then spray amounts snapped to a 1e-9 grid.
// Returns the input unchanged if the cleaned plan fails verification.
Solution polish_solution(const Instance& instance, const Solution& solution,
                         std::optional<int> robot_limit = std::nullopt);

enum class ViolationKind {
  kStructure,
  kCapacity,
  kNonNegativity,
  kDemand,
  kLinking,
  kFlow,
  kConnectivity,
  kBinary,
  kSingleton,
  kRobotCount
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::kStructure;
  int robot = -1;  // -1 when not robot specific
  int edge = -1;   // -1 when not edge specific
  std::string message;
};

struct VerificationReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Direct feasibility check of a plan under its formulation: capacity,
// non-negativity, demand (equality for basic, with singleton trips for
// large), linking, closed routes, depot-rooted routes, no arc used twice
// in the same direction, singleton integrality and bound. robot_limit
// defaults to robot_count (basic) or multi_robot_count (large).
VerificationReport verify_solution(const Instance& instance, const Solution& solution,
                                   std::optional<int> robot_limit = std::nullopt,
                                   double tolerance = 1e-6);

// Fixes y^robot_e to amount.
struct SprayOverride {
  int robot = 0;
  int edge = 0;
  double amount = 0.0;
  friend bool operator==(const SprayOverride&, const SprayOverride&) = default;
};

struct OracleOptions {
  int max_required_edges = 6;
  int max_robots = 3;
  std::optional<int> robots;  // override of the formulation's robot count
};

// Exact optimum by enumeration: per subset of required edges the cheapest
// closed walk from the depot covering it, then every assignment of subsets
// to robots (and singleton counts for the large formulation) whose spray
// transport problem is feasible. Returns nullopt when no plan exists.
// Throws Error if the instance exceeds the enumeration limits.
std::optional<Solution> brute_force_solve(const Instance& instance, Formulation formulation,
                                          const std::vector<SprayOverride>& overrides = {},
                                          const OracleOptions& options = {});

// Four vertices, edges (1,2) (1,3) (1,4) (2,3) (3,4), unit costs, D23 = 12,
// other demands 1, P = 8: splitting the large edge beats a full-capacity
// singleton robot.
Instance counterexample_instance();

}  // namespace scarp

#endif  // SCARP_STRUCTURE_HPP_
