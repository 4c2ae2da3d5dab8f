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

#ifndef SCARP_BRANCH_AND_CUT_HPP_
#define SCARP_BRANCH_AND_CUT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "scarp/graph.hpp"
#include "scarp/instance_io.hpp"
#include "scarp/model.hpp"
#include "scarp/repair.hpp"
#include "scarp/solution.hpp"
#include "scarp/structure.hpp"

namespace scarp {

// Connectivity cut P * sum_{S->T} x^r >= sum_{edges inside T} y^r with the
// depot in S.
struct Cut {
  int robot = 0;
  std::vector<char> source_side;  // 1 for vertices in S
  Row row;
};

// For each robot: S is what the depot reaches over arcs with x > threshold;
// every connected component C of the rest whose spray exceeds the crossing
// capacity by more than 1e-6 yields the cut (V \ C, C).
std::vector<Cut> separate_connectivity(const Model& model, const Instance& instance,
                                       std::span<const double> point, double support_threshold = 1e-6);

struct BranchDecision {
  int column = -1;
  double value = 0.0;
  double down_upper = 0.0;  // child 1: column <= floor(value)
  double up_lower = 0.0;    // child 2: column >= ceil(value)
};

// Integer column whose fractional part is closest to 0.5 (ties to the lowest
// index). Throws Error if every integer column is within tolerance of an integer.
BranchDecision branch(const Model& model, std::span<const double> point, double tolerance = 1e-6);

enum class NodeOrder { kBestBound, kDepthFirst };

struct SolveParams {
  double time_limit_s = 7200.0;
  double gap_tol = 1e-6;  // relative, (UB - LB) / UB
  long gamma = 3000;
  int cut_depth_max = 10;
  double cut_gap_min = 0.01;  // fraction, compared with (UB - LB) / LB
  double support_threshold = 1e-6;
  NodeOrder node_order = NodeOrder::kBestBound;
  bool lazy_cuts = true;  // false: every connectivity row is added up front
  bool symmetry = true;
  bool repair = true;
  int workers = 1;
  std::uint64_t seed = 0;  // nonzero: shuffles the order of equal-bound nodes
  std::vector<SprayOverride> overrides;
  AnchorMode anchor = AnchorMode::kCurrent;
  int max_cut_rounds = 20;
  long node_limit = -1;
  long max_materialized_rows = 20000;
  std::ostream* log = nullptr;
  double log_interval_s = 5.0;
  bool record_cuts = false;
};

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kLimit };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kLimit;
  std::optional<Solution> incumbent;
  double ub = kInfinity;
  double lb = 0.0;
  std::optional<double> gap_percent;
  long explored_nodes = 0;
  long simplex_iterations = 0;
  long accepted_heuristics = 0;
  long repair_attempts = 0;
  long repair_incumbents = 0;  // incumbent updates that came from the repair heuristic
  long lp_incumbents = 0;      // incumbent updates from integral relaxations
  long cuts_added = 0;
  long lp_failures = 0;
  double root_bound = 0.0;
  std::vector<TracePoint> trace;
  std::vector<Cut> cuts;  // filled when SolveParams::record_cuts is set
  double wall_time_s = 0.0;
};

// Best-first branch-and-cut on the model (built by build_basic or
// build_large without symmetry or connectivity rows; solve adds them as the
// params ask). Throws Error if materializing connectivity rows is too large.
SolveReport solve(const Model& model, const Instance& instance, const SolveParams& params);

}  // namespace scarp

#endif  // SCARP_BRANCH_AND_CUT_HPP_
