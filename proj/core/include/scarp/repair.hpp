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

#ifndef SCARP_REPAIR_HPP_
#define SCARP_REPAIR_HPP_

#include <optional>
#include <span>
#include <vector>

#include "scarp/graph.hpp"
#include "scarp/model.hpp"
#include "scarp/solution.hpp"

namespace scarp {

// Where the distance to the next uncovered edge is measured from.
enum class AnchorMode { kCurrent, kDepot };

// Closed walk from the depot covering every edge with spray > threshold:
// jump along a shortest path to the nearest endpoint of an uncovered edge
// (ties to the lower vertex id), traverse one uncovered edge there (edges to
// a higher id first, lowest id first), repeat, then return to the depot.
// Edges crossed while jumping count as covered.
std::vector<int> connectable_path(const Instance& instance, const ShortestPathTable& spt,
                                  std::span<const double> spray, AnchorMode anchor = AnchorMode::kCurrent,
                                  double threshold = 1e-9);

// Distinct arc ids of a closed walk after dropping repeated arcs. A repeated
// u->v is removed together with one v->u when coverage of `cover` and depot
// connectivity survive; whatever repetition remains is resolved by
// re-orienting the edge multiset.
std::vector<int> remove_duplicate(const Instance& instance, std::span<const int> walk,
                                  const std::vector<char>& cover);

// Builds an integral plan from the spray of a relaxation point: one route
// per robot with spray, spray kept, ceil(z) singleton trips for the large
// formulation. Robots are re-sorted and routes reversed when the model has
// symmetry rows. Returns nullopt unless the plan satisfies the model rows,
// the given column bounds and verify_solution.
std::optional<Solution> greedy_routing(const Model& model, const Instance& instance,
                                       const ShortestPathTable& spt, std::span<const double> point,
                                       std::span<const double> lower, std::span<const double> upper,
                                       AnchorMode anchor = AnchorMode::kCurrent);

struct RepairState {
  long gamma = 3000;
  long consecutive_rejections = 0;
  bool enabled = true;
  long accepted_count = 0;

  explicit RepairState(long g = 3000) : gamma(g), enabled(g > 0) {}
};

enum class OfferDecision { kAccept, kReject, kDisabled };

// Accepts a candidate that improves the incumbent by more than 1e-9 and
// resets the rejection counter; failures and non-improving candidates count
// as rejections and disable the heuristic at gamma.
OfferDecision offer(RepairState& state, std::optional<double> candidate_cost, double incumbent_cost);

}  // namespace scarp

#endif  // SCARP_REPAIR_HPP_
