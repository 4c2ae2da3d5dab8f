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

#ifndef SCARP_SOLUTION_HPP_
#define SCARP_SOLUTION_HPP_

#include <string_view>
#include <vector>

#include "scarp/graph.hpp"

namespace scarp {

enum class Formulation { kBasic, kLarge };

std::string_view to_string(Formulation f);
Formulation parse_formulation(std::string_view text);

// Integral routes per robot plus spray amounts. routes[r] is a closed walk
// starting and ending at the depot, or empty for an unused robot.
// spray[r][e] is the amount robot r sprays on edge e. singletons[e] counts
// full-capacity single-edge trips (large formulation only; empty otherwise).
struct Solution {
  Formulation formulation = Formulation::kBasic;
  std::vector<std::vector<int>> routes;
  std::vector<std::vector<double>> spray;
  std::vector<int> singletons;

  int num_robots() const { return static_cast<int>(routes.size()); }
};

// Cost of an out-and-back trip that sprays edge e alone: SP(depot, i) + C + SP(j, depot).
double singleton_trip_cost(const Instance& instance, const ShortestPathTable& spt, int e);

double route_cost(const Instance& instance, const std::vector<int>& route);

// Sum of route costs plus singleton trip costs.
double solution_cost(const Instance& instance, const ShortestPathTable& spt,
                     const Solution& solution);

}  // namespace scarp

#endif  // SCARP_SOLUTION_HPP_
