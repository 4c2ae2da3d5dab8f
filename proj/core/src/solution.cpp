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

#include "scarp/solution.hpp"

#include <string>

namespace scarp {

std::string_view to_string(Formulation f) {
  return f == Formulation::kBasic ? "basic" : "large";
}

Formulation parse_formulation(std::string_view text) {
  if (text == "basic") return Formulation::kBasic;
  if (text == "large") return Formulation::kLarge;
  throw Error("unknown formulation '" + std::string(text) + "' (expected basic or large)");
}

double singleton_trip_cost(const Instance& instance, const ShortestPathTable& spt, int e) {
  const Edge& edge = instance.edge(e);
  const int s = instance.depot();
  return spt.dist(s, edge.i) + edge.cost + spt.dist(edge.j, s);
}

double route_cost(const Instance& instance, const std::vector<int>& route) {
  double total = 0.0;
  for (size_t k = 0; k + 1 < route.size(); ++k) {
    auto e = instance.find_edge(route[k], route[k + 1]);
    if (!e) throw Error("route uses a missing edge");
    total += instance.edge(*e).cost;
  }
  return total;
}

double solution_cost(const Instance& instance, const ShortestPathTable& spt,
                     const Solution& solution) {
  double total = 0.0;
  for (const auto& route : solution.routes) total += route_cost(instance, route);
  for (size_t e = 0; e < solution.singletons.size(); ++e) {
    if (solution.singletons[e] > 0)
      total += solution.singletons[e] * singleton_trip_cost(instance, spt, static_cast<int>(e));
  }
  return total;
}

}  // namespace scarp
