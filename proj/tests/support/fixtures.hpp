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

#ifndef SCARP_TESTS_FIXTURES_HPP_
#define SCARP_TESTS_FIXTURES_HPP_

#include <random>

#include "scarp/graph.hpp"
#include "scarp/solution.hpp"

namespace scarp::testing {

// 4 vertices, edges 12 13 14 23 34, all costs 1, D23 = 12, other demands 1, P = 8.
Instance counterexample();

// Edge id from 1-based endpoints; throws if absent.
int edge_id(const Instance& instance, int u, int v);

// Optimal cost-7 plan on the counterexample: 1-2-3-1 spraying 7 on (2,3) and
// 1 on (1,3); 1-2-3-4-1 spraying 1, 5, 1, 1 on (1,2), (2,3), (3,4), (1,4).
Solution optimal_plan(const Instance& counterexample);

// Random connected instance with 4-6 vertices, 3-6 required edges, integer
// costs and demands and robot_count <= 3.
Instance random_tiny(std::mt19937_64& rng, int index = 0);

}  // namespace scarp::testing

#endif  // SCARP_TESTS_FIXTURES_HPP_
