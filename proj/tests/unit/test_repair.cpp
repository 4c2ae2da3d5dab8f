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

#include <doctest.h>

#include <random>
#include <vector>

#include "scarp/formulation.hpp"
#include "scarp/repair.hpp"
#include "scarp/structure.hpp"
#include "fixtures.hpp"

using namespace scarp;
using scarp::testing::edge_id;
using scarp::testing::optimal_plan;

namespace {

std::vector<double> support_of(const Instance& g, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<double> y(static_cast<size_t>(g.num_edges()), 0.0);
  for (auto [u, v] : edges) y[static_cast<size_t>(edge_id(g, u, v))] = 1.0;
  return y;
}

std::vector<double> lower_of(const Model& m) {
  std::vector<double> out;
  for (const Column& c : m.columns) out.push_back(c.lower);
  return out;
}

std::vector<double> upper_of(const Model& m) {
  std::vector<double> out;
  for (const Column& c : m.columns) out.push_back(c.upper);
  return out;
}

// Relaxation-style point carrying only spray values.
std::vector<double> spray_point(const Model& m, const SprayMatrix& y) {
  std::vector<double> x(static_cast<size_t>(m.num_cols()), 0.0);
  for (int r = 0; r < m.num_robots; ++r)
    for (size_t e = 0; e < y[static_cast<size_t>(r)].size(); ++e)
      if (auto c = m.index.y(r, static_cast<int>(e))) x[static_cast<size_t>(*c)] = y[static_cast<size_t>(r)][e];
  return x;
}

}  // namespace

TEST_CASE("connectable_path") {
  const Instance g = counterexample_instance();
  const ShortestPathTable sp = dijkstra_all(g);
  CHECK(connectable_path(g, sp, support_of(g, {{1, 2}})) == std::vector<int>{0, 1, 0});
  CHECK(connectable_path(g, sp, support_of(g, {})) == std::vector<int>{0});
  const auto w = connectable_path(g, sp, support_of(g, {{2, 3}, {3, 4}}));
  CHECK(w == std::vector<int>{0, 1, 2, 3, 0});
  CHECK(route_cost(g, w) == 4.0);
  // Anchored at the depot the second jump goes back towards vertex 1's
  // neighborhood: from 3 the nearest endpoint of (3,4) by depot distance is 3 itself.
  CHECK(connectable_path(g, sp, support_of(g, {{2, 3}, {3, 4}}), AnchorMode::kDepot) ==
        std::vector<int>{0, 1, 2, 3, 0});
}

TEST_CASE("connectable_path modes differ once the walk leaves the depot area") {
  // Path 1-2-3-4-5 with a chord 1-5: support (4,5) and (2,3).
  const Instance g("path", 5,
                   {{0, 1, 1.0, 0.0}, {1, 2, 1.0, 1.0}, {2, 3, 1.0, 0.0}, {3, 4, 1.0, 1.0}, {0, 4, 1.0, 0.0}},
                   10.0);
  const ShortestPathTable sp = dijkstra_all(g);
  std::vector<double> y(5, 0.0);
  y[static_cast<size_t>(*g.find_edge(1, 2))] = 1.0;
  y[static_cast<size_t>(*g.find_edge(3, 4))] = 1.0;
  const auto current = connectable_path(g, sp, y, AnchorMode::kCurrent);
  const auto depot = connectable_path(g, sp, y, AnchorMode::kDepot);
  CHECK(current == std::vector<int>{0, 1, 2, 3, 4, 0});
  CHECK(depot.front() == 0);
  CHECK(depot.back() == 0);
  CHECK(route_cost(g, depot) >= route_cost(g, current));
}

TEST_CASE("remove_duplicate") {
  const Instance g = counterexample_instance();
  std::vector<char> cover(5, 0);
  cover[static_cast<size_t>(edge_id(g, 1, 2))] = 1;
  const std::vector<int> walk{0, 1, 0, 1, 2, 0};
  const auto arcs = remove_duplicate(g, walk, cover);
  CHECK(arcs == std::vector<int>{*g.find_arc(0, 1), *g.find_arc(2, 0), *g.find_arc(1, 2)});
  const auto route = euler_circuit(g, arcs, 0);
  CHECK(route_cost(g, route) <= route_cost(g, walk));

  const std::vector<int> plain{0, 1, 2, 0};
  CHECK(remove_duplicate(g, plain, cover).size() == 3);
  const std::vector<int> back{0, 1, 0};
  CHECK(remove_duplicate(g, back, cover) == std::vector<int>{*g.find_arc(0, 1), *g.find_arc(1, 0)});
}

TEST_CASE("remove_duplicate never breaks coverage or balance") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance g = scarp::testing::random_tiny(rng, trial);
    const ShortestPathTable sp = dijkstra_all(g);
    // Random closed walk from the depot.
    std::vector<int> walk{0};
    std::uniform_int_distribution<int> len(2, 12);
    const int steps = len(rng);
    for (int k = 0; k < steps; ++k) {
      const auto inc = g.incident(walk.back());
      std::uniform_int_distribution<size_t> pick(0, inc.size() - 1);
      walk.push_back(g.opposite(inc[pick(rng)], walk.back()));
    }
    const auto home = sp.path(walk.back(), 0);
    walk.insert(walk.end(), home.begin() + 1, home.end());
    std::vector<char> cover(static_cast<size_t>(g.num_edges()), 0);
    for (size_t k = 0; k + 1 < walk.size(); ++k)
      if (std::bernoulli_distribution(0.5)(rng)) cover[static_cast<size_t>(*g.find_edge(walk[k], walk[k + 1]))] = 1;
    const auto arcs = remove_duplicate(g, walk, cover);
    if (walk.size() == 1) continue;
    const auto route = euler_circuit(g, arcs, 0);
    CHECK(route_cost(g, route) <= route_cost(g, walk) + 1e-9);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (!cover[static_cast<size_t>(e)]) continue;
      CHECK(std::find_if(arcs.begin(), arcs.end(), [e](int a) { return Instance::edge_of_arc(a) == e; }) !=
            arcs.end());
    }
  }
}

TEST_CASE("greedy routing rebuilds the cost-7 plan from its spray") {
  const Instance g = counterexample_instance();
  const ShortestPathTable sp = dijkstra_all(g);
  const Model m = add_symmetry(build_basic(g), g);
  const auto lo = lower_of(m);
  const auto up = upper_of(m);
  const auto sol = greedy_routing(m, g, sp, spray_point(m, optimal_plan(g).spray), lo, up);
  REQUIRE(sol.has_value());
  CHECK(verify_solution(g, *sol).feasible);
  CHECK(solution_cost(g, sp, *sol) == 7.0);
  CHECK(route_cost(g, sol->routes[0]) <= route_cost(g, sol->routes[1]));

  // Spray of (2,3) split 7/5 with the remaining edges on the second robot.
  SprayMatrix split(2, std::vector<double>(5, 0.0));
  split[0][static_cast<size_t>(edge_id(g, 2, 3))] = 7.0;
  split[0][static_cast<size_t>(edge_id(g, 1, 3))] = 1.0;
  split[1][static_cast<size_t>(edge_id(g, 2, 3))] = 5.0;
  split[1][static_cast<size_t>(edge_id(g, 1, 2))] = 1.0;
  split[1][static_cast<size_t>(edge_id(g, 3, 4))] = 1.0;
  split[1][static_cast<size_t>(edge_id(g, 1, 4))] = 1.0;
  const auto s2 = greedy_routing(m, g, sp, spray_point(m, split), lo, up);
  REQUIRE(s2.has_value());
  CHECK(solution_cost(g, sp, *s2) == 7.0);
}

TEST_CASE("greedy routing on a single full-capacity edge") {
  const Instance g("one", 3, {{0, 1, 1.0, 0.0}, {1, 2, 2.0, 5.0}, {0, 2, 4.0, 0.0}}, 5.0);
  const ShortestPathTable sp = dijkstra_all(g);
  const Model m = build_basic(g);
  SprayMatrix y(1, std::vector<double>(3, 0.0));
  y[0][static_cast<size_t>(*g.find_edge(1, 2))] = 5.0;
  const auto sol = greedy_routing(m, g, sp, spray_point(m, y), lower_of(m), upper_of(m));
  REQUIRE(sol.has_value());
  CHECK(sol->routes[0] == std::vector<int>{0, 1, 2, 1, 0});
  CHECK(solution_cost(g, sp, *sol) == 6.0);
}

TEST_CASE("greedy routing rounds singleton trips up in the large formulation") {
  const Instance g = counterexample_instance();
  const ShortestPathTable sp = dijkstra_all(g);
  const Model m = build_large(g, sp);
  SprayMatrix y(2, std::vector<double>(5, 0.0));
  y[0][static_cast<size_t>(edge_id(g, 2, 3))] = 4.0;
  y[0][static_cast<size_t>(edge_id(g, 1, 2))] = 1.0;
  y[1][static_cast<size_t>(edge_id(g, 1, 3))] = 1.0;
  y[1][static_cast<size_t>(edge_id(g, 1, 4))] = 1.0;
  y[1][static_cast<size_t>(edge_id(g, 3, 4))] = 1.0;
  auto x = spray_point(m, y);
  x[static_cast<size_t>(*m.index.z(edge_id(g, 2, 3)))] = 0.4;
  auto sol = greedy_routing(m, g, sp, x, lower_of(m), upper_of(m));
  REQUIRE(sol.has_value());
  CHECK(sol->singletons[static_cast<size_t>(edge_id(g, 2, 3))] == 1);
  CHECK(verify_solution(g, *sol).feasible);

  // Without the singleton trip the spray falls short of D23.
  x[static_cast<size_t>(*m.index.z(edge_id(g, 2, 3)))] = 0.0;
  CHECK_FALSE(greedy_routing(m, g, sp, x, lower_of(m), upper_of(m)).has_value());
}

TEST_CASE("offer and the rejection budget") {
  RepairState s(2);
  CHECK(offer(s, 6110.93, kInfinity) == OfferDecision::kAccept);
  CHECK(s.accepted_count == 1);
  CHECK(offer(s, 6110.93, 6110.93) == OfferDecision::kReject);
  CHECK(s.enabled);
  CHECK(offer(s, std::nullopt, 6110.93) == OfferDecision::kReject);
  CHECK_FALSE(s.enabled);
  CHECK(offer(s, 1.0, 6110.93) == OfferDecision::kDisabled);
  CHECK(s.accepted_count == 1);

  RepairState off(0);
  CHECK_FALSE(off.enabled);
  CHECK(offer(off, 1.0, 2.0) == OfferDecision::kDisabled);

  RepairState reset(2);
  CHECK(offer(reset, 5.0, 4.0) == OfferDecision::kReject);
  CHECK(offer(reset, 3.0, 4.0) == OfferDecision::kAccept);
  CHECK(reset.consecutive_rejections == 0);
}
