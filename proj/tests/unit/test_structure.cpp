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
#include "scarp/instance_io.hpp"
#include "scarp/structure.hpp"
#include "fixtures.hpp"

using namespace scarp;
using scarp::testing::edge_id;
using scarp::testing::optimal_plan;

namespace {

double cost_of(const Instance& g, const Solution& s) { return solution_cost(g, dijkstra_all(g), s); }

std::vector<double> row_sums(const SprayMatrix& y) {
  std::vector<double> out;
  for (const auto& row : y) {
    double s = 0.0;
    for (double v : row) s += v;
    out.push_back(s);
  }
  return out;
}

std::vector<double> column_sums(const SprayMatrix& y) {
  std::vector<double> out(y.empty() ? 0 : y[0].size(), 0.0);
  for (const auto& row : y)
    for (size_t e = 0; e < row.size(); ++e) out[e] += row[e];
  return out;
}

bool has_kind(const VerificationReport& r, ViolationKind kind) {
  for (const Violation& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("counterexample instance") {
  const Instance g = counterexample_instance();
  CHECK(write_canonical(g) == write_canonical(scarp::testing::counterexample()));
  CHECK(g.total_demand() == 16.0);
  CHECK(robot_count(g) == 2);
  CHECK(g.edge(edge_id(g, 2, 3)).demand == 12.0);
  CHECK(g.edge(edge_id(g, 2, 3)).demand > g.capacity());
}

TEST_CASE("support classes") {
  const Instance g = counterexample_instance();
  const Solution t1 = optimal_plan(g);
  const SupportClasses c = support_classes(t1.spray);
  CHECK(c.r2plus == std::vector<int>{0, 1});
  CHECK(c.r0.empty());

  const SupportClasses zero = support_classes(SprayMatrix(3, std::vector<double>(5, 0.0)));
  CHECK(zero.r0 == std::vector<int>{0, 1, 2});

  SprayMatrix t2(2, std::vector<double>(5, 0.0));
  t2[0][static_cast<size_t>(edge_id(g, 2, 3))] = 8.0;
  t2[1][static_cast<size_t>(edge_id(g, 2, 3))] = 4.0;
  t2[1][static_cast<size_t>(edge_id(g, 1, 2))] = 1.0;
  CHECK(support_classes(t2).r1 == std::vector<int>{0});

  const SprayBipartite b = spray_bipartite(t1.spray);
  CHECK(b.robot_degree(0) == 2);
  CHECK(b.robot_degree(1) == 4);
  CHECK(b.edge_robots[static_cast<size_t>(edge_id(g, 2, 3))] == std::vector<int>{0, 1});
}

TEST_CASE("breaking the single cycle of seven multi-edge robots leaves six") {
  // Robot k sprays edges k and k+1 (mod 7): one 14-node cycle in the incidence graph.
  SprayMatrix y(7, std::vector<double>(7, 0.0));
  for (int k = 0; k < 7; ++k) {
    y[static_cast<size_t>(k)][static_cast<size_t>(k)] = 3.0 + k;
    y[static_cast<size_t>(k)][static_cast<size_t>((k + 1) % 7)] = 2.0 + 0.5 * k;
  }
  CHECK(support_classes(y).r2plus.size() == 7);
  const SprayMatrix out = cancel_cycles(y);
  CHECK(support_classes(out).r2plus.size() == 6);
  CHECK(row_sums(out) == row_sums(y));
  const auto before = column_sums(y);
  const auto after = column_sums(out);
  for (size_t e = 0; e < 7; ++e) CHECK(after[e] == doctest::Approx(before[e]));
}

TEST_CASE("acyclic spray is left alone") {
  const Instance g = counterexample_instance();
  const Solution t1 = optimal_plan(g);
  CHECK(cancel_cycles(t1.spray) == t1.spray);
}

TEST_CASE("a forced cycle on six edges is cancelled with demand rows intact") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> amount(0.5, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    SprayMatrix y(3, std::vector<double>(6, 0.0));
    // Robots 0 and 1 share edges 0 and 1; robot 2 shares edges 1 and 2 with robot 1.
    y[0][0] = amount(rng);
    y[0][1] = amount(rng);
    y[1][0] = amount(rng);
    y[1][1] = amount(rng);
    y[1][2] = amount(rng);
    y[2][2] = amount(rng);
    y[2][3] = amount(rng);
    y[2][5] = amount(rng);
    const SprayMatrix out = cancel_cycles(y);
    int zeroed = 0;
    for (size_t r = 0; r < 3; ++r)
      for (size_t e = 0; e < 6; ++e) zeroed += y[r][e] > 0.0 && out[r][e] == 0.0;
    CHECK(zeroed >= 1);
    const auto b = column_sums(y);
    const auto a = column_sums(out);
    for (size_t e = 0; e < 6; ++e) CHECK(a[e] == doctest::Approx(b[e]).epsilon(1e-12));
    const auto rb = row_sums(y);
    const auto ra = row_sums(out);
    for (size_t r = 0; r < 3; ++r) CHECK(ra[r] == doctest::Approx(rb[r]).epsilon(1e-12));
    CHECK(support_classes(out).r2plus.size() < 6);
  }
}

TEST_CASE("verify_solution") {
  const Instance g = counterexample_instance();
  const Solution t1 = optimal_plan(g);
  const VerificationReport ok = verify_solution(g, t1);
  CHECK(ok.feasible);
  CHECK(ok.violations.empty());
  CHECK(cost_of(g, t1) == 7.0);

  Solution over = t1;
  over.spray[0][static_cast<size_t>(edge_id(g, 2, 3))] = 8.0;
  const VerificationReport cap = verify_solution(g, over);
  CHECK_FALSE(cap.feasible);
  CHECK(has_kind(cap, ViolationKind::kCapacity));

  Solution loop = t1;
  loop.routes[1] = {2, 3, 2};
  const VerificationReport conn = verify_solution(g, loop);
  CHECK(has_kind(conn, ViolationKind::kConnectivity));

  Solution unlinked = t1;
  unlinked.spray[0][static_cast<size_t>(edge_id(g, 3, 4))] = 0.5;
  unlinked.spray[1][static_cast<size_t>(edge_id(g, 3, 4))] = 0.5;
  CHECK(has_kind(verify_solution(g, unlinked), ViolationKind::kLinking));

  Solution open = t1;
  open.routes[0] = {0, 1, 2};
  CHECK(has_kind(verify_solution(g, open), ViolationKind::kFlow));

  Solution twice = t1;
  twice.routes[0] = {0, 1, 2, 0, 1, 0};
  CHECK(has_kind(verify_solution(g, twice), ViolationKind::kBinary));

  Solution short_demand = t1;
  short_demand.spray[1][static_cast<size_t>(edge_id(g, 2, 3))] = 4.0;
  CHECK(has_kind(verify_solution(g, short_demand), ViolationKind::kDemand));

  Solution negative = t1;
  negative.spray[1][static_cast<size_t>(edge_id(g, 1, 2))] = -1.0;
  negative.spray[0][static_cast<size_t>(edge_id(g, 1, 2))] = 2.0;
  CHECK(has_kind(verify_solution(g, negative), ViolationKind::kNonNegativity));

  Solution extra = t1;
  extra.routes.push_back({0, 3, 0});
  extra.spray.push_back(std::vector<double>(5, 0.0));
  CHECK(has_kind(verify_solution(g, extra), ViolationKind::kRobotCount));
  CHECK(verify_solution(g, extra, 3).feasible);
}

TEST_CASE("verify_solution in the large formulation") {
  const Instance g = counterexample_instance();
  Solution s = optimal_plan(g);
  s.formulation = Formulation::kLarge;
  s.singletons.assign(5, 0);
  CHECK(verify_solution(g, s).feasible);

  // One singleton trip on (2,3) covers 8; robot 1 covers the rest.
  Solution z;
  z.formulation = Formulation::kLarge;
  z.routes = {{0, 1, 2, 3, 0}, {0, 2, 0}};
  z.spray.assign(2, std::vector<double>(5, 0.0));
  z.spray[0][static_cast<size_t>(edge_id(g, 1, 2))] = 1.0;
  z.spray[0][static_cast<size_t>(edge_id(g, 2, 3))] = 4.0;
  z.spray[0][static_cast<size_t>(edge_id(g, 3, 4))] = 1.0;
  z.spray[0][static_cast<size_t>(edge_id(g, 1, 4))] = 1.0;
  z.spray[1][static_cast<size_t>(edge_id(g, 1, 3))] = 1.0;
  z.singletons.assign(5, 0);
  z.singletons[static_cast<size_t>(edge_id(g, 2, 3))] = 1;
  CHECK(verify_solution(g, z).feasible);
  CHECK(cost_of(g, z) == 4.0 + 2.0 + 3.0);

  z.singletons[static_cast<size_t>(edge_id(g, 2, 3))] = 2;
  CHECK(has_kind(verify_solution(g, z), ViolationKind::kSingleton));
  z.singletons[static_cast<size_t>(edge_id(g, 2, 3))] = 0;
  CHECK(has_kind(verify_solution(g, z), ViolationKind::kDemand));
}

TEST_CASE("cancel_cycles on a solution keeps routes and cost") {
  const Instance g = counterexample_instance();
  Solution s = optimal_plan(g);
  const Solution out = cancel_cycles(g, s);
  CHECK(out.routes == s.routes);
  CHECK(cost_of(g, out) == cost_of(g, s));
  s.spray[0][static_cast<size_t>(edge_id(g, 2, 3))] = 9.0;
  CHECK_THROWS_AS(cancel_cycles(g, s), Error);
}

TEST_CASE("brute force on the counterexample") {
  const Instance g = counterexample_instance();
  for (Formulation f : {Formulation::kBasic, Formulation::kLarge}) {
    const auto sol = brute_force_solve(g, f);
    REQUIRE(sol.has_value());
    CHECK(verify_solution(g, *sol).feasible);
    CHECK(cost_of(g, *sol) == 7.0);
  }
  const std::vector<SprayOverride> forced{{0, edge_id(g, 2, 3), 8.0}};
  for (Formulation f : {Formulation::kBasic, Formulation::kLarge}) {
    const auto sol = brute_force_solve(g, f, forced);
    REQUIRE(sol.has_value());
    CHECK(verify_solution(g, *sol).feasible);
    CHECK(sol->spray[0][static_cast<size_t>(edge_id(g, 2, 3))] == 8.0);
    CHECK(cost_of(g, *sol) == 9.0);
  }
}

TEST_CASE("brute force on a single required edge") {
  const Instance g("single", 3, {{0, 1, 1.0, 3.0}, {1, 2, 4.0, 0.0}}, 5.0);
  const auto sol = brute_force_solve(g, Formulation::kBasic);
  REQUIRE(sol.has_value());
  CHECK(cost_of(g, *sol) == 2.0);
  CHECK(sol->routes[0] == std::vector<int>{0, 1, 0});
}

TEST_CASE("brute force refuses large instances") {
  std::vector<Edge> edges;
  for (int v = 1; v < 9; ++v) edges.push_back({v - 1, v, 1.0, 1.0});
  const Instance g("path", 9, edges, 4.0);
  CHECK_THROWS_AS(brute_force_solve(g, Formulation::kBasic), Error);
}

TEST_CASE("oracle plans are verified feasible and cycle cancellation preserves them") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    const Instance g = scarp::testing::random_tiny(rng, k);
    for (Formulation f : {Formulation::kBasic, Formulation::kLarge}) {
      const auto sol = brute_force_solve(g, f);
      if (!sol) continue;
      INFO(write_canonical(g));
      CHECK(verify_solution(g, *sol).feasible);
      const Solution c = cancel_cycles(g, *sol);
      CHECK(verify_solution(g, c).feasible);
      CHECK(cost_of(g, c) == cost_of(g, *sol));
      CHECK(support_classes(c.spray).r2plus.size() < required_edges(g).size());
    }
  }
}

TEST_CASE("polishing keeps a plan feasible and at the same cost") {
  const Instance g = counterexample_instance();
  Solution s = optimal_plan(g);
  // Split (2,3) unevenly with float noise.
  const size_t e23 = static_cast<size_t>(edge_id(g, 2, 3));
  s.spray[0][e23] -= 1e-13;
  s.spray[1][e23] += 1e-13;
  const Solution p = polish_solution(g, s);
  CHECK(verify_solution(g, p).feasible);
  CHECK(cost_of(g, p) == cost_of(g, s));
  CHECK(p.spray[0][e23] == 7.0);
  CHECK(p.spray[1][e23] == 5.0);
  CHECK(static_cast<int>(support_classes(p.spray).r2plus.size()) < 5);
}
