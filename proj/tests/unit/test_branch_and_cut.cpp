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
#include <sstream>
#include <vector>

#include "scarp/branch_and_cut.hpp"
#include "scarp/formulation.hpp"
#include "scarp/structure.hpp"
#include "fixtures.hpp"

using namespace scarp;
using scarp::testing::edge_id;
using scarp::testing::optimal_plan;

namespace {

int arc_id(const Instance& g, int u, int v) {
  const int e = edge_id(g, u, v);
  return g.edge(e).i == u - 1 ? 2 * e : 2 * e + 1;
}

double cost_of(const Instance& g, const Solution& s) { return solution_cost(g, dijkstra_all(g), s); }

Model model_for(const Instance& g, Formulation f) {
  return f == Formulation::kBasic ? build_basic(g) : build_large(g, dijkstra_all(g));
}

SolveParams quick() {
  SolveParams p;
  p.time_limit_s = 60.0;
  return p;
}

}  // namespace

TEST_CASE("separation finds the detached loop") {
  const Instance g = counterexample_instance();
  const Model m = build_basic(g);
  std::vector<double> x(static_cast<size_t>(m.num_cols()), 0.0);
  for (auto [u, v] : {std::pair{1, 2}, {2, 1}, {3, 4}, {4, 3}})
    x[static_cast<size_t>(*m.index.x(0, arc_id(g, u, v)))] = 1.0;
  x[static_cast<size_t>(*m.index.y(0, edge_id(g, 3, 4)))] = 1.0;
  const auto cuts = separate_connectivity(m, g, x);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].robot == 0);
  CHECK(cuts[0].source_side == std::vector<char>{1, 1, 0, 0});
  CHECK(cuts[0].row.violation(x) > 0.5);
}

TEST_CASE("separation emits one cut per detached component") {
  // Star around the depot plus two far triangles sprayed without any arc into them.
  const Instance g("two", 5, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {0, 3, 1.0, 0.0}, {3, 4, 1.0, 1.0}}, 4.0);
  const Model m = build_basic(g, 1);
  std::vector<double> x(static_cast<size_t>(m.num_cols()), 0.0);
  x[static_cast<size_t>(*m.index.y(0, edge_id(g, 2, 3)))] = 1.0;
  x[static_cast<size_t>(*m.index.y(0, edge_id(g, 4, 5)))] = 1.0;
  const auto cuts = separate_connectivity(m, g, x);
  CHECK(cuts.size() == 2);
}

TEST_CASE("the optimal plan violates no connectivity cut") {
  const Instance g = counterexample_instance();
  const Model m = build_basic(g);
  const auto x = solution_to_point(m, g, optimal_plan(g));
  CHECK(separate_connectivity(m, g, x).empty());
}

TEST_CASE("branching picks the most fractional column") {
  const Instance g = counterexample_instance();
  const Model m = build_basic(g);
  std::vector<double> x(static_cast<size_t>(m.num_cols()), 0.0);
  const int c0 = *m.index.x(0, 0);
  const int c1 = *m.index.x(0, 1);
  x[static_cast<size_t>(c0)] = 0.5;
  x[static_cast<size_t>(c1)] = 0.2;
  auto d = branch(m, x);
  CHECK(d.column == c0);
  CHECK(d.down_upper == 0.0);
  CHECK(d.up_lower == 1.0);
  x[static_cast<size_t>(c0)] = 0.4;
  x[static_cast<size_t>(c1)] = 0.6;
  d = branch(m, x);
  CHECK(d.column == std::min(c0, c1));
  x[static_cast<size_t>(c0)] = 1.0;
  x[static_cast<size_t>(c1)] = 0.0;
  CHECK_THROWS_AS(branch(m, x), Error);
}

TEST_CASE("counterexample optimum and the forced spray") {
  const Instance g = counterexample_instance();
  for (Formulation f : {Formulation::kBasic, Formulation::kLarge}) {
    const Model m = model_for(g, f);
    auto rep = solve(m, g, quick());
    CHECK(rep.status == SolveStatus::kOptimal);
    REQUIRE(rep.incumbent.has_value());
    CHECK(rep.ub == doctest::Approx(7.0));
    CHECK(verify_solution(g, *rep.incumbent).feasible);

    SolveParams p = quick();
    p.overrides = {{0, edge_id(g, 2, 3), 8.0}};
    rep = solve(m, g, p);
    CHECK(rep.status == SolveStatus::kOptimal);
    CHECK(rep.ub == doctest::Approx(9.0));
  }
}

TEST_CASE("single required edge") {
  const Instance g("single", 3, {{0, 1, 1.0, 3.0}, {1, 2, 4.0, 0.0}}, 5.0);
  const auto rep = solve(build_basic(g), g, quick());
  CHECK(rep.status == SolveStatus::kOptimal);
  CHECK(rep.ub == doctest::Approx(2.0));
}

TEST_CASE("zero time limit returns without an incumbent") {
  const Instance g = counterexample_instance();
  SolveParams p;
  p.time_limit_s = 0.0;
  const auto rep = solve(build_basic(g), g, p);
  CHECK(rep.status == SolveStatus::kLimit);
  CHECK_FALSE(rep.incumbent.has_value());
}

TEST_CASE("every preset reaches the optimum") {
  const Instance g = counterexample_instance();
  for (int mask = 0; mask < 8; ++mask) {
    SolveParams p = quick();
    p.lazy_cuts = mask & 1;
    p.symmetry = mask & 2;
    p.repair = mask & 4;
    const auto rep = solve(build_basic(g), g, p);
    INFO("mask " << mask);
    CHECK(rep.status == SolveStatus::kOptimal);
    CHECK(rep.ub == doctest::Approx(7.0));
  }
}

TEST_CASE("log lines carry node, bounds and gap") {
  const Instance g = counterexample_instance();
  std::ostringstream log;
  SolveParams p = quick();
  p.log = &log;
  solve(build_basic(g), g, p);
  CHECK(log.str().find("node=") != std::string::npos);
  CHECK(log.str().find(" gap=") != std::string::npos);
}

TEST_CASE("solver matches the oracle on random tiny instances") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 25; ++k) {
    const Instance g = scarp::testing::random_tiny(rng, k);
    for (Formulation f : {Formulation::kBasic, Formulation::kLarge}) {
      INFO(write_canonical(g) << " formulation " << to_string(f));
      const auto oracle = brute_force_solve(g, f);
      SolveParams p = quick();
      p.record_cuts = true;
      const Model m = model_for(g, f);
      const auto rep = solve(m, g, p);
      if (!oracle) {
        CHECK(rep.status == SolveStatus::kInfeasible);
        continue;
      }
      REQUIRE(rep.status == SolveStatus::kOptimal);
      CHECK(rep.ub == doctest::Approx(cost_of(g, *oracle)).epsilon(1e-6));
      CHECK(verify_solution(g, *rep.incumbent).feasible);
      CHECK(rep.accepted_heuristics == rep.repair_incumbents);

      // Trace bounds move monotonically and never cross.
      for (size_t i = 1; i < rep.trace.size(); ++i) {
        CHECK(rep.trace[i].lb >= rep.trace[i - 1].lb - 1e-9);
        CHECK(rep.trace[i].ub <= rep.trace[i - 1].ub + 1e-9);
        CHECK(rep.trace[i].lb <= rep.trace[i].ub + 1e-9);
      }
      // Cuts are valid: the oracle plan satisfies every one of them.
      const auto xo = solution_to_point(m, g, *oracle);
      for (const Cut& c : rep.cuts) CHECK(c.row.violation(xo) <= 1e-6);
    }
  }
}

TEST_CASE("single worker runs are deterministic") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 6; ++k) {
    const Instance g = scarp::testing::random_tiny(rng, k);
    const Model m = build_basic(g);
    const auto a = solve(m, g, quick());
    const auto b = solve(m, g, quick());
    CHECK(a.ub == b.ub);
    CHECK(a.explored_nodes == b.explored_nodes);
    CHECK(a.simplex_iterations == b.simplex_iterations);
    CHECK(a.cuts_added == b.cuts_added);
  }
}

TEST_CASE("several workers agree with one") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 6; ++k) {
    const Instance g = scarp::testing::random_tiny(rng, k);
    const Model m = build_basic(g);
    SolveParams p = quick();
    const auto a = solve(m, g, p);
    p.workers = 4;
    const auto b = solve(m, g, p);
    CHECK(a.status == b.status);
    CHECK(a.ub == doctest::Approx(b.ub));
  }
}
