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

#include "scarp/repair.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scarp/formulation.hpp"
#include "scarp/structure.hpp"

namespace scarp {

std::vector<int> connectable_path(const Instance& instance, const ShortestPathTable& spt,
                                  std::span<const double> spray, AnchorMode anchor, double threshold) {
  const int depot = instance.depot();
  const int m = instance.num_edges();
  std::vector<char> uncovered(static_cast<size_t>(m), 0);
  int left = 0;
  for (int e = 0; e < m && e < static_cast<int>(spray.size()); ++e) {
    if (spray[static_cast<size_t>(e)] > threshold) {
      uncovered[static_cast<size_t>(e)] = 1;
      ++left;
    }
  }
  std::vector<int> walk{depot};
  auto step_to = [&](int v) {
    const int u = walk.back();
    const auto e = instance.find_edge(u, v);
    if (e && uncovered[static_cast<size_t>(*e)]) {
      uncovered[static_cast<size_t>(*e)] = 0;
      --left;
    }
    walk.push_back(v);
  };
  auto jump_to = [&](int v) {
    const auto path = spt.path(walk.back(), v);
    for (size_t k = 1; k < path.size(); ++k) step_to(path[k]);
  };
  while (left > 0) {
    const int from = anchor == AnchorMode::kCurrent ? walk.back() : depot;
    int target = -1;
    double best = 0.0;
    for (int e = 0; e < m; ++e) {
      if (!uncovered[static_cast<size_t>(e)]) continue;
      for (int v : {instance.edge(e).i, instance.edge(e).j}) {
        const double d = spt.dist(from, v);
        if (target < 0 || d < best - kEps || (d <= best + kEps && v < target)) {
          target = v;
          best = d;
        }
      }
    }
    jump_to(target);
    // Prefer an uncovered edge towards a higher id; incident() is ordered by
    // the opposite endpoint, so the first hit is the lowest one.
    int next = -1;
    for (int e : instance.incident(target)) {
      if (!uncovered[static_cast<size_t>(e)]) continue;
      const int w = instance.opposite(e, target);
      if (w > target) {
        next = w;
        break;
      }
    }
    if (next < 0) {
      for (int e : instance.incident(target)) {
        if (uncovered[static_cast<size_t>(e)]) {
          next = instance.opposite(e, target);
          break;
        }
      }
    }
    if (next >= 0) step_to(next);
  }
  jump_to(depot);
  return walk;
}

namespace {

bool arcs_cover_and_connect(const Instance& instance, const std::vector<int>& count,
                            const std::vector<char>& cover) {
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (e < static_cast<int>(cover.size()) && cover[static_cast<size_t>(e)] &&
        count[static_cast<size_t>(2 * e)] + count[static_cast<size_t>(2 * e + 1)] == 0)
      return false;
  }
  std::vector<Arc> arcs;
  for (int a = 0; a < instance.num_arcs(); ++a)
    if (count[static_cast<size_t>(a)] > 0) arcs.push_back(instance.arc(a));
  if (arcs.empty()) return true;
  const auto seen = reachable_from(instance.num_vertices(), arcs, instance.depot());
  for (const Arc& a : arcs)
    if (!std::binary_search(seen.begin(), seen.end(), a.tail)) return false;
  return true;
}

}  // namespace

std::vector<int> remove_duplicate(const Instance& instance, std::span<const int> walk,
                                  const std::vector<char>& cover) {
  std::vector<int> order;
  std::vector<int> count(static_cast<size_t>(instance.num_arcs()), 0);
  for (size_t k = 0; k + 1 < walk.size(); ++k) {
    const auto a = instance.find_arc(walk[k], walk[k + 1]);
    if (!a) throw Error("walk uses a missing edge");
    order.push_back(*a);
    ++count[static_cast<size_t>(*a)];
  }
  for (int a : order) {
    if (count[static_cast<size_t>(a)] < 2) continue;
    const int rev = a ^ 1;
    if (count[static_cast<size_t>(rev)] == 0) continue;
    --count[static_cast<size_t>(a)];
    --count[static_cast<size_t>(rev)];
    if (!arcs_cover_and_connect(instance, count, cover)) {
      ++count[static_cast<size_t>(a)];
      ++count[static_cast<size_t>(rev)];
    }
  }
  const bool repeated = std::any_of(count.begin(), count.end(), [](int c) { return c > 1; });
  if (repeated) {
    std::vector<int> use(static_cast<size_t>(instance.num_edges()), 0);
    for (int a = 0; a < instance.num_arcs(); ++a)
      use[static_cast<size_t>(Instance::edge_of_arc(a))] += count[static_cast<size_t>(a)];
    return orient_edge_multiset(instance, use, instance.depot());
  }
  std::vector<int> out;
  for (int a = 0; a < instance.num_arcs(); ++a)
    if (count[static_cast<size_t>(a)] > 0) out.push_back(a);
  return out;
}

namespace {

// Smallest depot neighbor left and entered by a route (n if none).
std::pair<int, int> depot_ends(const Instance& instance, const std::vector<int>& route) {
  const int s = instance.depot();
  int out = instance.num_vertices();
  int in = instance.num_vertices();
  for (size_t k = 0; k + 1 < route.size(); ++k) {
    if (route[k] == s) out = std::min(out, route[k + 1]);
    if (route[k + 1] == s) in = std::min(in, route[k]);
  }
  return {out, in};
}

}  // namespace

std::optional<Solution> greedy_routing(const Model& model, const Instance& instance,
                                       const ShortestPathTable& spt, std::span<const double> point,
                                       std::span<const double> lower, std::span<const double> upper,
                                       AnchorMode anchor) {
  const int R = model.num_robots;
  const int m = instance.num_edges();
  const bool large = model.formulation == Formulation::kLarge;
  Solution sol;
  sol.formulation = model.formulation;
  sol.routes.assign(static_cast<size_t>(R), {});
  sol.spray.assign(static_cast<size_t>(R), std::vector<double>(static_cast<size_t>(m), 0.0));
  try {
    for (int r = 0; r < R; ++r) {
      auto& y = sol.spray[static_cast<size_t>(r)];
      std::vector<char> cover(static_cast<size_t>(m), 0);
      bool any = false;
      for (int e = 0; e < m; ++e) {
        const auto c = model.index.y(r, e);
        if (!c) continue;
        const double v = point[static_cast<size_t>(*c)];
        if (v > 1e-9) {
          y[static_cast<size_t>(e)] = v;
          cover[static_cast<size_t>(e)] = 1;
          any = true;
        }
      }
      if (!any) continue;
      const auto walk = connectable_path(instance, spt, y, anchor);
      const auto arcs = remove_duplicate(instance, walk, cover);
      sol.routes[static_cast<size_t>(r)] = euler_circuit(instance, arcs, instance.depot());
    }
    if (large) {
      sol.singletons.assign(static_cast<size_t>(m), 0);
      for (int e = 0; e < m; ++e) {
        const auto c = model.index.z(e);
        if (!c) continue;
        const double z = std::ceil(point[static_cast<size_t>(*c)] - 1e-6);
        if (z > upper[static_cast<size_t>(*c)] + 1e-9) return std::nullopt;
        sol.singletons[static_cast<size_t>(e)] = static_cast<int>(std::max(0.0, z));
      }
    }

    bool order_rows = false;
    bool orient_rows = false;
    for (const Row& row : model.rows) {
      order_rows |= row.tag == RowTag::kSymmetryOrder;
      orient_rows |= row.tag == RowTag::kSymmetryOrient;
    }
    if (orient_rows) {
      for (auto& route : sol.routes) {
        const auto [out, in] = depot_ends(instance, route);
        if (out > in) std::reverse(route.begin(), route.end());
      }
    }
    if (order_rows) {
      std::vector<double> cost(static_cast<size_t>(R));
      for (int r = 0; r < R; ++r) cost[static_cast<size_t>(r)] = route_cost(instance, sol.routes[static_cast<size_t>(r)]);
      std::vector<int> perm(static_cast<size_t>(R));
      std::iota(perm.begin(), perm.end(), 0);
      std::stable_sort(perm.begin(), perm.end(),
                       [&](int a, int b) { return cost[static_cast<size_t>(a)] < cost[static_cast<size_t>(b)]; });
      Solution sorted = sol;
      for (int r = 0; r < R; ++r) {
        sorted.routes[static_cast<size_t>(r)] = sol.routes[static_cast<size_t>(perm[static_cast<size_t>(r)])];
        sorted.spray[static_cast<size_t>(r)] = sol.spray[static_cast<size_t>(perm[static_cast<size_t>(r)])];
      }
      sol = std::move(sorted);
    }

    if (!verify_solution(instance, sol, R).feasible) return std::nullopt;
    const std::vector<double> x = solution_to_point(model, instance, sol);
    for (const Row& row : model.rows)
      if (row.violation(x) > 1e-6) return std::nullopt;
    for (size_t c = 0; c < x.size(); ++c)
      if (x[c] < lower[c] - 1e-6 || x[c] > upper[c] + 1e-6) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return sol;
}

OfferDecision offer(RepairState& state, std::optional<double> candidate_cost, double incumbent_cost) {
  if (!state.enabled) return OfferDecision::kDisabled;
  if (candidate_cost && *candidate_cost < incumbent_cost - 1e-9) {
    state.consecutive_rejections = 0;
    ++state.accepted_count;
    return OfferDecision::kAccept;
  }
  ++state.consecutive_rejections;
  if (state.consecutive_rejections >= state.gamma) state.enabled = false;
  return OfferDecision::kReject;
}

}  // namespace scarp
