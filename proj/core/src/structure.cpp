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

#include "scarp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "scarp/formulation.hpp"

namespace scarp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string edge_label(const Instance& instance, int e) {
  const Edge& ed = instance.edge(e);
  return "(" + std::to_string(ed.i + 1) + "," + std::to_string(ed.j + 1) + ")";
}

}  // namespace

SupportClasses support_classes(const SprayMatrix& spray, double threshold) {
  SupportClasses out;
  for (size_t r = 0; r < spray.size(); ++r) {
    const auto n = std::count_if(spray[r].begin(), spray[r].end(),
                                 [threshold](double v) { return v > threshold; });
    (n == 0 ? out.r0 : n == 1 ? out.r1 : out.r2plus).push_back(static_cast<int>(r));
  }
  return out;
}

SprayBipartite spray_bipartite(const SprayMatrix& spray, double threshold) {
  SprayBipartite g;
  g.num_robots = static_cast<int>(spray.size());
  for (const auto& row : spray) g.num_edges = std::max(g.num_edges, static_cast<int>(row.size()));
  g.robot_edges.resize(static_cast<size_t>(g.num_robots));
  g.edge_robots.resize(static_cast<size_t>(g.num_edges));
  for (int r = 0; r < g.num_robots; ++r) {
    const auto& row = spray[static_cast<size_t>(r)];
    for (int e = 0; e < static_cast<int>(row.size()); ++e) {
      if (row[static_cast<size_t>(e)] > threshold) {
        g.robot_edges[static_cast<size_t>(r)].push_back(e);
        g.edge_robots[static_cast<size_t>(e)].push_back(r);
      }
    }
  }
  return g;
}

namespace {

// Cycle in the incidence graph restricted to robots of degree >= 2, as an
// alternating node list r0, e0, r1, e1, ... (robots as r, edges as R + e).
std::vector<int> find_cycle(const SprayBipartite& g) {
  const int R = g.num_robots;
  const int N = R + g.num_edges;
  auto active_robot = [&](int r) { return g.robot_degree(r) >= 2; };
  auto neighbors = [&](int v) {
    std::vector<int> out;
    if (v < R) {
      if (!active_robot(v)) return out;
      for (int e : g.robot_edges[static_cast<size_t>(v)]) out.push_back(R + e);
    } else {
      for (int r : g.edge_robots[static_cast<size_t>(v - R)])
        if (active_robot(r)) out.push_back(r);
    }
    return out;
  };
  std::vector<int> parent(static_cast<size_t>(N), -2);
  std::vector<int> depth(static_cast<size_t>(N), 0);
  for (int root = 0; root < R; ++root) {
    if (parent[static_cast<size_t>(root)] != -2 || !active_robot(root)) continue;
    parent[static_cast<size_t>(root)] = -1;
    // Iterative DFS; every non-tree link to a visited node closes a cycle.
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    std::vector<std::vector<int>> adj_cache(static_cast<size_t>(N));
    adj_cache[static_cast<size_t>(root)] = neighbors(root);
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      const auto& adj = adj_cache[static_cast<size_t>(v)];
      if (k == adj.size()) {
        stack.pop_back();
        continue;
      }
      const int w = adj[k++];
      if (w == parent[static_cast<size_t>(v)]) continue;
      if (parent[static_cast<size_t>(w)] == -2) {
        parent[static_cast<size_t>(w)] = v;
        depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(v)] + 1;
        adj_cache[static_cast<size_t>(w)] = neighbors(w);
        stack.emplace_back(w, 0);
        continue;
      }
      // w is an ancestor of v on the DFS stack (undirected DFS has no cross links).
      std::vector<int> cycle;
      for (int u = v; u != w; u = parent[static_cast<size_t>(u)]) cycle.push_back(u);
      cycle.push_back(w);
      std::reverse(cycle.begin(), cycle.end());
      // Rotate so the list starts at a robot.
      if (cycle.front() >= R) std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
      return cycle;
    }
  }
  return {};
}

}  // namespace

SprayMatrix cancel_cycles(const SprayMatrix& spray, double delta_min) {
  SprayMatrix y = spray;
  while (true) {
    const SprayBipartite g = spray_bipartite(y, delta_min);
    const std::vector<int> cycle = find_cycle(g);
    if (cycle.empty()) return y;
    const int R = g.num_robots;
    // Links in cycle order: (c0,c1), (c1,c2), ...; even links gain, odd links lose.
    struct Link {
      int robot;
      int edge;
    };
    std::vector<Link> links;
    for (size_t k = 0; k < cycle.size(); ++k) {
      const int a = cycle[k];
      const int b = cycle[(k + 1) % cycle.size()];
      links.push_back(a < R ? Link{a, b - R} : Link{b, a - R});
    }
    double delta = kInf;
    size_t arg = 1;
    for (size_t k = 1; k < links.size(); k += 2) {
      const double v = y[static_cast<size_t>(links[k].robot)][static_cast<size_t>(links[k].edge)];
      if (v < delta) {
        delta = v;
        arg = k;
      }
    }
    for (size_t k = 0; k < links.size(); ++k) {
      double& v = y[static_cast<size_t>(links[k].robot)][static_cast<size_t>(links[k].edge)];
      v += k % 2 == 0 ? delta : -delta;
      if (k % 2 == 1 && v < 1e-12) v = 0.0;
    }
    y[static_cast<size_t>(links[arg].robot)][static_cast<size_t>(links[arg].edge)] = 0.0;
  }
}

Solution cancel_cycles(const Instance& instance, const Solution& solution) {
  const VerificationReport before = verify_solution(instance, solution, solution.num_robots());
  if (!before.feasible)
    throw Error("cancel_cycles needs a feasible solution: " + before.violations.front().message);
  Solution out = solution;
  out.spray = cancel_cycles(solution.spray);
  return out;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kStructure:
      return "structure";
    case ViolationKind::kCapacity:
      return "capacity";
    case ViolationKind::kNonNegativity:
      return "nonnegativity";
    case ViolationKind::kDemand:
      return "demand";
    case ViolationKind::kLinking:
      return "linking";
    case ViolationKind::kFlow:
      return "flow";
    case ViolationKind::kConnectivity:
      return "connectivity";
    case ViolationKind::kBinary:
      return "binary";
    case ViolationKind::kSingleton:
      return "singleton";
    case ViolationKind::kRobotCount:
      return "robot_count";
  }
  return "unknown";
}

VerificationReport verify_solution(const Instance& instance, const Solution& solution,
                                   std::optional<int> robot_limit, double tolerance) {
  VerificationReport report;
  auto fail = [&](ViolationKind kind, int robot, int edge, std::string message) {
    report.feasible = false;
    report.violations.push_back(Violation{kind, robot, edge, std::move(message)});
  };
  const int m = instance.num_edges();
  const int depot = instance.depot();
  const double P = instance.capacity();
  const bool large = solution.formulation == Formulation::kLarge;
  const int robots = solution.num_robots();

  if (static_cast<int>(solution.spray.size()) != robots) {
    fail(ViolationKind::kStructure, -1, -1, "spray rows do not match the number of routes");
    return report;
  }
  for (int r = 0; r < robots; ++r) {
    if (static_cast<int>(solution.spray[static_cast<size_t>(r)].size()) != m) {
      fail(ViolationKind::kStructure, r, -1,
           "robot " + std::to_string(r + 1) + ": spray row has the wrong length");
      return report;
    }
  }
  if (!solution.singletons.empty() && static_cast<int>(solution.singletons.size()) != m) {
    fail(ViolationKind::kStructure, -1, -1, "singleton vector has the wrong length");
    return report;
  }

  int limit = 0;
  if (robot_limit) {
    limit = *robot_limit;
  } else {
    limit = large ? multi_robot_count(instance) : robot_count(instance);
  }

  std::vector<double> covered(static_cast<size_t>(m), 0.0);
  for (int r = 0; r < robots; ++r) {
    const auto& route = solution.routes[static_cast<size_t>(r)];
    const auto& y = solution.spray[static_cast<size_t>(r)];
    const std::string who = "robot " + std::to_string(r + 1);
    const bool sprays = std::any_of(y.begin(), y.end(), [](double v) { return v != 0.0; });
    if (r >= limit && (route.size() > 1 || sprays))
      fail(ViolationKind::kRobotCount, r, -1,
           who + ": only " + std::to_string(limit) + " robots are available");

    std::vector<char> traversed(static_cast<size_t>(m), 0);
    std::set<int> arcs;
    bool walk_ok = true;
    if (route.size() == 1 && route.front() != depot) {
      fail(ViolationKind::kConnectivity, r, -1, who + ": route does not start at the depot");
    }
    if (route.size() > 1) {
      if (route.front() != depot)
        fail(ViolationKind::kConnectivity, r, -1, who + ": route does not start at the depot");
      if (route.front() != route.back())
        fail(ViolationKind::kFlow, r, -1, who + ": route is not closed");
      for (size_t k = 0; k + 1 < route.size(); ++k) {
        const int u = route[k];
        const int v = route[k + 1];
        if (u < 0 || v < 0 || u >= instance.num_vertices() || v >= instance.num_vertices()) {
          fail(ViolationKind::kStructure, r, -1, who + ": vertex out of range");
          walk_ok = false;
          break;
        }
        auto a = instance.find_arc(u, v);
        if (!a) {
          fail(ViolationKind::kStructure, r, -1,
               who + ": no edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
          walk_ok = false;
          break;
        }
        if (!arcs.insert(*a).second)
          fail(ViolationKind::kBinary, r, Instance::edge_of_arc(*a),
               who + ": arc " + std::to_string(u + 1) + "->" + std::to_string(v + 1) +
                   " is used twice");
        traversed[static_cast<size_t>(Instance::edge_of_arc(*a))] = 1;
      }
    }
    double load = 0.0;
    for (int e = 0; e < m; ++e) {
      const double v = y[static_cast<size_t>(e)];
      if (v == 0.0) continue;
      if (v < -tolerance) {
        fail(ViolationKind::kNonNegativity, r, e, who + ": negative spray on " + edge_label(instance, e));
      }
      if (v > tolerance && instance.edge(e).demand <= 0.0)
        fail(ViolationKind::kDemand, r, e, who + ": spray on " + edge_label(instance, e) + " which has no demand");
      if (v > tolerance && walk_ok && !traversed[static_cast<size_t>(e)])
        fail(ViolationKind::kLinking, r, e,
             who + ": sprays " + edge_label(instance, e) + " without traversing it");
      load += v;
      covered[static_cast<size_t>(e)] += v;
    }
    if (load > P + tolerance * std::max(1.0, P))
      fail(ViolationKind::kCapacity, r, -1,
           who + ": sprays " + std::to_string(load) + " > capacity " + std::to_string(P));
  }

  for (int e = 0; e < m; ++e) {
    const double D = instance.edge(e).demand;
    int z = 0;
    if (!solution.singletons.empty()) z = solution.singletons[static_cast<size_t>(e)];
    if (z != 0 && !large)
      fail(ViolationKind::kSingleton, -1, e, "singleton trips are not part of the basic formulation");
    if (z < 0) fail(ViolationKind::kSingleton, -1, e, "negative singleton count on " + edge_label(instance, e));
    if (large && z > 0 && z > std::floor(D / P + 1e-9))
      fail(ViolationKind::kSingleton, -1, e,
           "singleton count on " + edge_label(instance, e) + " exceeds floor(D/P)");
    const double tol = tolerance * std::max(1.0, D);
    const double served = covered[static_cast<size_t>(e)] + (large ? z * P : 0.0);
    if (large) {
      if (served < D - tol)
        fail(ViolationKind::kDemand, -1, e, "demand of " + edge_label(instance, e) + " is not covered");
    } else if (std::abs(served - D) > tol) {
      fail(ViolationKind::kDemand, -1, e,
           "spray on " + edge_label(instance, e) + " is " + std::to_string(served) + ", demand is " +
               std::to_string(D));
    }
  }
  return report;
}

namespace {

// Maximum flow on a small dense network (Edmonds-Karp).
class DenseFlow {
 public:
  explicit DenseFlow(int n) : n_(n), cap_(static_cast<size_t>(n * n), 0.0) {}
  void add(int u, int v, double c) { cap_[idx(u, v)] += c; }
  double flow(int u, int v) const { return flow_[idx(u, v)]; }

  double run(int s, int t) {
    flow_.assign(cap_.size(), 0.0);
    double total = 0.0;
    while (true) {
      std::vector<int> prev(static_cast<size_t>(n_), -1);
      prev[static_cast<size_t>(s)] = s;
      std::queue<int> q;
      q.push(s);
      while (!q.empty() && prev[static_cast<size_t>(t)] < 0) {
        const int u = q.front();
        q.pop();
        for (int v = 0; v < n_; ++v) {
          if (prev[static_cast<size_t>(v)] < 0 && residual(u, v) > 1e-12) {
            prev[static_cast<size_t>(v)] = u;
            q.push(v);
          }
        }
      }
      if (prev[static_cast<size_t>(t)] < 0) return total;
      double push = kInf;
      for (int v = t; v != s; v = prev[static_cast<size_t>(v)])
        push = std::min(push, residual(prev[static_cast<size_t>(v)], v));
      for (int v = t; v != s; v = prev[static_cast<size_t>(v)]) {
        const int u = prev[static_cast<size_t>(v)];
        // Cancel opposite flow first so flows stay one-directional.
        const double back = std::min(push, flow_[idx(v, u)]);
        flow_[idx(v, u)] -= back;
        flow_[idx(u, v)] += push - back;
      }
      total += push;
    }
  }

 private:
  size_t idx(int u, int v) const { return static_cast<size_t>(u * n_ + v); }
  double residual(int u, int v) const { return cap_[idx(u, v)] - flow_[idx(u, v)] + flow_[idx(v, u)]; }

  int n_;
  std::vector<double> cap_;
  std::vector<double> flow_;
};

struct WalkTable {
  std::vector<double> cost;              // per mask, cheapest walk covering at least mask
  std::vector<std::vector<int>> route;   // vertex sequence of that walk, normalized
};

WalkTable cheapest_walks(const Instance& instance, const std::vector<int>& required) {
  const int n = instance.num_vertices();
  const int k = static_cast<int>(required.size());
  const int masks = 1 << k;
  std::vector<int> bit(static_cast<size_t>(instance.num_edges()), -1);
  for (int b = 0; b < k; ++b) bit[static_cast<size_t>(required[static_cast<size_t>(b)])] = b;
  const auto states = static_cast<size_t>(n * masks);
  auto sid = [masks](int v, int mask) { return static_cast<size_t>(v * masks + mask); };
  std::vector<double> dist(states, kInf);
  std::vector<std::pair<int, int>> pred(states, {-1, -1});  // (previous state, edge)
  using Entry = std::pair<double, size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  const int s = instance.depot();
  dist[sid(s, 0)] = 0.0;
  pq.emplace(0.0, sid(s, 0));
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    const int v = static_cast<int>(u) / masks;
    const int mask = static_cast<int>(u) % masks;
    for (int e : instance.incident(v)) {
      const int w = instance.opposite(e, v);
      const int b = bit[static_cast<size_t>(e)];
      const int nm = b >= 0 ? mask | (1 << b) : mask;
      const double nd = d + instance.edge(e).cost;
      const size_t ws = sid(w, nm);
      if (nd < dist[ws]) {
        dist[ws] = nd;
        pred[ws] = {static_cast<int>(u), e};
        pq.emplace(nd, ws);
      }
    }
  }
  WalkTable table;
  table.cost.assign(static_cast<size_t>(masks), kInf);
  table.route.assign(static_cast<size_t>(masks), {});
  std::vector<int> source(static_cast<size_t>(masks), -1);
  for (int mask = 0; mask < masks; ++mask) {
    for (int super = 0; super < masks; ++super) {
      if ((super & mask) != mask) continue;
      const double c = dist[sid(s, super)];
      if (c < table.cost[static_cast<size_t>(mask)]) {
        table.cost[static_cast<size_t>(mask)] = c;
        source[static_cast<size_t>(mask)] = super;
      }
    }
  }
  for (int mask = 1; mask < masks; ++mask) {
    const int super = source[static_cast<size_t>(mask)];
    std::vector<int> use(static_cast<size_t>(instance.num_edges()), 0);
    int u = static_cast<int>(sid(s, super));
    while (pred[static_cast<size_t>(u)].first >= 0) {
      ++use[static_cast<size_t>(pred[static_cast<size_t>(u)].second)];
      u = pred[static_cast<size_t>(u)].first;
    }
    const auto arcs = orient_edge_multiset(instance, use, s);
    const auto route = euler_circuit(instance, arcs, s);
    const double c = route_cost(instance, route);
    if (c > table.cost[static_cast<size_t>(mask)] + 1e-9)
      throw Error("internal: normalized walk is more expensive than the walk it came from");
    table.cost[static_cast<size_t>(mask)] = c;
    table.route[static_cast<size_t>(mask)] = route;
  }
  return table;
}

}  // namespace

std::optional<Solution> brute_force_solve(const Instance& instance, Formulation formulation,
                                          const std::vector<SprayOverride>& overrides,
                                          const OracleOptions& options) {
  const std::vector<int> required = required_edges(instance);
  const int k = static_cast<int>(required.size());
  if (k > options.max_required_edges)
    throw Error("instance too large for brute force: " + std::to_string(k) + " required edges");
  const bool large = formulation == Formulation::kLarge;
  const int robots = options.robots ? *options.robots
                     : large       ? multi_robot_count(instance)
                                   : robot_count(instance);
  if (robots > options.max_robots)
    throw Error("instance too large for brute force: " + std::to_string(robots) + " robots");
  const double P = instance.capacity();
  const int masks = 1 << k;
  std::vector<int> bit(static_cast<size_t>(instance.num_edges()), -1);
  for (int b = 0; b < k; ++b) bit[static_cast<size_t>(required[static_cast<size_t>(b)])] = b;

  // Per robot: required mask bits and fixed spray.
  std::vector<int> forced_mask(static_cast<size_t>(robots), 0);
  std::vector<std::vector<double>> fixed(static_cast<size_t>(robots), std::vector<double>(static_cast<size_t>(k), -1.0));
  std::vector<char> pinned(static_cast<size_t>(robots), 0);
  for (const SprayOverride& o : overrides) {
    if (o.robot < 0 || o.robot >= robots) return std::nullopt;
    const int b = bit[static_cast<size_t>(o.edge)];
    if (b < 0) {
      if (o.amount != 0.0) return std::nullopt;
      continue;
    }
    fixed[static_cast<size_t>(o.robot)][static_cast<size_t>(b)] = o.amount;
    pinned[static_cast<size_t>(o.robot)] = 1;
    if (o.amount > 0.0) forced_mask[static_cast<size_t>(o.robot)] |= 1 << b;
  }

  const WalkTable walks = cheapest_walks(instance, required);
  std::vector<int> order(static_cast<size_t>(masks));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return walks.cost[static_cast<size_t>(a)] < walks.cost[static_cast<size_t>(b)];
  });

  std::vector<double> demand(static_cast<size_t>(k));
  std::vector<int> zmax(static_cast<size_t>(k), 0);
  for (int b = 0; b < k; ++b) {
    const Edge& e = instance.edge(required[static_cast<size_t>(b)]);
    demand[static_cast<size_t>(b)] = e.demand;
    if (large) zmax[static_cast<size_t>(b)] = static_cast<int>(std::floor(e.demand / P + 1e-9));
  }
  const ShortestPathTable spt = dijkstra_all(instance);

  double best = kInf;
  std::vector<int> best_masks;
  std::vector<int> best_z;
  std::vector<double> best_residual;

  std::vector<int> z(static_cast<size_t>(k), 0);
  std::vector<int> chosen(static_cast<size_t>(robots), 0);
  std::vector<double> residual(static_cast<size_t>(k));
  std::vector<double> cap(static_cast<size_t>(robots));

  // Gale's condition for the robot -> edge transport problem.
  auto feasible = [&]() {
    int positive = 0;
    for (int b = 0; b < k; ++b)
      if (residual[static_cast<size_t>(b)] > 1e-9) positive |= 1 << b;
    for (int sub = positive; sub > 0; sub = (sub - 1) & positive) {
      double need = 0.0;
      for (int b = 0; b < k; ++b)
        if (sub >> b & 1) need += residual[static_cast<size_t>(b)];
      double have = 0.0;
      for (int r = 0; r < robots; ++r) {
        int reach = chosen[static_cast<size_t>(r)];
        for (int b = 0; b < k; ++b)
          if (fixed[static_cast<size_t>(r)][static_cast<size_t>(b)] >= 0.0) reach &= ~(1 << b);
        if (reach & sub) have += cap[static_cast<size_t>(r)];
      }
      if (need > have + 1e-9) return false;
    }
    return true;
  };

  auto evaluate = [&](double zcost) {
    double cost = zcost;
    for (int r = 0; r < robots; ++r) cost += walks.cost[static_cast<size_t>(chosen[static_cast<size_t>(r)])];
    if (cost >= best - 1e-9) return;
    for (int b = 0; b < k; ++b)
      residual[static_cast<size_t>(b)] = demand[static_cast<size_t>(b)] - z[static_cast<size_t>(b)] * P;
    for (int r = 0; r < robots; ++r) {
      cap[static_cast<size_t>(r)] = P;
      for (int b = 0; b < k; ++b) {
        const double f = fixed[static_cast<size_t>(r)][static_cast<size_t>(b)];
        if (f < 0.0) continue;
        cap[static_cast<size_t>(r)] -= f;
        residual[static_cast<size_t>(b)] -= f;
      }
      if (cap[static_cast<size_t>(r)] < -1e-9) return;
    }
    for (int b = 0; b < k; ++b) {
      double& v = residual[static_cast<size_t>(b)];
      if (v < -1e-9 && !large) return;
      v = std::max(v, 0.0);
    }
    if (!feasible()) return;
    best = cost;
    best_masks = chosen;
    best_z = z;
    best_residual = residual;
  };

  // Robots without overrides are interchangeable: enumerate them as a
  // multiset in walk-cost order.
  std::function<void(int, int, double, double)> assign = [&](int r, int floor_pos, double partial,
                                                            double zcost) {
    if (partial + zcost >= best - 1e-9) return;
    if (r == robots) {
      evaluate(zcost);
      return;
    }
    const bool is_pinned = pinned[static_cast<size_t>(r)] != 0;
    int free_left = 0;
    for (int q = r; q < robots; ++q) free_left += pinned[static_cast<size_t>(q)] == 0;
    for (int pos = is_pinned ? 0 : floor_pos; pos < masks; ++pos) {
      const int mask = order[static_cast<size_t>(pos)];
      const double c = walks.cost[static_cast<size_t>(mask)];
      if (!is_pinned && partial + zcost + c * free_left >= best - 1e-9) break;
      if (is_pinned && partial + zcost + c >= best - 1e-9) break;
      const int need = forced_mask[static_cast<size_t>(r)];
      if ((mask & need) != need) continue;
      chosen[static_cast<size_t>(r)] = mask;
      assign(r + 1, is_pinned ? floor_pos : pos, partial + c, zcost);
    }
  };

  std::function<void(int, double)> enumerate_z = [&](int b, double zcost) {
    if (b == k) {
      assign(0, 0, 0.0, zcost);
      return;
    }
    const double trip = singleton_trip_cost(instance, spt, required[static_cast<size_t>(b)]);
    for (int v = 0; v <= zmax[static_cast<size_t>(b)]; ++v) {
      z[static_cast<size_t>(b)] = v;
      enumerate_z(b + 1, zcost + v * trip);
    }
    z[static_cast<size_t>(b)] = 0;
  };
  enumerate_z(0, 0.0);

  if (best_masks.size() != static_cast<size_t>(robots) || !std::isfinite(best)) return std::nullopt;

  // Recover spray amounts with a max flow.
  chosen = best_masks;
  const int src = 0, sink = 1 + robots + k;
  DenseFlow flow(sink + 1);
  std::vector<double> rcap(static_cast<size_t>(robots), P);
  for (int r = 0; r < robots; ++r)
    for (int b = 0; b < k; ++b)
      if (fixed[static_cast<size_t>(r)][static_cast<size_t>(b)] >= 0.0)
        rcap[static_cast<size_t>(r)] -= fixed[static_cast<size_t>(r)][static_cast<size_t>(b)];
  for (int r = 0; r < robots; ++r) {
    flow.add(src, 1 + r, std::max(0.0, rcap[static_cast<size_t>(r)]));
    for (int b = 0; b < k; ++b) {
      const bool reachable = (chosen[static_cast<size_t>(r)] >> b & 1) &&
                             fixed[static_cast<size_t>(r)][static_cast<size_t>(b)] < 0.0;
      if (reachable) flow.add(1 + r, 1 + robots + b, kInf);
    }
  }
  for (int b = 0; b < k; ++b) flow.add(1 + robots + b, sink, best_residual[static_cast<size_t>(b)]);
  flow.run(src, sink);

  Solution sol;
  sol.formulation = formulation;
  sol.routes.assign(static_cast<size_t>(robots), {});
  sol.spray.assign(static_cast<size_t>(robots), std::vector<double>(static_cast<size_t>(instance.num_edges()), 0.0));
  for (int r = 0; r < robots; ++r) {
    sol.routes[static_cast<size_t>(r)] = walks.route[static_cast<size_t>(chosen[static_cast<size_t>(r)])];
    for (int b = 0; b < k; ++b) {
      const int e = required[static_cast<size_t>(b)];
      double v = fixed[static_cast<size_t>(r)][static_cast<size_t>(b)];
      if (v < 0.0) v = flow.flow(1 + r, 1 + robots + b);
      sol.spray[static_cast<size_t>(r)][static_cast<size_t>(e)] = v;
    }
  }
  if (large) {
    sol.singletons.assign(static_cast<size_t>(instance.num_edges()), 0);
    for (int b = 0; b < k; ++b)
      sol.singletons[static_cast<size_t>(required[static_cast<size_t>(b)])] = best_z[static_cast<size_t>(b)];
  }
  return sol;
}

Instance counterexample_instance() {
  return Instance("counterexample", 4,
                  {{0, 1, 1.0, 1.0}, {0, 2, 1.0, 1.0}, {0, 3, 1.0, 1.0}, {1, 2, 1.0, 12.0},
                   {2, 3, 1.0, 1.0}},
                  8.0);
}

Solution polish_solution(const Instance& instance, const Solution& solution, std::optional<int> robot_limit) {
  Solution out;
  try {
    out = cancel_cycles(instance, solution);
  } catch (const Error&) {
    return solution;
  }
  for (auto& row : out.spray) {
    for (double& v : row) {
      v = std::round(v * 1e9) / 1e9;
      if (v == 0.0) v = 0.0;  // no negative zero in output
    }
  }
  return verify_solution(instance, out, robot_limit).feasible ? out : solution;
}

}  // namespace scarp
