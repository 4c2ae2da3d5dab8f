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

#include "scarp/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace scarp {

namespace {

std::string vertex_pair(int a, int b) {
  return "(" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ")";
}

}  // namespace

Instance::Instance(std::string name, int num_vertices, std::vector<Edge> edges, double capacity,
                   int depot)
    : name_(std::move(name)),
      num_vertices_(num_vertices),
      edges_(std::move(edges)),
      capacity_(capacity),
      depot_(depot) {
  if (num_vertices_ <= 0) throw ValidationError("instance needs at least one vertex");
  if (!(capacity_ > 0.0)) throw ValidationError("capacity must be positive");
  if (depot_ < 0 || depot_ >= num_vertices_) throw ValidationError("depot out of range");
  if (edges_.empty()) throw ValidationError("instance has no edges");
  for (Edge& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= num_vertices_)
      throw ValidationError("edge " + vertex_pair(e.i, e.j) + " references a missing vertex");
    if (e.i == e.j) throw ValidationError("self-loop at vertex " + std::to_string(e.i + 1));
    if (!(e.cost >= 0.0)) throw ValidationError("negative cost on edge " + vertex_pair(e.i, e.j));
    if (!(e.demand >= 0.0))
      throw ValidationError("negative demand on edge " + vertex_pair(e.i, e.j));
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
      throw ValidationError("parallel edge " + vertex_pair(edges_[k].i, edges_[k].j));
  }

  adjacency_.assign(static_cast<size_t>(num_vertices_), {});
  for (int e = 0; e < num_edges(); ++e) {
    adjacency_[static_cast<size_t>(edges_[static_cast<size_t>(e)].i)].push_back(e);
    adjacency_[static_cast<size_t>(edges_[static_cast<size_t>(e)].j)].push_back(e);
    total_demand_ += edges_[static_cast<size_t>(e)].demand;
  }
  for (int v = 0; v < num_vertices_; ++v) {
    auto& adj = adjacency_[static_cast<size_t>(v)];
    std::sort(adj.begin(), adj.end(),
              [&](int a, int b) { return opposite(a, v) < opposite(b, v); });
  }
  if (!(total_demand_ > 0.0)) throw ValidationError("no edge has positive demand");

  std::vector<int> all_arcs(static_cast<size_t>(num_arcs()));
  std::iota(all_arcs.begin(), all_arcs.end(), 0);
  std::vector<Arc> arcs;
  arcs.reserve(all_arcs.size());
  for (int a : all_arcs) arcs.push_back(arc(a));
  auto seen = reachable_from(num_vertices_, arcs, depot_);
  if (static_cast<int>(seen.size()) != num_vertices_) {
    int missing = 0;
    for (int v = 0; v < num_vertices_; ++v) {
      if (!std::binary_search(seen.begin(), seen.end(), v)) {
        missing = v;
        break;
      }
    }
    throw ValidationError("graph is disconnected: no path " + vertex_pair(depot_, missing));
  }
}

std::optional<int> Instance::find_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                             [](const Edge& e, const std::pair<int, int>& key) {
                               return std::tie(e.i, e.j) < std::tie(key.first, key.second);
                             });
  if (it == edges_.end() || it->i != u || it->j != v) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

std::optional<int> Instance::find_arc(int tail, int head) const {
  auto e = find_edge(tail, head);
  if (!e) return std::nullopt;
  return tail < head ? 2 * *e : 2 * *e + 1;
}

std::vector<int> ShortestPathTable::path(int i, int j) const {
  if (i == j) return {i};
  const int lo = std::min(i, j);
  const int root = std::max(i, j);
  std::vector<int> out{lo};
  int v = lo;
  while (v != root) {
    v = next_[index(v, root)];
    out.push_back(v);
  }
  if (i > j) std::reverse(out.begin(), out.end());
  return out;
}

ShortestPathTable dijkstra_all(int num_vertices, std::span<const Edge> edges) {
  const auto n = static_cast<size_t>(num_vertices);
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const Edge& e : edges) {
    adj[static_cast<size_t>(e.i)].emplace_back(e.j, e.cost);
    adj[static_cast<size_t>(e.j)].emplace_back(e.i, e.cost);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n * n, kInf);
  std::vector<int> next(n * n, -1);

  std::vector<double> d(n);
  std::vector<int> hop(n);
  std::vector<char> done(n);
  using Entry = std::pair<double, int>;
  for (int root = 0; root < num_vertices; ++root) {
    std::fill(d.begin(), d.end(), kInf);
    std::fill(hop.begin(), hop.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    d[static_cast<size_t>(root)] = 0.0;
    pq.emplace(0.0, root);
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[static_cast<size_t>(u)]) continue;
      done[static_cast<size_t>(u)] = 1;
      for (auto [w, c] : adj[static_cast<size_t>(u)]) {
        if (done[static_cast<size_t>(w)]) continue;
        const double cand = c + du;
        double& dw = d[static_cast<size_t>(w)];
        int& hw = hop[static_cast<size_t>(w)];
        if (cand < dw - kEps || (cand <= dw + kEps && u < hw)) {
          dw = cand;
          hw = u;
          pq.emplace(cand, w);
        }
      }
    }
    for (int i = 0; i <= root; ++i) {
      if (d[static_cast<size_t>(i)] == kInf)
        throw Error("graph is disconnected: no path " + vertex_pair(i, root));
      dist[static_cast<size_t>(i) * n + static_cast<size_t>(root)] = d[static_cast<size_t>(i)];
      dist[static_cast<size_t>(root) * n + static_cast<size_t>(i)] = d[static_cast<size_t>(i)];
    }
    for (size_t i = 0; i < n; ++i) next[i * n + static_cast<size_t>(root)] = hop[i];
  }
  return ShortestPathTable(num_vertices, std::move(dist), std::move(next));
}

ShortestPathTable dijkstra_all(const Instance& instance) {
  return dijkstra_all(instance.num_vertices(), instance.edges());
}

double path_cost(const Instance& instance, std::span<const int> path) {
  if (path.size() < 2) return 0.0;
  auto step = [&](int a, int b) {
    auto e = instance.find_edge(a, b);
    if (!e) throw Error("walk uses missing edge " + vertex_pair(a, b));
    return instance.edge(*e).cost;
  };
  double total = 0.0;
  if (path.front() >= path.back()) {
    for (size_t k = 0; k + 1 < path.size(); ++k) total += step(path[k], path[k + 1]);
  } else {
    for (size_t k = path.size() - 1; k > 0; --k) total += step(path[k - 1], path[k]);
  }
  return total;
}

std::vector<int> reachable_from(int num_vertices, std::span<const Arc> arcs, int source) {
  std::vector<std::vector<int>> out(static_cast<size_t>(num_vertices));
  for (const Arc& a : arcs) out[static_cast<size_t>(a.tail)].push_back(a.head);
  std::vector<char> seen(static_cast<size_t>(num_vertices), 0);
  std::queue<int> queue;
  seen[static_cast<size_t>(source)] = 1;
  queue.push(source);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (int w : out[static_cast<size_t>(u)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        queue.push(w);
      }
    }
  }
  std::vector<int> result;
  for (int v = 0; v < num_vertices; ++v)
    if (seen[static_cast<size_t>(v)]) result.push_back(v);
  return result;
}

std::vector<int> required_edges(const Instance& instance) {
  std::vector<int> out;
  for (int e = 0; e < instance.num_edges(); ++e)
    if (instance.edge(e).demand > 0.0) out.push_back(e);
  return out;
}

std::vector<int> euler_circuit(const Instance& instance, std::span<const int> arc_ids, int start) {
  const auto n = static_cast<size_t>(instance.num_vertices());
  std::vector<std::vector<int>> out(n);
  std::vector<int> balance(n, 0);
  for (int a : arc_ids) {
    Arc arc = instance.arc(a);
    out[static_cast<size_t>(arc.tail)].push_back(a);
    ++balance[static_cast<size_t>(arc.tail)];
    --balance[static_cast<size_t>(arc.head)];
  }
  for (size_t v = 0; v < n; ++v) {
    if (balance[v] != 0)
      throw Error("arc set is not balanced at vertex " + std::to_string(v + 1));
    // Reverse so that pop_back yields the lowest arc id first.
    std::sort(out[v].rbegin(), out[v].rend());
  }
  std::vector<int> circuit;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    auto& pending = out[static_cast<size_t>(v)];
    if (pending.empty()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      int a = pending.back();
      pending.pop_back();
      stack.push_back(instance.arc(a).head);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != arc_ids.size() + 1)
    throw Error("arc set is not connected to vertex " + std::to_string(start + 1));
  return circuit;
}

std::vector<int> orient_edge_multiset(const Instance& instance, std::span<const int> edge_use,
                                      int /*start*/) {
  const int m = instance.num_edges();
  std::vector<int> use(edge_use.begin(), edge_use.end());
  use.resize(static_cast<size_t>(m), 0);
  std::vector<int> arcs;
  std::vector<int> single;
  for (int e = 0; e < m; ++e) {
    int& k = use[static_cast<size_t>(e)];
    while (k >= 3) k -= 2;
    if (k == 2) {
      arcs.push_back(2 * e);
      arcs.push_back(2 * e + 1);
    } else if (k == 1) {
      single.push_back(e);
    }
  }
  // Orient single-use edges component by component along undirected Euler
  // circuits; each component has even degrees once doubled edges are removed.
  const auto n = static_cast<size_t>(instance.num_vertices());
  std::vector<std::vector<int>> adj(n);
  for (int e : single) {
    adj[static_cast<size_t>(instance.edge(e).i)].push_back(e);
    adj[static_cast<size_t>(instance.edge(e).j)].push_back(e);
  }
  for (size_t v = 0; v < n; ++v) {
    if (adj[v].size() % 2 != 0)
      throw Error("edge multiset has odd degree at vertex " + std::to_string(v + 1));
    std::sort(adj[v].rbegin(), adj[v].rend());
  }
  std::vector<char> used(static_cast<size_t>(m), 0);
  for (size_t s = 0; s < n; ++s) {
    // Iterative Hierholzer on the undirected single-use subgraph.
    std::vector<std::pair<int, int>> stack{{static_cast<int>(s), -1}};
    while (!stack.empty()) {
      auto [v, via] = stack.back();
      auto& pending = adj[static_cast<size_t>(v)];
      while (!pending.empty() && used[static_cast<size_t>(pending.back())]) pending.pop_back();
      if (pending.empty()) {
        stack.pop_back();
        if (via >= 0 && !stack.empty()) {
          int from = stack.back().first;
          arcs.push_back(from == instance.edge(via).i ? 2 * via : 2 * via + 1);
        }
      } else {
        int e = pending.back();
        pending.pop_back();
        used[static_cast<size_t>(e)] = 1;
        stack.emplace_back(instance.opposite(e, v), e);
      }
    }
  }
  if (arcs.empty()) return {};
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace scarp
