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

#ifndef SCARP_GRAPH_HPP_
#define SCARP_GRAPH_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scarp/common.hpp"

namespace scarp {

// Vertices are 0-based internally; files and reports use 1-based ids.
struct Edge {
  int i = 0;  // i < j
  int j = 0;
  double cost = 0.0;
  double demand = 0.0;
};

struct Arc {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Undirected demand graph. Edges are stored sorted by (i, j); edge e induces
// the directed arcs 2e = (i -> j) and 2e + 1 = (j -> i).
//
// Construction validates: no self-loops or parallel edges, non-negative costs
// and demands, depot in range, at least one positive demand, connectivity.
class Instance {
 public:
  Instance(std::string name, int num_vertices, std::vector<Edge> edges, double capacity,
           int depot = 0);

  const std::string& name() const { return name_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_arcs() const { return 2 * num_edges(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
  double capacity() const { return capacity_; }
  int depot() const { return depot_; }
  double total_demand() const { return total_demand_; }

  Arc arc(int a) const {
    const Edge& e = edges_[static_cast<size_t>(a / 2)];
    return a % 2 == 0 ? Arc{e.i, e.j} : Arc{e.j, e.i};
  }
  static int edge_of_arc(int a) { return a / 2; }
  // Arc id for tail -> head, if the edge exists.
  std::optional<int> find_arc(int tail, int head) const;
  std::optional<int> find_edge(int u, int v) const;
  // Edge ids incident to v, ordered by the opposite endpoint.
  std::span<const int> incident(int v) const { return adjacency_[static_cast<size_t>(v)]; }
  int opposite(int e, int v) const {
    const Edge& ed = edge(e);
    return ed.i == v ? ed.j : ed.i;
  }

 private:
  std::string name_;
  int num_vertices_;
  std::vector<Edge> edges_;
  double capacity_;
  int depot_;
  double total_demand_ = 0.0;
  std::vector<std::vector<int>> adjacency_;
};

// All-pairs shortest paths. dist is symmetric; the path between i and j is
// rooted at max(i, j), so summing edge costs starting from that endpoint
// reproduces dist exactly.
class ShortestPathTable {
 public:
  ShortestPathTable() = default;
  ShortestPathTable(int n, std::vector<double> dist, std::vector<int> next)
      : n_(n), dist_(std::move(dist)), next_(std::move(next)) {}

  int size() const { return n_; }
  double dist(int i, int j) const { return dist_[index(i, j)]; }
  // Vertex sequence i, ..., j.
  std::vector<int> path(int i, int j) const;

 private:
  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j);
  }

  int n_ = 0;
  std::vector<double> dist_;
  // next_[i][r]: successor of i on the path towards r in the tree rooted at r.
  std::vector<int> next_;
};

// Dijkstra from every vertex. Ties prefer the smaller vertex id.
// Throws Error naming an unreachable pair (1-based) if the graph is disconnected.
ShortestPathTable dijkstra_all(int num_vertices, std::span<const Edge> edges);
ShortestPathTable dijkstra_all(const Instance& instance);

// Cost of a vertex sequence, summed from the endpoint with the larger id so
// that shortest paths reproduce ShortestPathTable::dist bit for bit.
double path_cost(const Instance& instance, std::span<const int> path);

// Vertices reachable from source along the given arcs; sorted, includes source.
std::vector<int> reachable_from(int num_vertices, std::span<const Arc> arcs, int source);

// Ids of edges with positive demand, in (i, j) order.
std::vector<int> required_edges(const Instance& instance);

// Closed walk from start using every arc exactly once (Hierholzer, lowest arc
// id first). Requires balanced in/out degrees and all arcs reachable from
// start; throws Error otherwise.
std::vector<int> euler_circuit(const Instance& instance, std::span<const int> arc_ids, int start);

// Turns an edge multiset into a set of distinct arcs forming one closed walk
// through start: edges used 3+ times lose pairs of copies, doubled edges
// become an opposite arc pair, and the single-use edges are oriented along
// Euler circuits of their components. Requires every vertex to have even
// degree and all used edges to be connected to start.
std::vector<int> orient_edge_multiset(const Instance& instance, std::span<const int> edge_use,
                                      int start);

}  // namespace scarp

#endif  // SCARP_GRAPH_HPP_
