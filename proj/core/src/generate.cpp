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

#include "scarp/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace scarp {

namespace {

struct GridEdge {
  int i;
  int j;
  bool tree_row;
  bool headland;
  bool alive = true;
};

bool connected(int n, const std::vector<GridEdge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const GridEdge& e : edges) {
    if (!e.alive) continue;
    adj[static_cast<size_t>(e.i)].push_back(e.j);
    adj[static_cast<size_t>(e.j)].push_back(e.i);
  }
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (seen[static_cast<size_t>(v)]) continue;
      seen[static_cast<size_t>(v)] = 1;
      ++count;
      stack.push_back(v);
    }
  }
  return count == n;
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

Instance generate_orchard(const OrchardSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) throw Error("orchard grid needs at least 2 x 2 vertices");
  const int n = spec.rows * spec.cols;
  auto id = [&](int r, int c) { return r * spec.cols + c; };
  std::vector<GridEdge> edges;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      if (r + 1 < spec.rows) edges.push_back({id(r, c), id(r + 1, c), true, false});
      if (c + 1 < spec.cols) edges.push_back({id(r, c), id(r, c + 1), false, r == 0 || r + 1 == spec.rows});
    }
  }
  const int full = static_cast<int>(edges.size());
  if (spec.num_edges > full || spec.num_edges < n - 1)
    throw Error("orchard edge count out of range for the grid");

  std::mt19937_64 rng(spec.seed);
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  int alive = full;
  for (int k : order) {
    if (alive == spec.num_edges) break;
    GridEdge& e = edges[static_cast<size_t>(k)];
    if (e.headland) continue;
    e.alive = false;
    if (connected(n, edges)) {
      --alive;
    } else {
      e.alive = true;
    }
  }
  if (alive != spec.num_edges) throw Error("could not remove enough edges without disconnecting");

  std::uniform_real_distribution<double> length(1.0, 1.5);
  std::uniform_real_distribution<double> spread(0.8, 1.2);
  std::vector<Edge> out;
  std::vector<int> rows;
  for (const GridEdge& e : edges) {
    if (!e.alive) continue;
    const double cost = e.tree_row ? std::round(length(rng) * 100.0) / 100.0 : 0.5;
    if (e.tree_row) rows.push_back(static_cast<int>(out.size()));
    out.push_back({e.i, e.j, cost, 0.0});
  }
  std::shuffle(rows.begin(), rows.end(), rng);
  const size_t take = spec.required > 0 ? std::min(rows.size(), static_cast<size_t>(spec.required)) : rows.size();
  rows.resize(take);
  std::sort(rows.begin(), rows.end());
  if (rows.empty()) throw Error("orchard has no tree-row edge to spray");

  std::vector<double> weight;
  for (int k : rows) weight.push_back(out[static_cast<size_t>(k)].cost * spread(rng));
  const double total_weight = std::accumulate(weight.begin(), weight.end(), 0.0);
  double assigned = 0.0;
  for (size_t t = 0; t + 1 < rows.size(); ++t) {
    const double d = std::max(0.001, round3(spec.total_demand * weight[t] / total_weight));
    out[static_cast<size_t>(rows[t])].demand = d;
    assigned += d;
  }
  out[static_cast<size_t>(rows.back())].demand = round3(spec.total_demand - assigned);
  return Instance(spec.name, n, std::move(out), spec.capacity);
}

std::vector<OrchardSpec> reference_orchards() {
  return {
      {"LD_1", 4, 4, 22, 6, 10.0, 260.131, 11},
      {"LD_2", 4, 4, 22, 6, 10.0, 390.195, 11},
      {"LD_3", 4, 4, 22, 5, 10.0, 520.26, 11},
      {"A", 4, 4, 22, 0, 20.0, 13.01, 101},
      {"B", 4, 5, 28, 0, 20.0, 17.14, 102},
      {"C", 5, 6, 43, 0, 20.0, 28.36, 103},
      {"D", 6, 7, 61, 0, 20.0, 32.58, 104},
      {"E", 7, 8, 82, 0, 20.0, 46.59, 105},
      {"F", 6, 13, 115, 0, 20.0, 52.98, 106},
      {"G", 7, 14, 145, 0, 20.0, 74.78, 107},
  };
}

}  // namespace scarp
