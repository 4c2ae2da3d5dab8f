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

#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace scarp::testing {

Instance counterexample() {
  return Instance("counterexample", 4,
                  {{0, 1, 1.0, 1.0}, {0, 2, 1.0, 1.0}, {0, 3, 1.0, 1.0}, {1, 2, 1.0, 12.0},
                   {2, 3, 1.0, 1.0}},
                  8.0);
}

int edge_id(const Instance& instance, int u, int v) {
  auto e = instance.find_edge(u - 1, v - 1);
  if (!e) throw Error("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return *e;
}

Solution optimal_plan(const Instance& inst) {
  Solution s;
  s.formulation = Formulation::kBasic;
  s.routes = {{0, 1, 2, 0}, {0, 1, 2, 3, 0}};
  s.spray.assign(2, std::vector<double>(static_cast<size_t>(inst.num_edges()), 0.0));
  s.spray[0][static_cast<size_t>(edge_id(inst, 2, 3))] = 7.0;
  s.spray[0][static_cast<size_t>(edge_id(inst, 1, 3))] = 1.0;
  s.spray[1][static_cast<size_t>(edge_id(inst, 1, 2))] = 1.0;
  s.spray[1][static_cast<size_t>(edge_id(inst, 2, 3))] = 5.0;
  s.spray[1][static_cast<size_t>(edge_id(inst, 3, 4))] = 1.0;
  s.spray[1][static_cast<size_t>(edge_id(inst, 1, 4))] = 1.0;
  return s;
}

Instance random_tiny(std::mt19937_64& rng, int index) {
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    const int n = uniform(4, 6);
    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < n; ++v) pairs.emplace_back(uniform(0, v - 1), v);
    std::vector<std::pair<int, int>> extra;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::find(pairs.begin(), pairs.end(), std::pair{i, j}) == pairs.end()) extra.emplace_back(i, j);
    std::shuffle(extra.begin(), extra.end(), rng);
    const int add = uniform(0, std::min<int>(3, static_cast<int>(extra.size())));
    pairs.insert(pairs.end(), extra.begin(), extra.begin() + add);
    const int m = static_cast<int>(pairs.size());
    if (m < 3) continue;
    const int required = uniform(3, std::min(6, m));
    std::vector<int> order(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) order[static_cast<size_t>(k)] = k;
    std::shuffle(order.begin(), order.end(), rng);
    const int capacity = uniform(3, 8);
    std::vector<Edge> edges;
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
      const auto [i, j] = pairs[static_cast<size_t>(k)];
      const bool req = std::find(order.begin(), order.begin() + required, k) != order.begin() + required;
      const double d = req ? uniform(1, capacity + capacity / 2) : 0.0;
      total += d;
      edges.push_back({i, j, static_cast<double>(uniform(1, 5)), d});
    }
    if (std::ceil(total / capacity) > 3.0) continue;
    return Instance("tiny" + std::to_string(index), n, std::move(edges), capacity);
  }
}

}  // namespace scarp::testing
