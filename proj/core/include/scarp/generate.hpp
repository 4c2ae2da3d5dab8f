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

#ifndef SCARP_GENERATE_HPP_
#define SCARP_GENERATE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "scarp/graph.hpp"

namespace scarp {

// Orchard-style grid: `rows` x `cols` vertices, tree-row edges run along the
// columns and are the spray candidates; the first and last rows are headlands.
// Random non-headland edges are removed (never disconnecting the graph) until
// `num_edges` remain, then `required` tree-row edges (all of them when 0)
// share `total_demand` roughly in proportion to their length. Demands carry
// three decimals and sum to total_demand exactly at that precision.
struct OrchardSpec {
  std::string name;
  int rows = 0;
  int cols = 0;
  int num_edges = 0;
  int required = 0;
  double capacity = 0.0;
  double total_demand = 0.0;
  std::uint64_t seed = 1;
};

Instance generate_orchard(const OrchardSpec& spec);

// Reconstructions with the vertex, edge, capacity and total-demand signatures
// of the LD_1..LD_3 and A..G reference instances.
std::vector<OrchardSpec> reference_orchards();

}  // namespace scarp

#endif  // SCARP_GENERATE_HPP_
