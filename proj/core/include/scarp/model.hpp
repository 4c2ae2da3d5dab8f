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

#ifndef SCARP_MODEL_HPP_
#define SCARP_MODEL_HPP_

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scarp/solution.hpp"

namespace scarp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kX, kY, kZ };

// X: key = arc id, robot >= 0. Y: key = edge id, robot >= 0. Z: key = edge id, robot = -1.
struct VarKey {
  VarKind kind = VarKind::kX;
  int robot = 0;
  int key = 0;
  friend bool operator==(const VarKey&, const VarKey&) = default;
};

// Bijection between (kind, robot, key) and dense column indices.
class VariableIndex {
 public:
  VariableIndex() = default;
  VariableIndex(int num_robots, int num_arcs, int num_edges)
      : num_robots_(num_robots),
        x_(static_cast<size_t>(num_robots) * static_cast<size_t>(num_arcs), -1),
        y_(static_cast<size_t>(num_robots) * static_cast<size_t>(num_edges), -1),
        z_(static_cast<size_t>(num_edges), -1),
        num_arcs_(num_arcs),
        num_edges_(num_edges) {}

  int add(const VarKey& key);
  std::optional<int> x(int robot, int arc) const { return get(x_, robot * num_arcs_ + arc); }
  std::optional<int> y(int robot, int edge) const { return get(y_, robot * num_edges_ + edge); }
  std::optional<int> z(int edge) const { return get(z_, edge); }
  const VarKey& key(int col) const { return keys_[static_cast<size_t>(col)]; }
  int size() const { return static_cast<int>(keys_.size()); }

 private:
  static std::optional<int> get(const std::vector<int>& v, int k) {
    int c = v[static_cast<size_t>(k)];
    if (c < 0) return std::nullopt;
    return c;
  }

  int num_robots_ = 0;
  std::vector<int> x_;
  std::vector<int> y_;
  std::vector<int> z_;
  std::vector<VarKey> keys_;
  int num_arcs_ = 0;
  int num_edges_ = 0;
};

struct Column {
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  bool integer = false;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

enum class RowTag {
  kCapacity,
  kDemand,
  kLinking,
  kFlow,
  kSymmetryOrder,
  kSymmetryOrient,
  kConnectivity,
  kOther
};

struct Row {
  std::vector<int> cols;
  std::vector<double> coefs;
  Sense sense = Sense::kGreaterEqual;
  double rhs = 0.0;
  RowTag tag = RowTag::kOther;

  double activity(const std::vector<double>& x) const {
    double s = 0.0;
    for (size_t k = 0; k < cols.size(); ++k) s += coefs[k] * x[static_cast<size_t>(cols[k])];
    return s;
  }
  // Amount by which x violates the row (0 when satisfied).
  double violation(const std::vector<double>& x) const;
};

// Solver-independent MILP: minimize cost . x subject to rows and column bounds.
struct Model {
  Formulation formulation = Formulation::kBasic;
  int num_robots = 0;
  int num_vertices = 0;
  int num_arcs = 0;
  int num_edges = 0;
  int depot = 0;
  VariableIndex index;
  std::vector<Column> columns;
  std::vector<Row> rows;

  int num_cols() const { return static_cast<int>(columns.size()); }
  int count_rows(RowTag tag) const;
  double objective(const std::vector<double>& x) const;
};

}  // namespace scarp

#endif  // SCARP_MODEL_HPP_
