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

#include "scarp/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <ostream>

#include "scarp/instance_io.hpp"

namespace scarp {

int VariableIndex::add(const VarKey& key) {
  const int col = static_cast<int>(keys_.size());
  switch (key.kind) {
    case VarKind::kX:
      x_[static_cast<size_t>(key.robot * num_arcs_ + key.key)] = col;
      break;
    case VarKind::kY:
      y_[static_cast<size_t>(key.robot * num_edges_ + key.key)] = col;
      break;
    case VarKind::kZ:
      z_[static_cast<size_t>(key.key)] = col;
      break;
  }
  keys_.push_back(key);
  return col;
}

double Row::violation(const std::vector<double>& x) const {
  const double act = activity(x);
  switch (sense) {
    case Sense::kLessEqual:
      return std::max(0.0, act - rhs);
    case Sense::kGreaterEqual:
      return std::max(0.0, rhs - act);
    case Sense::kEqual:
      return std::abs(act - rhs);
  }
  return 0.0;
}

int Model::count_rows(RowTag tag) const {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [tag](const Row& r) { return r.tag == tag; }));
}

double Model::objective(const std::vector<double>& x) const {
  double s = 0.0;
  for (size_t c = 0; c < columns.size(); ++c) s += columns[c].cost * x[c];
  return s;
}

int robot_count(double total_demand, double capacity) {
  if (!(capacity > 0.0)) throw Error("capacity must be positive");
  if (!(total_demand > 0.0)) throw Error("nothing to spray: total demand is zero");
  const double ratio = total_demand / capacity;
  const double rounded = std::round(ratio);
  // Exact multiples (up to the data's decimal precision) need no extra robot.
  if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio)) return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(ratio));
}

int robot_count(const Instance& instance) {
  return robot_count(instance.total_demand(), instance.capacity());
}

int multi_robot_count(const Instance& instance) {
  const int required = static_cast<int>(required_edges(instance).size());
  if (required <= 1) {
    std::clog << "warning: " << instance.name()
              << " has a single required edge; the large formulation keeps no multi-edge robots\n";
    return 0;
  }
  return std::min(required - 1, robot_count(instance));
}

namespace {

Model skeleton(const Instance& instance, Formulation formulation, int num_robots) {
  Model model;
  model.formulation = formulation;
  model.num_robots = num_robots;
  model.num_vertices = instance.num_vertices();
  model.num_arcs = instance.num_arcs();
  model.num_edges = instance.num_edges();
  model.depot = instance.depot();
  model.index = VariableIndex(num_robots, instance.num_arcs(), instance.num_edges());
  for (int r = 0; r < num_robots; ++r) {
    for (int a = 0; a < instance.num_arcs(); ++a) {
      model.index.add(VarKey{VarKind::kX, r, a});
      model.columns.push_back(
          Column{0.0, 1.0, instance.edge(Instance::edge_of_arc(a)).cost, true});
    }
  }
  const auto required = required_edges(instance);
  for (int r = 0; r < num_robots; ++r) {
    for (int e : required) {
      model.index.add(VarKey{VarKind::kY, r, e});
      model.columns.push_back(Column{0.0, kInfinity, 0.0, false});
    }
  }
  return model;
}

// Capacity, linking and flow conservation rows, shared by both formulations.
void add_routing_rows(Model& model, const Instance& instance) {
  const double P = instance.capacity();
  const auto required = required_edges(instance);
  for (int r = 0; r < model.num_robots; ++r) {
    Row cap;
    cap.sense = Sense::kLessEqual;
    cap.rhs = P;
    cap.tag = RowTag::kCapacity;
    for (int e : required) {
      cap.cols.push_back(*model.index.y(r, e));
      cap.coefs.push_back(1.0);
    }
    model.rows.push_back(std::move(cap));
  }
  for (int r = 0; r < model.num_robots; ++r) {
    for (int e : required) {
      Row link;
      link.sense = Sense::kLessEqual;
      link.rhs = 0.0;
      link.tag = RowTag::kLinking;
      link.cols = {*model.index.y(r, e), *model.index.x(r, 2 * e), *model.index.x(r, 2 * e + 1)};
      link.coefs = {1.0, -P, -P};
      model.rows.push_back(std::move(link));
    }
  }
  for (int r = 0; r < model.num_robots; ++r) {
    for (int v = 0; v < instance.num_vertices(); ++v) {
      Row flow;
      flow.sense = Sense::kEqual;
      flow.rhs = 0.0;
      flow.tag = RowTag::kFlow;
      for (int e : instance.incident(v)) {
        const int out = instance.edge(e).i == v ? 2 * e : 2 * e + 1;
        const int in = out ^ 1;
        flow.cols.push_back(*model.index.x(r, in));
        flow.coefs.push_back(1.0);
        flow.cols.push_back(*model.index.x(r, out));
        flow.coefs.push_back(-1.0);
      }
      model.rows.push_back(std::move(flow));
    }
  }
}

}  // namespace

Model build_basic(const Instance& instance) { return build_basic(instance, robot_count(instance)); }

Model build_basic(const Instance& instance, int num_robots) {
  if (num_robots < 1) throw Error("the basic formulation needs at least one robot");
  Model model = skeleton(instance, Formulation::kBasic, num_robots);
  for (int e : required_edges(instance)) {
    Row demand;
    demand.sense = Sense::kEqual;
    demand.rhs = instance.edge(e).demand;
    demand.tag = RowTag::kDemand;
    for (int r = 0; r < num_robots; ++r) {
      demand.cols.push_back(*model.index.y(r, e));
      demand.coefs.push_back(1.0);
    }
    model.rows.push_back(std::move(demand));
  }
  add_routing_rows(model, instance);
  return model;
}

Model build_large(const Instance& instance, const ShortestPathTable& spt,
                  std::optional<int> num_robots) {
  const int robots = num_robots ? *num_robots : multi_robot_count(instance);
  if (robots < 0) throw Error("negative robot count");
  Model model = skeleton(instance, Formulation::kLarge, robots);
  const double P = instance.capacity();
  const auto required = required_edges(instance);
  for (int e : required) {
    model.index.add(VarKey{VarKind::kZ, -1, e});
    const double bound = std::floor(instance.edge(e).demand / P + 1e-9);
    model.columns.push_back(Column{0.0, bound, singleton_trip_cost(instance, spt, e), true});
  }
  for (int e : required) {
    Row demand;
    demand.sense = Sense::kGreaterEqual;
    demand.rhs = instance.edge(e).demand;
    demand.tag = RowTag::kDemand;
    for (int r = 0; r < robots; ++r) {
      demand.cols.push_back(*model.index.y(r, e));
      demand.coefs.push_back(1.0);
    }
    demand.cols.push_back(*model.index.z(e));
    demand.coefs.push_back(P);
    model.rows.push_back(std::move(demand));
  }
  add_routing_rows(model, instance);
  return model;
}

Model add_symmetry(const Model& model, const Instance& instance) {
  Model out = model;
  const int s = instance.depot();
  for (int r = 1; r < model.num_robots; ++r) {
    Row order;
    order.sense = Sense::kGreaterEqual;
    order.rhs = 0.0;
    order.tag = RowTag::kSymmetryOrder;
    for (int a = 0; a < instance.num_arcs(); ++a) {
      const double c = instance.edge(Instance::edge_of_arc(a)).cost;
      if (c == 0.0) continue;
      order.cols.push_back(*model.index.x(r, a));
      order.coefs.push_back(c);
      order.cols.push_back(*model.index.x(r - 1, a));
      order.coefs.push_back(-c);
    }
    out.rows.push_back(std::move(order));
  }
  std::vector<int> neighbors;
  for (int e : instance.incident(s)) neighbors.push_back(instance.opposite(e, s));
  std::sort(neighbors.begin(), neighbors.end());
  for (int r = 0; r < model.num_robots; ++r) {
    for (int k : neighbors) {
      Row orient;
      orient.sense = Sense::kGreaterEqual;
      orient.rhs = 0.0;
      orient.tag = RowTag::kSymmetryOrient;
      for (int i : neighbors) {
        if (i > k) break;
        orient.cols.push_back(*model.index.x(r, *instance.find_arc(s, i)));
        orient.coefs.push_back(1.0);
      }
      orient.cols.push_back(*model.index.x(r, *instance.find_arc(k, s)));
      orient.coefs.push_back(-1.0);
      out.rows.push_back(std::move(orient));
    }
  }
  return out;
}

Row connectivity_row(const Model& model, const Instance& instance, int robot,
                     const std::vector<char>& in_source_side) {
  Row row;
  row.sense = Sense::kGreaterEqual;
  row.rhs = 0.0;
  row.tag = RowTag::kConnectivity;
  const double P = instance.capacity();
  for (int e = 0; e < instance.num_edges(); ++e) {
    const Edge& ed = instance.edge(e);
    const bool si = in_source_side[static_cast<size_t>(ed.i)] != 0;
    const bool sj = in_source_side[static_cast<size_t>(ed.j)] != 0;
    if (si && !sj) {
      row.cols.push_back(*model.index.x(robot, 2 * e));
      row.coefs.push_back(P);
    } else if (!si && sj) {
      row.cols.push_back(*model.index.x(robot, 2 * e + 1));
      row.coefs.push_back(P);
    } else if (!si && !sj) {
      if (auto y = model.index.y(robot, e)) {
        row.cols.push_back(*y);
        row.coefs.push_back(-1.0);
      }
    }
  }
  return row;
}

Model add_connectivity_rows(const Model& model, const Instance& instance, long max_rows) {
  const int n = instance.num_vertices();
  if (n - 1 >= 62) throw Error("too many vertices to enumerate connectivity rows");
  const int s = instance.depot();
  std::vector<int> others;
  for (int v = 0; v < n; ++v)
    if (v != s) others.push_back(v);
  const unsigned long long subsets = 1ULL << others.size();
  // Count first so that oversized enumerations fail before allocating.
  const auto required = required_edges(instance);
  auto inside_demand = [&](unsigned long long mask) {
    // mask marks vertices on the sink side T.
    std::vector<char> in_t(static_cast<size_t>(n), 0);
    for (size_t k = 0; k < others.size(); ++k)
      if (mask >> k & 1ULL) in_t[static_cast<size_t>(others[k])] = 1;
    for (int e : required) {
      const Edge& ed = instance.edge(e);
      if (in_t[static_cast<size_t>(ed.i)] && in_t[static_cast<size_t>(ed.j)]) return true;
    }
    return false;
  };
  if (static_cast<double>(subsets) * model.num_robots > 64.0 * static_cast<double>(max_rows))
    throw Error("connectivity enumeration too large for " + instance.name());
  long count = 0;
  for (unsigned long long mask = 1; mask < subsets; ++mask)
    if (inside_demand(mask)) ++count;
  if (count * model.num_robots > max_rows)
    throw Error("connectivity enumeration too large for " + instance.name() + " (" +
                std::to_string(count * model.num_robots) + " rows)");
  Model out = model;
  for (int r = 0; r < model.num_robots; ++r) {
    for (unsigned long long mask = 1; mask < subsets; ++mask) {
      if (!inside_demand(mask)) continue;
      std::vector<char> in_s(static_cast<size_t>(n), 1);
      for (size_t k = 0; k < others.size(); ++k)
        if (mask >> k & 1ULL) in_s[static_cast<size_t>(others[k])] = 0;
      out.rows.push_back(connectivity_row(model, instance, r, in_s));
    }
  }
  return out;
}

std::optional<double> gap_percent(double ub, double lb) {
  if (!std::isfinite(ub) || !std::isfinite(lb) || !(lb > 0.0)) return std::nullopt;
  return 100.0 * (ub - lb) / lb;
}

std::optional<double> incumbent_gap_percent(double ub, double lb) {
  if (!std::isfinite(ub) || !std::isfinite(lb) || !(ub > 0.0)) return std::nullopt;
  return 100.0 * (ub - lb) / ub;
}

void write_mps(const Model& model, std::ostream& out, const std::string& name) {
  auto row_name = [](size_t k) { return "R" + std::to_string(k); };
  auto col_name = [&](int c) {
    const VarKey& key = model.index.key(c);
    switch (key.kind) {
      case VarKind::kX:
        return "x_" + std::to_string(key.robot + 1) + "_" + std::to_string(key.key);
      case VarKind::kY:
        return "y_" + std::to_string(key.robot + 1) + "_" + std::to_string(key.key);
      case VarKind::kZ:
        return "z_" + std::to_string(key.key);
    }
    return std::string("c") + std::to_string(c);
  };
  // Column-major view of the rows.
  std::vector<std::vector<std::pair<size_t, double>>> by_col(model.columns.size());
  for (size_t k = 0; k < model.rows.size(); ++k) {
    const Row& row = model.rows[k];
    for (size_t t = 0; t < row.cols.size(); ++t)
      by_col[static_cast<size_t>(row.cols[t])].emplace_back(k, row.coefs[t]);
  }
  out << "NAME " << name << "\n";
  out << "ROWS\n N COST\n";
  for (size_t k = 0; k < model.rows.size(); ++k) {
    const char* s = model.rows[k].sense == Sense::kLessEqual    ? "L"
                    : model.rows[k].sense == Sense::kGreaterEqual ? "G"
                                                                  : "E";
    out << ' ' << s << ' ' << row_name(k) << '\n';
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int c = 0; c < model.num_cols(); ++c) {
    const Column& col = model.columns[static_cast<size_t>(c)];
    if (col.integer != in_int) {
      out << " MARKER" << marker++ << " 'MARKER' " << (col.integer ? "'INTORG'" : "'INTEND'")
          << '\n';
      in_int = col.integer;
    }
    const std::string cn = col_name(c);
    if (col.cost != 0.0) out << ' ' << cn << " COST " << format_number(col.cost) << '\n';
    for (auto [k, v] : by_col[static_cast<size_t>(c)])
      out << ' ' << cn << ' ' << row_name(k) << ' ' << format_number(v) << '\n';
    if (col.cost == 0.0 && by_col[static_cast<size_t>(c)].empty()) out << ' ' << cn << " COST 0\n";
  }
  if (in_int) out << " MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (size_t k = 0; k < model.rows.size(); ++k)
    if (model.rows[k].rhs != 0.0)
      out << " RHS " << row_name(k) << ' ' << format_number(model.rows[k].rhs) << '\n';
  out << "BOUNDS\n";
  for (int c = 0; c < model.num_cols(); ++c) {
    const Column& col = model.columns[static_cast<size_t>(c)];
    const std::string cn = col_name(c);
    if (col.lower == col.upper) {
      out << " FX BND " << cn << ' ' << format_number(col.lower) << '\n';
      continue;
    }
    if (col.lower != 0.0) out << " LO BND " << cn << ' ' << format_number(col.lower) << '\n';
    if (std::isfinite(col.upper)) out << " UP BND " << cn << ' ' << format_number(col.upper) << '\n';
  }
  out << "ENDATA\n";
}

std::vector<double> solution_to_point(const Model& model, const Instance& instance,
                                      const Solution& solution) {
  std::vector<double> x(static_cast<size_t>(model.num_cols()), 0.0);
  for (int r = 0; r < solution.num_robots(); ++r) {
    const auto& route = solution.routes[static_cast<size_t>(r)];
    const auto& spray = solution.spray[static_cast<size_t>(r)];
    const bool used = route.size() > 1 ||
                      std::any_of(spray.begin(), spray.end(), [](double v) { return v > 0.0; });
    if (r >= model.num_robots) {
      if (used) throw Error("solution uses more robots than the model has");
      continue;
    }
    for (size_t k = 0; k + 1 < route.size(); ++k) {
      auto a = instance.find_arc(route[k], route[k + 1]);
      if (!a) throw Error("route uses a missing edge");
      double& v = x[static_cast<size_t>(*model.index.x(r, *a))];
      if (v >= 1.0) throw Error("route traverses an arc twice in the same direction");
      v = 1.0;
    }
    for (size_t e = 0; e < spray.size(); ++e) {
      if (spray[e] == 0.0) continue;
      auto c = model.index.y(r, static_cast<int>(e));
      if (!c) throw Error("spray on an edge without demand");
      x[static_cast<size_t>(*c)] = spray[e];
    }
  }
  for (size_t e = 0; e < solution.singletons.size(); ++e) {
    if (solution.singletons[e] == 0) continue;
    auto c = model.index.z(static_cast<int>(e));
    if (!c) throw Error("singleton trips are not part of this model");
    x[static_cast<size_t>(*c)] = solution.singletons[e];
  }
  return x;
}

}  // namespace scarp
