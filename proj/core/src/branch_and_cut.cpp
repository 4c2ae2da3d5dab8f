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

#include "scarp/branch_and_cut.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "scarp/formulation.hpp"
#include "scarp/simplex.hpp"

namespace scarp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasible:
      return "feasible";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kLimit:
      return "limit";
  }
  return "unknown";
}

std::vector<Cut> separate_connectivity(const Model& model, const Instance& instance,
                                       std::span<const double> point, double support_threshold) {
  std::vector<Cut> cuts;
  const int n = instance.num_vertices();
  const double P = instance.capacity();
  for (int r = 0; r < model.num_robots; ++r) {
    std::vector<Arc> support;
    for (int a = 0; a < instance.num_arcs(); ++a) {
      if (point[static_cast<size_t>(*model.index.x(r, a))] > support_threshold) support.push_back(instance.arc(a));
    }
    const auto reached = reachable_from(n, support, instance.depot());
    if (static_cast<int>(reached.size()) == n) continue;
    std::vector<char> in_s(static_cast<size_t>(n), 0);
    for (int v : reached) in_s[static_cast<size_t>(v)] = 1;
    // Components of the graph induced by T.
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int num_comp = 0;
    for (int v = 0; v < n; ++v) {
      if (in_s[static_cast<size_t>(v)] || comp[static_cast<size_t>(v)] >= 0) continue;
      std::vector<int> stack{v};
      comp[static_cast<size_t>(v)] = num_comp;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int e : instance.incident(u)) {
          const int w = instance.opposite(e, u);
          if (in_s[static_cast<size_t>(w)] || comp[static_cast<size_t>(w)] >= 0) continue;
          comp[static_cast<size_t>(w)] = num_comp;
          stack.push_back(w);
        }
      }
      ++num_comp;
    }
    for (int c = 0; c < num_comp; ++c) {
      double inside = 0.0;
      double crossing = 0.0;
      for (int e = 0; e < instance.num_edges(); ++e) {
        const Edge& ed = instance.edge(e);
        const bool ci = comp[static_cast<size_t>(ed.i)] == c;
        const bool cj = comp[static_cast<size_t>(ed.j)] == c;
        if (ci && cj) {
          if (auto y = model.index.y(r, e)) inside += point[static_cast<size_t>(*y)];
        } else if (ci != cj) {
          const int into = ci ? 2 * e + 1 : 2 * e;  // arc entering the component
          crossing += point[static_cast<size_t>(*model.index.x(r, into))];
        }
      }
      if (inside <= P * crossing + 1e-6) continue;
      Cut cut;
      cut.robot = r;
      cut.source_side.assign(static_cast<size_t>(n), 1);
      for (int v = 0; v < n; ++v)
        if (comp[static_cast<size_t>(v)] == c) cut.source_side[static_cast<size_t>(v)] = 0;
      cut.row = connectivity_row(model, instance, r, cut.source_side);
      cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

BranchDecision branch(const Model& model, std::span<const double> point, double tolerance) {
  BranchDecision best;
  double best_distance = 1.0;
  for (int c = 0; c < model.num_cols(); ++c) {
    if (!model.columns[static_cast<size_t>(c)].integer) continue;
    const double v = point[static_cast<size_t>(c)];
    const double frac = v - std::floor(v);
    if (frac <= tolerance || frac >= 1.0 - tolerance) continue;
    const double distance = std::abs(frac - 0.5);
    if (best.column < 0 || distance < best_distance - 1e-12) {
      best.column = c;
      best.value = v;
      best_distance = distance;
    }
  }
  if (best.column < 0) throw Error("branch called on an integral point");
  best.down_upper = std::floor(best.value);
  best.up_lower = std::ceil(best.value);
  return best;
}

namespace {

using Clock = std::chrono::steady_clock;

struct BoundChange {
  int column;
  double lower;
  double upper;
};

struct Node {
  std::vector<BoundChange> changes;
  double bound = 0.0;
  int depth = 0;
  long seq = 0;
  std::uint64_t tie = 0;
};

// Tie key among equal nodes: creation order, or a seeded bijective scramble of it.
std::uint64_t tie_key(std::uint64_t seed, long seq) {
  if (seed == 0) return static_cast<std::uint64_t>(seq);
  std::uint64_t z = seed ^ static_cast<std::uint64_t>(seq);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct NodeLess {
  NodeOrder order;
  bool operator()(const Node& a, const Node& b) const {
    if (order == NodeOrder::kDepthFirst) {
      if (a.depth != b.depth) return a.depth > b.depth;
      if (a.bound != b.bound) return a.bound < b.bound;
    } else {
      if (a.bound != b.bound) return a.bound < b.bound;
      if (a.depth != b.depth) return a.depth > b.depth;
    }
    if (a.tie != b.tie) return a.tie < b.tie;
    return a.seq < b.seq;
  }
};

bool is_integral(const Model& model, const std::vector<double>& x) {
  for (int c = 0; c < model.num_cols(); ++c) {
    if (!model.columns[static_cast<size_t>(c)].integer) continue;
    const double v = x[static_cast<size_t>(c)];
    if (std::abs(v - std::round(v)) > 1e-6) return false;
  }
  return true;
}

// Integral relaxation point -> plan. Arc circulations the depot cannot reach
// carry no spray and are dropped.
std::optional<Solution> extract_solution(const Model& model, const Instance& instance,
                                         const std::vector<double>& x) {
  Solution sol;
  sol.formulation = model.formulation;
  const int R = model.num_robots;
  const int m = instance.num_edges();
  sol.routes.assign(static_cast<size_t>(R), {});
  sol.spray.assign(static_cast<size_t>(R), std::vector<double>(static_cast<size_t>(m), 0.0));
  try {
    for (int r = 0; r < R; ++r) {
      std::vector<Arc> used;
      std::vector<int> ids;
      for (int a = 0; a < instance.num_arcs(); ++a) {
        if (x[static_cast<size_t>(*model.index.x(r, a))] > 0.5) {
          used.push_back(instance.arc(a));
          ids.push_back(a);
        }
      }
      const auto reached = reachable_from(instance.num_vertices(), used, instance.depot());
      std::vector<int> kept;
      for (int a : ids)
        if (std::binary_search(reached.begin(), reached.end(), instance.arc(a).tail)) kept.push_back(a);
      if (!kept.empty()) sol.routes[static_cast<size_t>(r)] = euler_circuit(instance, kept, instance.depot());
      for (int e = 0; e < m; ++e) {
        if (auto c = model.index.y(r, e)) {
          const double v = x[static_cast<size_t>(*c)];
          sol.spray[static_cast<size_t>(r)][static_cast<size_t>(e)] = v > 1e-9 ? v : 0.0;
        }
      }
    }
    if (model.formulation == Formulation::kLarge) {
      sol.singletons.assign(static_cast<size_t>(m), 0);
      for (int e = 0; e < m; ++e)
        if (auto c = model.index.z(e))
          sol.singletons[static_cast<size_t>(e)] = static_cast<int>(std::lround(x[static_cast<size_t>(*c)]));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!verify_solution(instance, sol, R).feasible) return std::nullopt;
  return sol;
}

std::string format_log_number(double v) {
  if (!std::isfinite(v)) return "inf";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

class Search {
 public:
  Search(const Model& model, const Instance& instance, const SolveParams& params)
      : model_(model),
        instance_(instance),
        params_(params),
        spt_(dijkstra_all(instance)),
        open_(NodeLess{params.node_order}),
        repair_state_(params.repair ? params.gamma : 0) {
    root_lower_.reserve(model.columns.size());
    for (const Column& c : model.columns) {
      root_lower_.push_back(c.lower);
      root_upper_.push_back(c.upper);
    }
    for (const SprayOverride& o : params.overrides) {
      const auto c = model.index.y(o.robot, o.edge);
      if (!c) throw Error("override references a robot or edge without a spray column");
      root_lower_[static_cast<size_t>(*c)] = o.amount;
      root_upper_[static_cast<size_t>(*c)] = o.amount;
    }
  }

  SolveReport run() {
    start_ = Clock::now();
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(std::max(0.0, params_.time_limit_s)));
    record_trace();
    if (params_.time_limit_s <= 0.0) {
      hit_limit_ = true;
      return finish();
    }
    open_.insert(make_node({}, 0.0, 0));
    const int workers = std::max(1, params_.workers);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back([this] { worker(); });
      for (auto& t : pool) t.join();
    }
    return finish();
  }

 private:
  Node make_node(std::vector<BoundChange> changes, double bound, int depth) {
    const long seq = next_seq_++;
    return Node{std::move(changes), bound, depth, seq, tie_key(params_.seed, seq)};
  }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  // Caller holds mu_ (or runs single-threaded).
  double current_lower_bound() const {
    double lb = ub_;
    if (!open_.empty()) lb = std::min(lb, std::min_element(open_.begin(), open_.end(), [](const Node& a, const Node& b) {
                                             return a.bound < b.bound;
                                           })->bound);
    if (!active_bounds_.empty()) lb = std::min(lb, *active_bounds_.begin());
    return lb;
  }

  void refresh_lb() {
    double lb = current_lower_bound();
    if (std::isfinite(lb)) lb_ = std::max(lb_, std::min(lb, ub_));
  }

  void record_trace() {
    TracePoint p{elapsed(), lb_, ub_, explored_, repair_state_.accepted_count};
    if (!trace_.empty() && trace_.back().lb == p.lb && trace_.back().ub == p.ub &&
        trace_.back().accepted_heuristics == p.accepted_heuristics)
      return;
    trace_.push_back(p);
  }

  double prune_tolerance() const { return std::max(1e-9, params_.gap_tol * std::abs(ub_)); }

  bool gap_closed() const {
    if (!std::isfinite(ub_)) return false;
    return ub_ - lb_ <= prune_tolerance();
  }

  void maybe_log(bool force) {
    if (!params_.log) return;
    const double t = elapsed();
    if (!force && t - last_log_ < params_.log_interval_s) return;
    last_log_ = t;
    const auto gap = gap_percent(ub_, lb_);
    *params_.log << "node=" << explored_ << " lb=" << format_log_number(lb_)
                 << " ub=" << format_log_number(ub_)
                 << " gap=" << (gap ? format_log_number(*gap) : std::string("inf")) << "%\n";
  }

  void offer_incumbent(const Solution& sol, bool from_repair) {
    const double cost = solution_cost(instance_, spt_, sol);
    if (from_repair) {
      const OfferDecision d = offer(repair_state_, cost, ub_);
      if (d != OfferDecision::kAccept) return;
      ++repair_incumbents_;
    } else {
      if (!(cost < ub_ - 1e-9)) return;
      ++lp_incumbents_;
    }
    ub_ = cost;
    incumbent_ = sol;
    // Drop open nodes that can no longer improve.
    for (auto it = open_.begin(); it != open_.end();) {
      if (it->bound >= ub_ - prune_tolerance()) {
        it = open_.erase(it);
      } else {
        ++it;
      }
    }
    refresh_lb();
    record_trace();
    maybe_log(true);
  }

  void worker() {
    DenseSimplex lp;
    lp.set_deadline(deadline_);
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      cv_.wait(lock, [this] { return stop_ || !open_.empty() || active_ == 0; });
      if (stop_) break;
      if (open_.empty()) {
        // Nothing open and nobody working: the tree is exhausted.
        stop_ = true;
        cv_.notify_all();
        break;
      }
      if (Clock::now() > deadline_ || (params_.node_limit >= 0 && explored_ >= params_.node_limit)) {
        hit_limit_ = true;
        stop_ = true;
        cv_.notify_all();
        break;
      }
      if (gap_closed()) {
        open_.clear();
        continue;
      }
      Node node = *open_.begin();
      open_.erase(open_.begin());
      if (node.bound >= ub_ - prune_tolerance()) {
        refresh_lb();
        continue;
      }
      ++active_;
      auto active_it = active_bounds_.insert(node.bound);
      ++explored_;
      process(node, lp, lock);
      active_bounds_.erase(active_it);
      --active_;
      refresh_lb();
      record_trace();
      maybe_log(false);
      cv_.notify_all();
    }
  }

  // Called with the lock held; releases it around LP solves and repair.
  void process(const Node& node, LpOracle& lp, std::unique_lock<std::mutex>& lock) {
    std::vector<double> lower = root_lower_;
    std::vector<double> upper = root_upper_;
    for (const BoundChange& b : node.changes) {
      lower[static_cast<size_t>(b.column)] = b.lower;
      upper[static_cast<size_t>(b.column)] = b.upper;
    }
    int rounds = 0;
    while (true) {
      std::vector<Row> cuts = cut_rows_;
      lock.unlock();
      LpResult res = lp.solve(model_, cuts, lower, upper);
      lock.lock();
      simplex_iterations_ += res.iterations;
      if (res.status == LpStatus::kInfeasible) return;
      if (res.status != LpStatus::kOptimal) {
        if (Clock::now() > deadline_) {
          // Interrupted: keep the node open so the bound stays valid.
          open_.insert(node);
          hit_limit_ = true;
          stop_ = true;
          --explored_;
        } else {
          ++lp_failures_;
        }
        return;
      }
      if (node.depth == 0 && rounds == 0) root_bound_ = res.value;
      if (res.value >= ub_ - prune_tolerance()) return;
      const bool integral = is_integral(model_, res.x);
      bool separate = integral;
      if (!integral && params_.lazy_cuts && node.depth <= params_.cut_depth_max &&
          rounds < params_.max_cut_rounds) {
        const auto gap = gap_percent(ub_, lb_);
        separate = !gap || *gap / 100.0 >= params_.cut_gap_min;
      }
      if (separate) {
        const auto found = separate_connectivity(model_, instance_, res.x, params_.support_threshold);
        int added = 0;
        for (const Cut& cut : found) {
          if (!cut_keys_.emplace(cut.robot, cut.source_side).second) continue;
          cut_rows_.push_back(cut.row);
          if (params_.record_cuts) cut_log_.push_back(cut);
          ++added;
        }
        cuts_added_ += added;
        if (added > 0) {
          ++rounds;
          continue;
        }
        if (integral && !found.empty()) {
          // A violated cut that is already in the pool means the LP point
          // ignores it, which only happens through numerical trouble.
          ++lp_failures_;
          return;
        }
      }
      if (integral) {
        if (auto sol = extract_solution(model_, instance_, res.x)) offer_incumbent(*sol, false);
        return;
      }
      if (params_.repair && repair_state_.enabled) {
        ++repair_attempts_;
        lock.unlock();
        auto candidate = greedy_routing(model_, instance_, spt_, res.x, root_lower_, root_upper_,
                                        params_.anchor);
        lock.lock();
        if (repair_state_.enabled) {
          if (candidate) {
            offer_incumbent(*candidate, true);
          } else {
            offer(repair_state_, std::nullopt, ub_);
          }
        }
        if (res.value >= ub_ - prune_tolerance()) return;
      }
      const BranchDecision d = branch(model_, res.x);
      Node down = make_node(node.changes, res.value, node.depth + 1);
      down.changes.push_back({d.column, lower[static_cast<size_t>(d.column)], d.down_upper});
      Node up = make_node(node.changes, res.value, node.depth + 1);
      up.changes.push_back({d.column, d.up_lower, upper[static_cast<size_t>(d.column)]});
      open_.insert(std::move(down));
      open_.insert(std::move(up));
      return;
    }
  }

  SolveReport finish() {
    SolveReport report;
    const bool exhausted = open_.empty() && !hit_limit_;
    if (exhausted && lp_failures_ == 0) {
      lb_ = std::isfinite(ub_) ? ub_ : lb_;
    } else {
      refresh_lb();
    }
    if (std::isfinite(ub_) && gap_closed() && lp_failures_ == 0) {
      report.status = SolveStatus::kOptimal;
    } else if (exhausted && lp_failures_ == 0 && !std::isfinite(ub_)) {
      report.status = SolveStatus::kInfeasible;
    } else if (std::isfinite(ub_)) {
      report.status = SolveStatus::kFeasible;
    } else {
      report.status = SolveStatus::kLimit;
    }
    record_trace();
    maybe_log(true);
    report.incumbent = incumbent_;
    report.ub = ub_;
    report.lb = lb_;
    report.gap_percent = gap_percent(ub_, lb_);
    report.explored_nodes = explored_;
    report.simplex_iterations = simplex_iterations_;
    report.accepted_heuristics = repair_state_.accepted_count;
    report.repair_attempts = repair_attempts_;
    report.repair_incumbents = repair_incumbents_;
    report.lp_incumbents = lp_incumbents_;
    report.cuts_added = cuts_added_;
    report.lp_failures = lp_failures_;
    report.root_bound = root_bound_;
    report.trace = trace_;
    report.cuts = std::move(cut_log_);
    report.wall_time_s = elapsed();
    return report;
  }

  const Model& model_;
  const Instance& instance_;
  const SolveParams& params_;
  ShortestPathTable spt_;
  std::vector<double> root_lower_;
  std::vector<double> root_upper_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::set<Node, NodeLess> open_;
  std::multiset<double> active_bounds_;
  int active_ = 0;
  bool stop_ = false;
  bool hit_limit_ = false;
  long next_seq_ = 0;

  std::vector<Row> cut_rows_;
  std::set<std::pair<int, std::vector<char>>> cut_keys_;
  std::vector<Cut> cut_log_;

  double ub_ = kInfinity;
  double lb_ = 0.0;
  std::optional<Solution> incumbent_;
  RepairState repair_state_;

  long explored_ = 0;
  long simplex_iterations_ = 0;
  long repair_attempts_ = 0;
  long repair_incumbents_ = 0;
  long lp_incumbents_ = 0;
  long cuts_added_ = 0;
  long lp_failures_ = 0;
  double root_bound_ = 0.0;
  std::vector<TracePoint> trace_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  double last_log_ = 0.0;
};

}  // namespace

SolveReport solve(const Model& base, const Instance& instance, const SolveParams& params) {
  Model model = base;
  if (params.symmetry && model.count_rows(RowTag::kSymmetryOrder) == 0 &&
      model.count_rows(RowTag::kSymmetryOrient) == 0)
    model = add_symmetry(model, instance);
  if (!params.lazy_cuts && model.count_rows(RowTag::kConnectivity) == 0)
    model = add_connectivity_rows(model, instance, params.max_materialized_rows);
  Search search(model, instance, params);
  return search.run();
}

}  // namespace scarp
