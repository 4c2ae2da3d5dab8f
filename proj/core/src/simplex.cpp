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

#include "scarp/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace scarp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

enum class At : char { kLower, kUpper, kZero, kBasic };

// T = B^-1 [A | I] over m rows and n + m columns (structurals then slacks).
// Artificial columns are implicit: basic artificial of row i has head == N + i
// and is dropped for good once it leaves the basis.
class Tableau {
 public:
  Tableau(const Model& model, std::span<const Row> extra, std::span<const double> lower,
          std::span<const double> upper, const DenseSimplex::Options& opt,
          std::optional<std::chrono::steady_clock::time_point> deadline)
      : opt_(opt), deadline_(deadline), n_(model.num_cols()) {
    rows_.reserve(model.rows.size() + extra.size());
    for (const Row& r : model.rows) rows_.push_back(&r);
    for (const Row& r : extra) rows_.push_back(&r);
    m_ = static_cast<int>(rows_.size());
    N_ = n_ + m_;
    t_.assign(static_cast<size_t>(m_) * static_cast<size_t>(N_), 0.0);
    lb_.assign(static_cast<size_t>(N_), 0.0);
    ub_.assign(static_cast<size_t>(N_), 0.0);
    cost_.assign(static_cast<size_t>(N_), 0.0);
    val_.assign(static_cast<size_t>(N_), 0.0);
    at_.assign(static_cast<size_t>(N_), At::kLower);
    head_.assign(static_cast<size_t>(m_), -1);
    beta_.assign(static_cast<size_t>(m_), 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[static_cast<size_t>(j)] = lower[static_cast<size_t>(j)];
      ub_[static_cast<size_t>(j)] = upper[static_cast<size_t>(j)];
      cost_[static_cast<size_t>(j)] = model.columns[static_cast<size_t>(j)].cost;
    }
    for (int i = 0; i < m_; ++i) {
      const Row& r = *rows_[static_cast<size_t>(i)];
      double* row = &t_[idx(i, 0)];
      for (size_t k = 0; k < r.cols.size(); ++k) row[r.cols[k]] += r.coefs[k];
      row[n_ + i] = 1.0;
      const size_t s = static_cast<size_t>(n_ + i);
      switch (r.sense) {
        case Sense::kLessEqual:
          lb_[s] = 0.0;
          ub_[s] = kInfinity;
          break;
        case Sense::kGreaterEqual:
          lb_[s] = -kInfinity;
          ub_[s] = 0.0;
          break;
        case Sense::kEqual:
          lb_[s] = 0.0;
          ub_[s] = 0.0;
          break;
      }
    }
  }

  bool bounds_consistent() const {
    for (int j = 0; j < n_; ++j)
      if (lb_[static_cast<size_t>(j)] > ub_[static_cast<size_t>(j)] + opt_.feasibility_tol)
        return false;
    return true;
  }

  LpResult run(long max_iterations) {
    LpResult result;
    if (!bounds_consistent()) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    crash();
    // Phase 1.
    if (num_artificial_ > 0) {
      set_phase_costs(true);
      LpStatus s = iterate(max_iterations, result.iterations);
      if (s == LpStatus::kIterationLimit) {
        result.status = s;
        return result;
      }
      refresh();
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i)
        if (head_[static_cast<size_t>(i)] >= N_) infeas += beta_[static_cast<size_t>(i)];
      if (infeas > 1e-7) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
      drive_out_artificials();
    }
    set_phase_costs(false);
    LpStatus s = iterate(max_iterations, result.iterations);
    result.status = s;
    if (s != LpStatus::kOptimal) return result;
    refresh();
    result.x.assign(static_cast<size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) result.x[static_cast<size_t>(j)] = val_[static_cast<size_t>(j)];
    for (int i = 0; i < m_; ++i) {
      const int h = head_[static_cast<size_t>(i)];
      if (h >= 0 && h < n_) result.x[static_cast<size_t>(h)] = beta_[static_cast<size_t>(i)];
    }
    for (int j = 0; j < n_; ++j) {
      double& v = result.x[static_cast<size_t>(j)];
      v = std::clamp(v, lb_[static_cast<size_t>(j)], ub_[static_cast<size_t>(j)]);
      if (std::abs(v) < 1e-12) v = 0.0;
    }
    double value = 0.0;
    for (int j = 0; j < n_; ++j) value += cost_[static_cast<size_t>(j)] * result.x[static_cast<size_t>(j)];
    result.value = value;
    double worst = 0.0;
    for (const Row* r : rows_) worst = std::max(worst, r->violation(result.x));
    result.max_violation = worst;
    return result;
  }

 private:
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(N_) + static_cast<size_t>(j);
  }

  void crash() {
    // Nonbasic structurals start at a finite bound.
    for (int j = 0; j < n_; ++j) {
      const size_t s = static_cast<size_t>(j);
      if (std::isfinite(lb_[s])) {
        at_[s] = At::kLower;
        val_[s] = lb_[s];
      } else if (std::isfinite(ub_[s])) {
        at_[s] = At::kUpper;
        val_[s] = ub_[s];
      } else {
        at_[s] = At::kZero;
        val_[s] = 0.0;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const Row& r = *rows_[static_cast<size_t>(i)];
      double resid = r.rhs;
      for (size_t k = 0; k < r.cols.size(); ++k) resid -= r.coefs[k] * val_[static_cast<size_t>(r.cols[k])];
      const size_t s = static_cast<size_t>(n_ + i);
      if (resid >= lb_[s] - opt_.feasibility_tol && resid <= ub_[s] + opt_.feasibility_tol) {
        head_[static_cast<size_t>(i)] = n_ + i;
        at_[s] = At::kBasic;
        beta_[static_cast<size_t>(i)] = std::clamp(resid, lb_[s], ub_[s]);
      } else {
        const double v = std::clamp(resid, lb_[s], ub_[s]);
        at_[s] = v == lb_[s] ? At::kLower : At::kUpper;
        val_[s] = v;
        const double sigma = resid - v > 0.0 ? 1.0 : -1.0;
        if (sigma < 0.0) {
          double* row = &t_[idx(i, 0)];
          for (int j = 0; j < N_; ++j) row[j] = -row[j];
        }
        head_[static_cast<size_t>(i)] = N_ + i;
        beta_[static_cast<size_t>(i)] = std::abs(resid - v);
        ++num_artificial_;
      }
    }
  }

  void set_phase_costs(bool phase_one) {
    phase_one_ = phase_one;
    d_.assign(static_cast<size_t>(N_), 0.0);
    if (!phase_one) {
      for (int j = 0; j < n_; ++j) d_[static_cast<size_t>(j)] = cost_[static_cast<size_t>(j)];
    }
    for (int i = 0; i < m_; ++i) {
      const double cb = basic_cost(i);
      if (cb == 0.0) continue;
      const double* row = &t_[idx(i, 0)];
      for (int j = 0; j < N_; ++j) d_[static_cast<size_t>(j)] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) {
      const int h = head_[static_cast<size_t>(i)];
      if (h < N_) d_[static_cast<size_t>(h)] = 0.0;
    }
  }

  double basic_cost(int i) const {
    const int h = head_[static_cast<size_t>(i)];
    if (h >= N_) return phase_one_ ? 1.0 : 0.0;
    return phase_one_ ? 0.0 : cost_[static_cast<size_t>(h)];
  }

  double basic_lb(int i) const {
    const int h = head_[static_cast<size_t>(i)];
    return h >= N_ ? 0.0 : lb_[static_cast<size_t>(h)];
  }
  double basic_ub(int i) const {
    const int h = head_[static_cast<size_t>(i)];
    if (h >= N_) return phase_one_ ? kInfinity : 0.0;
    return ub_[static_cast<size_t>(h)];
  }

  // Recomputes basic values from B^-1 (the slack block of T) and the
  // original rows, limiting drift from repeated pivots.
  void refresh() {
    std::vector<double> rhs(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      const Row& r = *rows_[static_cast<size_t>(i)];
      double v = r.rhs;
      for (size_t k = 0; k < r.cols.size(); ++k) {
        const int c = r.cols[k];
        if (at_[static_cast<size_t>(c)] != At::kBasic) v -= r.coefs[k] * val_[static_cast<size_t>(c)];
      }
      const size_t s = static_cast<size_t>(n_ + i);
      if (at_[s] != At::kBasic) v -= val_[s];
      rhs[static_cast<size_t>(i)] = v;
    }
    for (int i = 0; i < m_; ++i) {
      const double* row = &t_[idx(i, n_)];
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += row[k] * rhs[static_cast<size_t>(k)];
      beta_[static_cast<size_t>(i)] = v;
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (head_[static_cast<size_t>(i)] < N_) continue;
      beta_[static_cast<size_t>(i)] = 0.0;
      const double* row = &t_[idx(i, 0)];
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < N_; ++j) {
        if (at_[static_cast<size_t>(j)] == At::kBasic) continue;
        if (std::abs(row[j]) > best_abs) {
          best_abs = std::abs(row[j]);
          best = j;
        }
      }
      if (best >= 0) pivot(i, best, val_[static_cast<size_t>(best)]);
    }
  }

  void pivot(int r, int j, double entering_value) {
    const int leaving = head_[static_cast<size_t>(r)];
    if (leaving < N_) {
      const size_t l = static_cast<size_t>(leaving);
      const double v = beta_[static_cast<size_t>(r)];
      if (std::abs(v - lb_[l]) <= std::abs(v - ub_[l])) {
        at_[l] = std::isfinite(lb_[l]) ? At::kLower : At::kUpper;
      } else {
        at_[l] = std::isfinite(ub_[l]) ? At::kUpper : At::kLower;
      }
      val_[l] = at_[l] == At::kLower ? lb_[l] : ub_[l];
    }
    head_[static_cast<size_t>(r)] = j;
    at_[static_cast<size_t>(j)] = At::kBasic;
    beta_[static_cast<size_t>(r)] = entering_value;

    double* prow = &t_[idx(r, 0)];
    const double inv = 1.0 / prow[j];
    for (int k = 0; k < N_; ++k) prow[k] *= inv;
    prow[j] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[idx(i, 0)];
      const double f = row[j];
      if (f == 0.0) continue;
      for (int k = 0; k < N_; ++k) row[k] -= f * prow[k];
      row[j] = 0.0;
    }
    const double f = d_[static_cast<size_t>(j)];
    if (f != 0.0) {
      for (int k = 0; k < N_; ++k) d_[static_cast<size_t>(k)] -= f * prow[k];
    }
    d_[static_cast<size_t>(j)] = 0.0;
  }

  LpStatus iterate(long max_iterations, long& iterations) {
    int degenerate = 0;
    bool bland = false;
    int since_refresh = 0;
    while (true) {
      if (iterations >= max_iterations) return LpStatus::kIterationLimit;
      if (deadline_ && iterations % 32 == 0 && std::chrono::steady_clock::now() > *deadline_)
        return LpStatus::kIterationLimit;
      // Pricing.
      int enter = -1;
      double best = 0.0;
      double dir = 0.0;
      for (int j = 0; j < N_; ++j) {
        const size_t s = static_cast<size_t>(j);
        const At a = at_[s];
        if (a == At::kBasic) continue;
        if (ub_[s] - lb_[s] <= opt_.feasibility_tol && a != At::kZero) continue;
        const double dj = d_[s];
        double score = 0.0;
        double jdir = 0.0;
        if ((a == At::kLower || a == At::kZero) && dj < -opt_.optimality_tol) {
          score = -dj;
          jdir = 1.0;
        } else if ((a == At::kUpper || a == At::kZero) && dj > opt_.optimality_tol) {
          score = dj;
          jdir = -1.0;
        }
        if (jdir == 0.0) continue;
        if (bland) {
          enter = j;
          dir = jdir;
          break;
        }
        if (score > best) {
          best = score;
          enter = j;
          dir = jdir;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      // Ratio test.
      const size_t se = static_cast<size_t>(enter);
      const double flip = ub_[se] - lb_[se];
      double t_max = kInfinity;
      for (int i = 0; i < m_; ++i) {
        const double alpha = t_[idx(i, enter)] * dir;
        if (alpha > opt_.pivot_tol) {
          const double lb = basic_lb(i);
          if (std::isfinite(lb))
            t_max = std::min(t_max, (beta_[static_cast<size_t>(i)] - lb + opt_.feasibility_tol) / alpha);
        } else if (alpha < -opt_.pivot_tol) {
          const double ub = basic_ub(i);
          if (std::isfinite(ub))
            t_max = std::min(t_max, (ub - beta_[static_cast<size_t>(i)] + opt_.feasibility_tol) / -alpha);
        }
      }
      int leave = -1;
      double step = 0.0;
      if (std::isfinite(flip) && flip <= t_max) {
        step = flip;
      } else {
        if (!std::isfinite(t_max)) return LpStatus::kUnbounded;
        double best_alpha = 0.0;
        double best_ratio = kInfinity;
        for (int i = 0; i < m_; ++i) {
          const double alpha = t_[idx(i, enter)] * dir;
          double ratio;
          if (alpha > opt_.pivot_tol) {
            const double lb = basic_lb(i);
            if (!std::isfinite(lb)) continue;
            ratio = (beta_[static_cast<size_t>(i)] - lb) / alpha;
          } else if (alpha < -opt_.pivot_tol) {
            const double ub = basic_ub(i);
            if (!std::isfinite(ub)) continue;
            ratio = (ub - beta_[static_cast<size_t>(i)]) / -alpha;
          } else {
            continue;
          }
          if (ratio > t_max) continue;
          if (bland) {
            // Smallest ratio, then lowest basic column index.
            if (leave < 0 || ratio < best_ratio - 1e-12 ||
                (ratio <= best_ratio + 1e-12 && head_[static_cast<size_t>(i)] < head_[static_cast<size_t>(leave)])) {
              leave = i;
              best_ratio = ratio;
            }
          } else if (std::abs(alpha) > best_alpha) {
            best_alpha = std::abs(alpha);
            leave = i;
            best_ratio = ratio;
          }
        }
        if (leave < 0) return LpStatus::kUnbounded;
        step = std::max(0.0, best_ratio);
      }

      ++iterations;
      if (step <= 1e-12) {
        if (++degenerate > opt_.stall_limit) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      for (int i = 0; i < m_; ++i) {
        const double alpha = t_[idx(i, enter)];
        if (alpha != 0.0) beta_[static_cast<size_t>(i)] -= alpha * dir * step;
      }
      const double entering_value = val_[se] + dir * step;
      if (leave < 0) {
        at_[se] = dir > 0 ? At::kUpper : At::kLower;
        val_[se] = dir > 0 ? ub_[se] : lb_[se];
      } else {
        pivot(leave, enter, entering_value);
        if (++since_refresh >= opt_.refresh_every) {
          since_refresh = 0;
          refresh();
          set_phase_costs(phase_one_);
        }
      }
    }
  }

  const DenseSimplex::Options& opt_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<const Row*> rows_;
  int n_ = 0;
  int m_ = 0;
  int N_ = 0;
  std::vector<double> t_;
  std::vector<double> lb_, ub_, cost_, val_, d_, beta_;
  std::vector<At> at_;
  std::vector<int> head_;
  int num_artificial_ = 0;
  bool phase_one_ = true;
};

}  // namespace

LpResult DenseSimplex::solve(const Model& model, std::span<const Row> extra_rows,
                             std::span<const double> lower, std::span<const double> upper) {
  Tableau tableau(model, extra_rows, lower, upper, options_, deadline_);
  const long m = static_cast<long>(model.rows.size() + extra_rows.size());
  const long max_iterations = 50 * (m + model.num_cols()) + 1000;
  return tableau.run(max_iterations);
}

LpResult DenseSimplex::solve(const Model& model) {
  std::vector<double> lo, up;
  for (const Column& c : model.columns) {
    lo.push_back(c.lower);
    up.push_back(c.upper);
  }
  return solve(model, {}, lo, up);
}

}  // namespace scarp
