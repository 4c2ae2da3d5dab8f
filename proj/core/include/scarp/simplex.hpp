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

#ifndef SCARP_SIMPLEX_HPP_
#define SCARP_SIMPLEX_HPP_

#include <chrono>
#include <optional>
#include <span>
#include <vector>

#include "scarp/model.hpp"

namespace scarp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;  // structural columns only
  long iterations = 0;
  double max_violation = 0.0;
};

// Relaxation oracle: integrality is dropped, the given bounds replace the
// model's column bounds, and extra_rows are appended to the model rows.
class LpOracle {
 public:
  virtual ~LpOracle() = default;
  virtual LpResult solve(const Model& model, std::span<const Row> extra_rows,
                         std::span<const double> lower, std::span<const double> upper) = 0;
  // Solves past the deadline stop with kIterationLimit.
  virtual void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    (void)deadline;
  }
};

// Dense-tableau bounded primal simplex. Phase 1 minimizes artificial
// infeasibility, phase 2 the objective. Dantzig pricing with a Harris ratio
// test; switches to Bland's rule after stall_limit degenerate pivots.
class DenseSimplex final : public LpOracle {
 public:
  struct Options {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    int stall_limit = 50;
    int refresh_every = 100;
  };

  DenseSimplex() = default;
  explicit DenseSimplex(Options options) : options_(options) {}

  LpResult solve(const Model& model, std::span<const Row> extra_rows,
                 std::span<const double> lower, std::span<const double> upper) override;
  LpResult solve(const Model& model);
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) override {
    deadline_ = deadline;
  }

 private:
  Options options_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace scarp

#endif  // SCARP_SIMPLEX_HPP_
