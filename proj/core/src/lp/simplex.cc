// Copyright 2026 The collcert Authors
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

#include "collcert/lp/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "lp/simplex_engine.h"

namespace collcert::lp {

std::string_view ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      break;
  }
  return "iteration-limit";
}

namespace internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-9;
constexpr double kDualTolerance = 1e-9;
constexpr double kStepTolerance = 1e-12;

}  // namespace

SimplexEngine::SimplexEngine(const LinearProblem& problem,
                             FactorBackend backend)
    : problem_(problem),
      num_structural_(problem.num_variables()),
      num_rows_(problem.num_constraints()),
      slack_offset_(problem.num_variables()),
      artificial_offset_(problem.num_variables() + problem.num_constraints()) {
  std::vector<std::vector<std::pair<int, double>>> columns(num_structural_);
  rhs_.resize(num_rows_);
  for (int i = 0; i < num_rows_; ++i) {
    const Constraint& c = problem.constraint(i);
    rhs_[i] = c.rhs;
    for (const Term& t : c.terms) columns[t.var].emplace_back(i, t.coef);
  }
  matrix_.num_rows = num_rows_;
  for (const auto& col : columns) matrix_.AppendColumn(col);
  for (int i = 0; i < num_rows_; ++i) matrix_.AppendColumn({{i, 1.0}});
  for (int i = 0; i < num_rows_; ++i) matrix_.AppendColumn({{i, 1.0}});

  const int total = num_structural_ + 2 * num_rows_;
  cost_.assign(problem.objective().begin(), problem.objective().end());
  lower_.assign(total, 0.0);
  upper_.assign(total, 0.0);
  for (int i = 0; i < num_rows_; ++i) {
    switch (problem.constraint(i).cmp) {
      case Comparator::kLessEq:
        upper_[slack_offset_ + i] = kInf;
        break;
      case Comparator::kGreaterEq:
        lower_[slack_offset_ + i] = -kInf;
        break;
      case Comparator::kEqual:
        break;
    }
  }
  x_.assign(total, 0.0);
  status_.assign(total, Status::kLower);

  if (backend == FactorBackend::kAuto) {
    backend = num_structural_ + num_rows_ <= kDenseColumnLimit
                  ? FactorBackend::kDense
                  : FactorBackend::kSparse;
  }
  factor_ = backend == FactorBackend::kDense ? MakeDenseFactor()
                                             : MakeEtaFileFactor();
}

void SimplexEngine::Column(int col, std::vector<double>& dense) const {
  dense.assign(num_rows_, 0.0);
  for (int k = matrix_.start[col]; k < matrix_.start[col + 1]; ++k) {
    dense[matrix_.row[k]] = matrix_.value[k];
  }
}

void SimplexEngine::Refactorize() {
  std::vector<int> basis = head_;
  const std::vector<int> rejected =
      factor_->Factorize(matrix_, slack_offset_, basis);
  for (int col : rejected) {
    if (std::isfinite(lower_[col])) {
      status_[col] = Status::kLower;
      x_[col] = lower_[col];
    } else {
      status_[col] = Status::kUpper;
      x_[col] = upper_[col];
    }
  }
  head_ = std::move(basis);
  for (int col : head_) status_[col] = Status::kBasic;
}

void SimplexEngine::ComputeBasicValues() {
  std::vector<double> v = rhs_;
  const int total = static_cast<int>(x_.size());
  for (int j = 0; j < total; ++j) {
    if (status_[j] == Status::kBasic || x_[j] == 0.0) continue;
    for (int k = matrix_.start[j]; k < matrix_.start[j + 1]; ++k) {
      v[matrix_.row[k]] -= matrix_.value[k] * x_[j];
    }
  }
  factor_->Ftran(v);
  for (int r = 0; r < num_rows_; ++r) x_[head_[r]] = v[r];
}

double SimplexEngine::BasicInfeasibility() const {
  double worst = 0.0;
  for (int col : head_) {
    worst = std::max(worst, lower_[col] - x_[col]);
    worst = std::max(worst, x_[col] - upper_[col]);
  }
  return worst;
}

void SimplexEngine::ColdStart() {
  for (int j = 0; j < num_structural_; ++j) {
    status_[j] = Status::kLower;
    x_[j] = lower_[j];
  }
  std::vector<double> residual = rhs_;
  for (int j = 0; j < num_structural_; ++j) {
    if (x_[j] == 0.0) continue;
    for (int k = matrix_.start[j]; k < matrix_.start[j + 1]; ++k) {
      residual[matrix_.row[k]] -= matrix_.value[k] * x_[j];
    }
  }
  head_.assign(num_rows_, -1);
  for (int i = 0; i < num_rows_; ++i) {
    const int slack = slack_offset_ + i;
    const int artificial = artificial_offset_ + i;
    const double r = residual[i];
    if (r >= lower_[slack] - kFeasibilityTolerance &&
        r <= upper_[slack] + kFeasibilityTolerance) {
      head_[i] = slack;
      status_[slack] = Status::kBasic;
      x_[slack] = r;
      status_[artificial] = Status::kLower;
      x_[artificial] = 0.0;
      continue;
    }
    const double nearest = std::clamp(r, lower_[slack], upper_[slack]);
    x_[slack] = nearest;
    status_[slack] = nearest == lower_[slack] ? Status::kLower : Status::kUpper;
    const double gap = r - nearest;
    matrix_.value[matrix_.start[artificial]] = gap > 0 ? 1.0 : -1.0;
    upper_[artificial] = kInf;
    head_[i] = artificial;
    status_[artificial] = Status::kBasic;
    x_[artificial] = std::abs(gap);
  }
  Refactorize();
}

void SimplexEngine::WarmStart(const BasisState& warm) {
  const int logical_end = artificial_offset_;
  for (int j = 0; j < logical_end; ++j) {
    const bool at_upper = warm.at_upper[j] != 0 && std::isfinite(upper_[j]);
    status_[j] = at_upper ? Status::kUpper : Status::kLower;
    x_[j] = at_upper ? upper_[j] : lower_[j];
    if (!std::isfinite(x_[j])) {
      status_[j] = Status::kUpper;
      x_[j] = upper_[j];
    }
  }
  for (int j = artificial_offset_; j < static_cast<int>(x_.size()); ++j) {
    status_[j] = Status::kLower;
    x_[j] = 0.0;
  }
  head_ = warm.basic;
  Refactorize();
  ComputeBasicValues();
}

double SimplexEngine::PhaseCost(Phase phase, int col) const {
  switch (phase) {
    case Phase::kArtificial:
      return col >= artificial_offset_ ? 1.0 : 0.0;
    case Phase::kComposite:
      if (status_[col] != Status::kBasic) return 0.0;
      if (x_[col] < lower_[col] - kFeasibilityTolerance) return -1.0;
      if (x_[col] > upper_[col] + kFeasibilityTolerance) return 1.0;
      return 0.0;
    case Phase::kOptimize:
      break;
  }
  return col < num_structural_ ? cost_[col] : 0.0;
}

SimplexEngine::Outcome SimplexEngine::Run(Phase phase) {
  const int total = static_cast<int>(x_.size());
  const std::int64_t bland_threshold = 2LL * (num_rows_ + total);
  std::int64_t degenerate_streak = 0;
  bool bland = false;
  std::vector<double> y(num_rows_);
  std::vector<double> alpha;

  while (true) {
    if (iterations_ >= max_iterations_) return Outcome::kIterationLimit;
    if (factor_->num_updates() >= factor_->RefactorInterval()) {
      Refactorize();
      ComputeBasicValues();
    }

    bool any_cost = false;
    for (int r = 0; r < num_rows_; ++r) {
      y[r] = PhaseCost(phase, head_[r]);
      any_cost = any_cost || y[r] != 0.0;
    }
    if (phase == Phase::kComposite && !any_cost) return Outcome::kDone;
    factor_->Btran(y);

    // Pricing.
    int entering = -1;
    double best_score = 0.0;
    for (int j = 0; j < total; ++j) {
      if (status_[j] == Status::kBasic || lower_[j] == upper_[j]) continue;
      double d = PhaseCost(phase, j);
      for (int k = matrix_.start[j]; k < matrix_.start[j + 1]; ++k) {
        d -= y[matrix_.row[k]] * matrix_.value[k];
      }
      const bool improving =
          (status_[j] == Status::kLower && d < -kDualTolerance) ||
          (status_[j] == Status::kUpper && d > kDualTolerance);
      if (!improving) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        entering = j;
      }
    }
    if (entering < 0) {
      return phase == Phase::kComposite ? Outcome::kInfeasible
                                        : Outcome::kDone;
    }

    Column(entering, alpha);
    factor_->Ftran(alpha);
    const double dir = status_[entering] == Status::kLower ? 1.0 : -1.0;

    // Bounded ratio test; leave_row < 0 denotes a bound flip.
    double theta = upper_[entering] - lower_[entering];
    int leave_row = -1;
    Status leave_to = Status::kLower;
    for (int r = 0; r < num_rows_; ++r) {
      const double a = alpha[r];
      if (std::abs(a) < kPivotTolerance) continue;
      const int j = head_[r];
      const double delta = -dir * a;
      const double xj = x_[j];
      double t = kInf;
      Status target = Status::kLower;
      if (phase == Phase::kComposite &&
          xj < lower_[j] - kFeasibilityTolerance) {
        if (delta <= 0) continue;
        t = (lower_[j] - xj) / delta;
      } else if (phase == Phase::kComposite &&
                 xj > upper_[j] + kFeasibilityTolerance) {
        if (delta >= 0) continue;
        t = (xj - upper_[j]) / -delta;
        target = Status::kUpper;
      } else if (delta < 0) {
        if (!std::isfinite(lower_[j])) continue;
        t = (xj - lower_[j]) / -delta;
      } else {
        if (!std::isfinite(upper_[j])) continue;
        t = (upper_[j] - xj) / delta;
        target = Status::kUpper;
      }
      t = std::max(t, 0.0);
      bool take = t < theta - kStepTolerance;
      if (!take && leave_row >= 0 && t <= theta + kStepTolerance) {
        take = bland ? j < head_[leave_row]
                     : std::abs(a) > std::abs(alpha[leave_row]);
      }
      if (take) {
        theta = std::min(t, theta);
        leave_row = r;
        leave_to = target;
      }
    }
    if (!std::isfinite(theta)) return Outcome::kUnbounded;

    if (theta != 0.0) {
      x_[entering] += dir * theta;
      for (int r = 0; r < num_rows_; ++r) {
        if (alpha[r] != 0.0) x_[head_[r]] -= dir * alpha[r] * theta;
      }
    }
    if (leave_row < 0) {
      const bool to_upper = status_[entering] == Status::kLower;
      status_[entering] = to_upper ? Status::kUpper : Status::kLower;
      x_[entering] = to_upper ? upper_[entering] : lower_[entering];
    } else {
      const int leaving = head_[leave_row];
      status_[leaving] = leave_to;
      x_[leaving] =
          leave_to == Status::kLower ? lower_[leaving] : upper_[leaving];
      head_[leave_row] = entering;
      status_[entering] = Status::kBasic;
      factor_->Update(leave_row, alpha);
    }
    ++iterations_;

    if (theta <= kStepTolerance) {
      if (++degenerate_streak > bland_threshold) bland = true;
    } else {
      degenerate_streak = 0;
      bland = false;
    }
  }
}

SimplexEngine::Result SimplexEngine::Solve(std::span<const double> lower,
                                           std::span<const double> upper,
                                           const BasisState* warm,
                                           std::int64_t max_iterations) {
  for (int j = 0; j < num_structural_; ++j) {
    lower_[j] = lower[j];
    upper_[j] = upper[j];
  }
  for (int i = 0; i < num_rows_; ++i) {
    const int artificial = artificial_offset_ + i;
    lower_[artificial] = 0.0;
    upper_[artificial] = 0.0;
    matrix_.value[matrix_.start[artificial]] = 1.0;
  }
  iterations_ = 0;
  max_iterations_ = max_iterations;

  Result result;
  auto finish = [&](SolveStatus status) {
    result.status = status;
    result.iterations = iterations_;
    if (status == SolveStatus::kOptimal ||
        status == SolveStatus::kIterationLimit) {
      result.values.assign(x_.begin(), x_.begin() + num_structural_);
      for (int j = 0; j < num_structural_; ++j) {
        result.values[j] = std::clamp(result.values[j], lower_[j], upper_[j]);
      }
      result.objective = problem_.EvaluateObjective(result.values);
    }
    return result;
  };

  for (int j = 0; j < num_structural_; ++j) {
    if (lower_[j] > upper_[j]) return finish(SolveStatus::kInfeasible);
  }

  if (warm == nullptr) {
    ColdStart();
    bool needs_phase1 = false;
    for (int col : head_) needs_phase1 |= col >= artificial_offset_;
    if (needs_phase1) {
      const Outcome outcome = Run(Phase::kArtificial);
      if (outcome == Outcome::kIterationLimit) {
        result.status = SolveStatus::kIterationLimit;
        result.iterations = iterations_;
        return result;
      }
      Refactorize();
      ComputeBasicValues();
      double artificial_mass = 0.0;
      for (int i = 0; i < num_rows_; ++i) {
        const int artificial = artificial_offset_ + i;
        artificial_mass += std::abs(x_[artificial]);
        upper_[artificial] = 0.0;
        if (status_[artificial] != Status::kBasic) {
          status_[artificial] = Status::kLower;
          x_[artificial] = 0.0;
        }
      }
      if (artificial_mass > kFeasibilityTolerance) {
        return finish(SolveStatus::kInfeasible);
      }
    }
  } else {
    WarmStart(*warm);
  }

  for (int attempt = 0; attempt < 4; ++attempt) {
    if (BasicInfeasibility() > kFeasibilityTolerance) {
      const Outcome outcome = Run(Phase::kComposite);
      if (outcome == Outcome::kInfeasible) {
        return finish(SolveStatus::kInfeasible);
      }
      if (outcome == Outcome::kIterationLimit) {
        result.status = SolveStatus::kIterationLimit;
        result.iterations = iterations_;
        return result;
      }
    }
    const Outcome outcome = Run(Phase::kOptimize);
    if (outcome == Outcome::kUnbounded) return finish(SolveStatus::kUnbounded);
    if (outcome == Outcome::kIterationLimit) {
      return finish(SolveStatus::kIterationLimit);
    }
    Refactorize();
    ComputeBasicValues();
    if (BasicInfeasibility() <= kFeasibilityTolerance) {
      return finish(SolveStatus::kOptimal);
    }
  }
  return finish(SolveStatus::kIterationLimit);
}

BasisState SimplexEngine::CurrentBasis() const {
  BasisState state;
  state.basic = head_;
  for (int& col : state.basic) {
    if (col >= artificial_offset_) col -= num_rows_;
  }
  state.at_upper.resize(artificial_offset_);
  for (int j = 0; j < artificial_offset_; ++j) {
    state.at_upper[j] = status_[j] == Status::kUpper ? 1 : 0;
  }
  return state;
}

}  // namespace internal

Solution SolveLp(const LinearProblem& problem, const SolverOptions& options) {
  std::vector<double> lower(problem.num_variables());
  std::vector<double> upper(problem.num_variables());
  for (int j = 0; j < problem.num_variables(); ++j) {
    lower[j] = problem.variable(j).lower;
    upper[j] = problem.variable(j).upper;
  }
  internal::SimplexEngine engine(problem, options.backend);
  internal::SimplexEngine::Result r =
      engine.Solve(lower, upper, nullptr, options.max_iterations);
  Solution solution;
  solution.status = r.status;
  solution.objective = r.objective;
  solution.values = std::move(r.values);
  solution.iterations = r.iterations;
  if (r.status == SolveStatus::kOptimal) solution.dual_bound = r.objective;
  return solution;
}

}  // namespace collcert::lp
