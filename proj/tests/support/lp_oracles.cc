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

#include "support/lp_oracles.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace collcert::testing {
namespace {

using lp::Comparator;
using lp::LinearProblem;
using lp::VarKind;

constexpr double kTol = 1e-9;

// Solves the square system M z = b in place by Gaussian elimination with
// partial pivoting. Returns false when singular.
bool SolveSquare(std::vector<std::vector<double>> m, std::vector<double> b,
                 std::vector<double>& z) {
  const int k = static_cast<int>(b.size());
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-10) return false;
    std::swap(m[pivot], m[col]);
    std::swap(b[pivot], b[col]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < k; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  z.resize(k);
  for (int i = 0; i < k; ++i) z[i] = b[i] / m[i][i];
  return true;
}

struct Enumerator {
  const LinearProblem& p;
  int n;
  int m;
  std::vector<std::vector<double>> dense;  // m x n
  std::vector<int> state;                  // 0 lower, 1 upper, 2 free
  std::optional<OracleOptimum> best;

  explicit Enumerator(const LinearProblem& problem)
      : p(problem), n(problem.num_variables()), m(problem.num_constraints()) {
    dense.assign(m, std::vector<double>(n, 0.0));
    for (int i = 0; i < m; ++i) {
      for (const lp::Term& t : p.constraint(i).terms) dense[i][t.var] += t.coef;
    }
    state.assign(n, 0);
  }

  void Evaluate(const std::vector<double>& x) {
    if (p.MaxViolation(x) > kTol) return;
    const double obj = p.EvaluateObjective(x);
    if (!best || obj < best->objective) best = OracleOptimum{obj, x};
  }

  void TryRows(const std::vector<int>& free_vars, std::vector<int>& rows,
               int next_row) {
    const int k = static_cast<int>(free_vars.size());
    if (static_cast<int>(rows.size()) == k) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) {
        x[j] = state[j] == 1 ? p.variable(j).upper : p.variable(j).lower;
      }
      if (k == 0) {
        Evaluate(x);
        return;
      }
      std::vector<std::vector<double>> mat(k, std::vector<double>(k));
      std::vector<double> rhs(k);
      for (int a = 0; a < k; ++a) {
        const int row = rows[a];
        rhs[a] = p.constraint(row).rhs;
        for (int j = 0; j < n; ++j) {
          if (state[j] != 2) rhs[a] -= dense[row][j] * x[j];
        }
        for (int b = 0; b < k; ++b) mat[a][b] = dense[row][free_vars[b]];
      }
      std::vector<double> z;
      if (!SolveSquare(std::move(mat), std::move(rhs), z)) return;
      for (int b = 0; b < k; ++b) x[free_vars[b]] = z[b];
      Evaluate(x);
      return;
    }
    const int remaining = k - static_cast<int>(rows.size());
    for (int r = next_row; r <= m - remaining; ++r) {
      rows.push_back(r);
      TryRows(free_vars, rows, r + 1);
      rows.pop_back();
    }
  }

  void Run(int j) {
    if (j == n) {
      std::vector<int> free_vars;
      for (int v = 0; v < n; ++v) {
        if (state[v] == 2) free_vars.push_back(v);
      }
      if (static_cast<int>(free_vars.size()) > m) return;
      std::vector<int> rows;
      TryRows(free_vars, rows, 0);
      return;
    }
    const lp::Variable& v = p.variable(j);
    state[j] = 0;
    Run(j + 1);
    if (v.upper != v.lower) {
      state[j] = 1;
      Run(j + 1);
      state[j] = 2;
      Run(j + 1);
    }
  }
};

}  // namespace

std::optional<OracleOptimum> VertexEnumerationLp(const LinearProblem& p) {
  Enumerator e(p);
  e.Run(0);
  return e.best;
}

std::optional<OracleOptimum> EnumerationMilp(const LinearProblem& p) {
  std::vector<int> integer_vars;
  for (int j = 0; j < p.num_variables(); ++j) {
    if (p.variable(j).kind != VarKind::kContinuous) integer_vars.push_back(j);
  }
  std::optional<OracleOptimum> best;
  LinearProblem fixed = p.Relaxed();
  std::vector<int> value(integer_vars.size());
  for (std::size_t i = 0; i < integer_vars.size(); ++i) {
    value[i] = static_cast<int>(std::ceil(p.variable(integer_vars[i]).lower));
  }
  while (true) {
    for (std::size_t i = 0; i < integer_vars.size(); ++i) {
      fixed.SetVariableBounds(integer_vars[i], value[i], value[i]);
    }
    if (auto r = VertexEnumerationLp(fixed)) {
      if (!best || r->objective < best->objective) best = std::move(r);
    }
    std::size_t i = 0;
    for (; i < integer_vars.size(); ++i) {
      if (value[i] + 1 <= std::floor(p.variable(integer_vars[i]).upper)) {
        ++value[i];
        break;
      }
      value[i] = static_cast<int>(std::ceil(p.variable(integer_vars[i]).lower));
    }
    if (i == integer_vars.size()) break;
  }
  return best;
}

namespace {

void AddRandomRows(std::mt19937_64& rng, LinearProblem& p, int rows) {
  const int n = p.num_variables();
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> kind(0, 5);
  // Anchor point inside the bounds keeps most instances feasible.
  std::vector<double> anchor(n);
  for (int j = 0; j < n; ++j) {
    std::uniform_real_distribution<double> u(p.variable(j).lower,
                                             p.variable(j).upper);
    anchor[j] = p.variable(j).kind == VarKind::kContinuous
                    ? u(rng)
                    : std::round(u(rng));
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<lp::Term> terms;
    double activity = 0.0;
    for (int j = 0; j < n; ++j) {
      const int c = coef(rng);
      if (c == 0) continue;
      terms.push_back({j, static_cast<double>(c)});
      activity += c * anchor[j];
    }
    const int k = kind(rng);
    std::uniform_int_distribution<int> slack(0, 4);
    if (k <= 2) {
      p.AddConstraint(terms, Comparator::kLessEq,
                      std::floor(activity) + slack(rng));
    } else if (k <= 4) {
      p.AddConstraint(terms, Comparator::kGreaterEq,
                      std::ceil(activity) - slack(rng));
    } else {
      p.AddConstraint(terms, Comparator::kEqual, std::round(activity));
    }
  }
}

}  // namespace

LinearProblem RandomLp(std::mt19937_64& rng, int max_vars, int max_rows) {
  std::uniform_int_distribution<int> nv(2, max_vars);
  std::uniform_int_distribution<int> nr(1, max_rows);
  std::uniform_int_distribution<int> lo(-3, 0);
  std::uniform_int_distribution<int> width(1, 5);
  std::uniform_int_distribution<int> cost(-6, 6);
  LinearProblem p;
  const int n = nv(rng);
  for (int j = 0; j < n; ++j) {
    const int l = lo(rng);
    const int id = p.AddVariable("x" + std::to_string(j), VarKind::kContinuous,
                                 l, l + width(rng));
    p.SetObjectiveCoefficient(id, cost(rng));
  }
  AddRandomRows(rng, p, nr(rng));
  return p;
}

LinearProblem RandomMilp(std::mt19937_64& rng, int max_binaries,
                         int max_rows) {
  std::uniform_int_distribution<int> nb(1, max_binaries);
  std::uniform_int_distribution<int> nc(0, 2);
  std::uniform_int_distribution<int> nr(1, max_rows);
  std::uniform_int_distribution<int> cost(-6, 6);
  LinearProblem p;
  const int binaries = nb(rng);
  for (int j = 0; j < binaries; ++j) {
    const int id =
        p.AddVariable("b" + std::to_string(j), VarKind::kBinary, 0, 1);
    p.SetObjectiveCoefficient(id, cost(rng));
  }
  const int continuous = nc(rng);
  for (int j = 0; j < continuous; ++j) {
    const int id =
        p.AddVariable("y" + std::to_string(j), VarKind::kContinuous, 0, 3);
    p.SetObjectiveCoefficient(id, cost(rng));
  }
  AddRandomRows(rng, p, nr(rng));
  return p;
}

}  // namespace collcert::testing
