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

#include "lp/basis_factor.h"

#include <cmath>
#include <utility>

namespace collcert::lp::internal {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kDropTolerance = 1e-14;

class DenseFactor final : public BasisFactor {
 public:
  void Ftran(std::vector<double>& v) const override {
    std::vector<double> out(num_rows_, 0.0);
    for (int k = 0; k < num_rows_; ++k) {
      const double vk = v[k];
      if (vk == 0.0) continue;
      for (int i = 0; i < num_rows_; ++i) out[i] += inverse_[Index(i, k)] * vk;
    }
    v = std::move(out);
  }

  void Btran(std::vector<double>& v) const override {
    std::vector<double> out(num_rows_, 0.0);
    for (int i = 0; i < num_rows_; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      const double* row = &inverse_[Index(i, 0)];
      for (int j = 0; j < num_rows_; ++j) out[j] += vi * row[j];
    }
    v = std::move(out);
  }

  void Update(int row, const std::vector<double>& alpha) override {
    Append(row, alpha);
    ++num_updates_;
  }

  int RefactorInterval() const override { return 100; }

 protected:
  void Reset(int num_rows) override {
    num_rows_ = num_rows;
    num_updates_ = 0;
    inverse_.assign(static_cast<std::size_t>(num_rows) * num_rows, 0.0);
    for (int i = 0; i < num_rows; ++i) inverse_[Index(i, i)] = 1.0;
  }

  void Append(int row, const std::vector<double>& alpha) override {
    const double pivot = alpha[row];
    double* pivot_row = &inverse_[Index(row, 0)];
    for (int j = 0; j < num_rows_; ++j) pivot_row[j] /= pivot;
    for (int i = 0; i < num_rows_; ++i) {
      if (i == row || alpha[i] == 0.0) continue;
      double* target = &inverse_[Index(i, 0)];
      const double factor = alpha[i];
      for (int j = 0; j < num_rows_; ++j) target[j] -= factor * pivot_row[j];
    }
  }

 private:
  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(i) * num_rows_ + j;
  }

  std::vector<double> inverse_;
};

class EtaFileFactor final : public BasisFactor {
 public:
  void Ftran(std::vector<double>& v) const override {
    for (const Eta& eta : etas_) {
      const double pivot_value = v[eta.row];
      if (pivot_value == 0.0) continue;
      const double scaled = pivot_value / eta.pivot;
      v[eta.row] = scaled;
      for (const auto& [i, a] : eta.entries) v[i] -= a * scaled;
    }
  }

  void Btran(std::vector<double>& v) const override {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double sum = v[it->row];
      for (const auto& [i, a] : it->entries) sum -= v[i] * a;
      v[it->row] = sum / it->pivot;
    }
  }

  void Update(int row, const std::vector<double>& alpha) override {
    Append(row, alpha);
    ++num_updates_;
  }

  int RefactorInterval() const override { return 64; }

 protected:
  void Reset(int num_rows) override {
    num_rows_ = num_rows;
    num_updates_ = 0;
    etas_.clear();
  }

  void Append(int row, const std::vector<double>& alpha) override {
    Eta eta;
    eta.row = row;
    eta.pivot = alpha[row];
    for (int i = 0; i < num_rows_; ++i) {
      if (i != row && std::abs(alpha[i]) > kDropTolerance) {
        eta.entries.emplace_back(i, alpha[i]);
      }
    }
    if (eta.pivot == 1.0 && eta.entries.empty()) return;
    etas_.push_back(std::move(eta));
  }

 private:
  struct Eta {
    int row = 0;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> entries;
  };

  std::vector<Eta> etas_;
};

}  // namespace

void ColumnMatrix::AppendColumn(
    const std::vector<std::pair<int, double>>& entries) {
  for (const auto& [r, v] : entries) {
    row.push_back(r);
    value.push_back(v);
  }
  start.push_back(static_cast<int>(row.size()));
}

std::vector<int> BasisFactor::Factorize(const ColumnMatrix& matrix,
                                        int logical_offset,
                                        std::vector<int>& basis) {
  const int m = matrix.num_rows;
  Reset(m);
  std::vector<int> ordered(m, -1);
  std::vector<int> pending;
  // Unit columns are placed first: with an empty eta file their pivots are
  // trivial.
  for (int col : basis) {
    const int begin = matrix.start[col];
    const int end = matrix.start[col + 1];
    if (end - begin == 1 && ordered[matrix.row[begin]] < 0) {
      const int r = matrix.row[begin];
      ordered[r] = col;
      if (matrix.value[begin] != 1.0) {
        std::vector<double> alpha(m, 0.0);
        alpha[r] = matrix.value[begin];
        Append(r, alpha);
      }
    } else {
      pending.push_back(col);
    }
  }
  std::vector<int> rejected;
  for (int col : pending) {
    std::vector<double> alpha(m, 0.0);
    for (int k = matrix.start[col]; k < matrix.start[col + 1]; ++k) {
      alpha[matrix.row[k]] = matrix.value[k];
    }
    Ftran(alpha);
    int best = -1;
    double best_abs = kPivotTolerance;
    for (int r = 0; r < m; ++r) {
      if (ordered[r] >= 0) continue;
      if (std::abs(alpha[r]) > best_abs) {
        best_abs = std::abs(alpha[r]);
        best = r;
      }
    }
    if (best < 0) {
      rejected.push_back(col);
      continue;
    }
    ordered[best] = col;
    Append(best, alpha);
  }
  for (int r = 0; r < m; ++r) {
    if (ordered[r] < 0) ordered[r] = logical_offset + r;
  }
  basis = std::move(ordered);
  num_updates_ = 0;
  return rejected;
}

std::unique_ptr<BasisFactor> MakeDenseFactor() {
  return std::make_unique<DenseFactor>();
}

std::unique_ptr<BasisFactor> MakeEtaFileFactor() {
  return std::make_unique<EtaFileFactor>();
}

}  // namespace collcert::lp::internal
