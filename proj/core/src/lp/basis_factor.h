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

#ifndef COLLCERT_LP_BASIS_FACTOR_H_
#define COLLCERT_LP_BASIS_FACTOR_H_

#include <memory>
#include <vector>

namespace collcert::lp::internal {

// Column-compressed storage of the full constraint matrix including logical
// columns.
struct ColumnMatrix {
  int num_rows = 0;
  std::vector<int> start = {0};
  std::vector<int> row;
  std::vector<double> value;

  int num_columns() const { return static_cast<int>(start.size()) - 1; }
  void AppendColumn(const std::vector<std::pair<int, double>>& entries);
};

// Representation of the inverse of a basis matrix B supporting the solves
// and rank-one updates the simplex method needs.
class BasisFactor {
 public:
  virtual ~BasisFactor() = default;

  // Factorizes the columns in `basis` and reorders it so that basis[r] is
  // the column pivoted in row r. Columns that make the basis singular are
  // replaced by the logical column `logical_offset + r` of an uncovered row;
  // the replaced columns are returned.
  std::vector<int> Factorize(const ColumnMatrix& matrix, int logical_offset,
                             std::vector<int>& basis);

  // v <- B^{-1} v.
  virtual void Ftran(std::vector<double>& v) const = 0;
  // v <- B^{-T} v (row vector times B^{-1}).
  virtual void Btran(std::vector<double>& v) const = 0;
  // Replaces the basic column in `row` by a column whose ftran is `alpha`.
  virtual void Update(int row, const std::vector<double>& alpha) = 0;

  int num_updates() const { return num_updates_; }
  virtual int RefactorInterval() const = 0;

 protected:
  virtual void Reset(int num_rows) = 0;
  virtual void Append(int row, const std::vector<double>& alpha) = 0;

  int num_rows_ = 0;
  int num_updates_ = 0;
};

// Explicit dense m x m inverse.
std::unique_ptr<BasisFactor> MakeDenseFactor();
// Product form of the inverse with a sparse eta file.
std::unique_ptr<BasisFactor> MakeEtaFileFactor();

}  // namespace collcert::lp::internal

#endif  // COLLCERT_LP_BASIS_FACTOR_H_
