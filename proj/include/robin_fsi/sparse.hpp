#pragma once

#include "robin_fsi/common.hpp"

#include <iosfwd>
#include <memory>
#include <mutex>
#include <vector>

namespace robin_fsi {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix. Columns are sorted and unique within each row.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  /// Entry (r, c), zero if not stored.
  double coeff(int r, int c) const;

  Vector operator*(const Vector& x) const;
  /// y += s * A x
  void multiply_add(const Vector& x, double s, Vector& y) const;

  CsrMatrix transpose() const;
  Eigen::MatrixXd to_dense() const;

  /// Symmetry defect max |A - A^T| scaled by max |A|.
  double symmetry_defect() const;

  friend CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> entries);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Builds a CSR matrix, summing duplicate entries.
CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> entries);

/// Returns a*A + b*B (same shape).
CsrMatrix linear_combination(double a, const CsrMatrix& A, double b, const CsrMatrix& B);

/// Appends the entries of `A` to `out`, scaled by `s` and shifted by (row_offset, col_offset).
void append_triplets(const CsrMatrix& A, double s, int row_offset, int col_offset,
                     std::vector<Triplet>& out);

/// Matrix Market coordinate export.
void write_matrix_market(const CsrMatrix& A, std::ostream& os);

enum class SolverMethod { Direct, Iterative };

struct SolverOptions {
  SolverMethod method = SolverMethod::Direct;
  double rel_tol = 1e-10;
  int max_iterations = 20000;
};

/// Factorization (or iteration setup) of a square matrix, reusable across right-hand sides.
///
/// A handle is immutable after construction. Concurrent `solve` calls on the same
/// handle are serialized internally, so a handle may be shared between threads.
class LinearSolver {
 public:
  LinearSolver(const CsrMatrix& A, SolverOptions options = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  /// Solves A x = b with ||A x - b|| <= rel_tol * ||b||; throws NoConvergence otherwise.
  Vector solve(const Vector& b) const;

  const SolverOptions& options() const { return options_; }
  int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SolverOptions options_;
  int n_ = 0;
};

Vector solve(const CsrMatrix& A, const Vector& b, SolverOptions options = {});

}  // namespace robin_fsi
