#include "robin_fsi/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace robin_fsi {

CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0) throw InvalidArgument("csr_from_triplets: negative shape");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw InvalidArgument("csr_from_triplets: index out of range");
    if (!std::isfinite(t.value)) throw InvalidArgument("csr_from_triplets: non-finite value");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix A(rows, cols);
  A.col_idx_.reserve(entries.size());
  A.values_.reserve(entries.size());
  for (size_t k = 0; k < entries.size();) {
    const int r = entries[k].row, c = entries[k].col;
    double sum = 0.0;
    // Sequential summation in sorted order keeps assembly bit-reproducible.
    for (; k < entries.size() && entries[k].row == r && entries[k].col == c; ++k) sum += entries[k].value;
    A.col_idx_.push_back(c);
    A.values_.push_back(sum);
    ++A.row_ptr_[r + 1];
  }
  for (int r = 0; r < rows; ++r) A.row_ptr_[r + 1] += A.row_ptr_[r];
  return A;
}

double CsrMatrix::coeff(int r, int c) const {
  const auto begin = col_idx_.begin() + row_ptr_[r];
  const auto end = col_idx_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return 0.0;
  return values_[it - col_idx_.begin()];
}

Vector CsrMatrix::operator*(const Vector& x) const {
  Vector y = Vector::Zero(rows_);
  multiply_add(x, 1.0, y);
  return y;
}

void CsrMatrix::multiply_add(const Vector& x, double s, Vector& y) const {
  if (x.size() != cols_ || y.size() != rows_) throw InvalidArgument("CsrMatrix: dimension mismatch");
  for (int r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
    y[r] += s * acc;
  }
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({col_idx_[k], r, values_[k]});
  return csr_from_triplets(cols_, rows_, std::move(t));
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) D(r, col_idx_[k]) = values_[k];
  return D;
}

double CsrMatrix::symmetry_defect() const {
  double max_abs = 0.0, defect = 0.0;
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      max_abs = std::max(max_abs, std::abs(values_[k]));
      defect = std::max(defect, std::abs(values_[k] - coeff(col_idx_[k], r)));
    }
  }
  return max_abs > 0.0 ? defect / max_abs : 0.0;
}

void append_triplets(const CsrMatrix& A, double s, int row_offset, int col_offset,
                     std::vector<Triplet>& out) {
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& v = A.values();
  for (int r = 0; r < A.rows(); ++r)
    for (int k = rp[r]; k < rp[r + 1]; ++k) out.push_back({r + row_offset, ci[k] + col_offset, s * v[k]});
}

CsrMatrix linear_combination(double a, const CsrMatrix& A, double b, const CsrMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw InvalidArgument("linear_combination: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(A.nonzeros() + B.nonzeros());
  append_triplets(A, a, 0, 0, t);
  append_triplets(B, b, 0, 0, t);
  return csr_from_triplets(A.rows(), A.cols(), std::move(t));
}

void write_matrix_market(const CsrMatrix& A, std::ostream& os) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << A.rows() << ' ' << A.cols() << ' ' << A.nonzeros() << '\n';
  char buf[64];
  for (int r = 0; r < A.rows(); ++r) {
    for (int k = A.row_ptr()[r]; k < A.row_ptr()[r + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", A.values()[k]);
      os << r + 1 << ' ' << A.col_idx()[k] + 1 << ' ' << buf << '\n';
    }
  }
}

}  // namespace robin_fsi
