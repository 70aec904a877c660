#include "robin_fsi/sparse.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <optional>
#include <string>

namespace robin_fsi {

namespace {

using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

EigenSparse to_eigen(const CsrMatrix& A) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(A.nonzeros());
  for (int r = 0; r < A.rows(); ++r)
    for (int k = A.row_ptr()[r]; k < A.row_ptr()[r + 1]; ++k)
      t.emplace_back(r, A.col_idx()[k], A.values()[k]);
  EigenSparse M(A.rows(), A.cols());
  M.setFromTriplets(t.begin(), t.end());
  M.makeCompressed();
  return M;
}

}  // namespace

struct LinearSolver::Impl {
  CsrMatrix A;
  std::optional<Eigen::SparseLU<EigenSparse, Eigen::COLAMDOrdering<int>>> lu;
  // Symmetrically scaled operator D^-1/2 A D^-1/2 for the Krylov fallback.
  EigenSparse scaled;
  Vector inv_sqrt_diag;
  mutable std::mutex mutex;
};

LinearSolver::LinearSolver(const CsrMatrix& A, SolverOptions options)
    : impl_(std::make_unique<Impl>()), options_(options), n_(A.rows()) {
  if (A.rows() != A.cols()) throw InvalidArgument("LinearSolver: matrix must be square");
  impl_->A = A;
  for (int r = 0; r < A.rows(); ++r)
    if (A.row_ptr()[r] == A.row_ptr()[r + 1])
      throw SingularMatrix("LinearSolver: structurally empty row " + std::to_string(r));

  const EigenSparse M = to_eigen(A);
  if (options_.method == SolverMethod::Direct) {
    impl_->lu.emplace();
    impl_->lu->analyzePattern(M);
    impl_->lu->factorize(M);
    if (impl_->lu->info() != Eigen::Success)
      throw SingularMatrix("LinearSolver: factorization failed (" + impl_->lu->lastErrorMessage() + ")");
  } else {
    impl_->inv_sqrt_diag.resize(n_);
    for (int i = 0; i < n_; ++i) {
      const double d = std::abs(A.coeff(i, i));
      impl_->inv_sqrt_diag[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    impl_->scaled = impl_->inv_sqrt_diag.asDiagonal() * M * impl_->inv_sqrt_diag.asDiagonal();
    impl_->scaled.makeCompressed();
  }
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

Vector LinearSolver::solve(const Vector& b) const {
  if (b.size() != n_) throw InvalidArgument("LinearSolver::solve: rhs length mismatch");
  if (!b.allFinite()) throw InvalidArgument("LinearSolver::solve: non-finite rhs");
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vector::Zero(n_);

  std::lock_guard<std::mutex> lock(impl_->mutex);
  Vector x;
  Vector r;
  auto residual = [&] {
    r = b;
    impl_->A.multiply_add(x, -1.0, r);
    return r.norm();
  };

  if (options_.method == SolverMethod::Direct) {
    x = impl_->lu->solve(b);
    double res = residual();
    // A few steps of iterative refinement absorb round-off on poorly scaled systems.
    for (int it = 0; it < 3 && res > options_.rel_tol * bnorm; ++it) {
      x += impl_->lu->solve(r);
      res = residual();
    }
    if (!x.allFinite()) throw SingularMatrix("LinearSolver: non-finite solution");
    if (res > options_.rel_tol * bnorm)
      throw NoConvergence("LinearSolver: direct solve missed residual tolerance (" +
                          std::to_string(res / bnorm) + ")");
    return x;
  }

  Eigen::MINRES<EigenSparse, Eigen::Lower | Eigen::Upper, Eigen::IdentityPreconditioner> minres;
  minres.setMaxIterations(options_.max_iterations);
  // The scaled residual is a proxy; the true residual is checked below.
  minres.setTolerance(options_.rel_tol * 0.1);
  minres.compute(impl_->scaled);
  const Vector scaled_b = impl_->inv_sqrt_diag.cwiseProduct(b);
  Vector y = minres.solve(scaled_b);
  x = impl_->inv_sqrt_diag.cwiseProduct(y);
  const double res = residual();
  if (!x.allFinite() || res > options_.rel_tol * bnorm)
    throw NoConvergence("LinearSolver: iterative solve did not reach tolerance after " +
                        std::to_string(minres.iterations()) + " iterations");
  return x;
}

Vector solve(const CsrMatrix& A, const Vector& b, SolverOptions options) {
  return LinearSolver(A, options).solve(b);
}

}  // namespace robin_fsi
