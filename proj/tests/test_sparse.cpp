#include "doctest.h"
#include "oracle.hpp"

#include "robin_fsi/sparse.hpp"

#include <random>
#include <sstream>

using namespace robin_fsi;

TEST_CASE("triplet construction") {
  SUBCASE("identity") {
    const CsrMatrix A = csr_from_triplets(2, 2, {{0, 0, 1}, {1, 1, 1}});
    CHECK(A.to_dense() == Eigen::MatrixXd::Identity(2, 2));
  }
  SUBCASE("duplicates are summed") {
    const CsrMatrix A = csr_from_triplets(1, 1, {{0, 0, 1}, {0, 0, 2}});
    CHECK(A.nonzeros() == 1);
    CHECK(A.coeff(0, 0) == 3.0);
  }
  SUBCASE("random triplets match dense accumulation") {
    std::mt19937 rng(7);
    std::vector<Triplet> t;
    Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(3, 3);
    for (int k = 0; k < 20; ++k) {
      const int r = rng() % 3, c = rng() % 3;
      const double v = static_cast<double>(rng() % 100) / 7.0;
      t.push_back({r, c, v});
      ref(r, c) += v;
    }
    const CsrMatrix A = csr_from_triplets(3, 3, t);
    CHECK((A.to_dense() - ref).cwiseAbs().maxCoeff() < 1e-13);
    for (int r = 0; r < 3; ++r)
      for (int k = A.row_ptr()[r] + 1; k < A.row_ptr()[r + 1]; ++k) CHECK(A.col_idx()[k - 1] < A.col_idx()[k]);
  }
  SUBCASE("out of range") { CHECK_THROWS_AS(csr_from_triplets(2, 2, {{2, 0, 1.0}}), InvalidArgument); }
}

TEST_CASE("products, transpose and combinations") {
  const CsrMatrix A = csr_from_triplets(2, 3, {{0, 0, 1}, {0, 2, 2}, {1, 1, 3}});
  Vector x(3);
  x << 1, 2, 3;
  const Vector y = A * x;
  CHECK(y[0] == 7.0);
  CHECK(y[1] == 6.0);
  CHECK(A.transpose().to_dense() == A.to_dense().transpose());
  const CsrMatrix B = linear_combination(2.0, A, -1.0, A);
  CHECK(B.to_dense() == A.to_dense());
  Vector z = Vector::Ones(2);
  A.multiply_add(x, 0.5, z);
  CHECK(z[0] == 4.5);
  std::ostringstream os;
  write_matrix_market(A, os);
  CHECK(os.str().find("%%MatrixMarket matrix coordinate real general") == 0);
}

TEST_CASE("small solves") {
  Vector b(2);
  b << 3, 4;
  CHECK(solve(csr_from_triplets(2, 2, {{0, 0, 1}, {1, 1, 1}}), b) == b);
  b << 2, 8;
  const Vector x = solve(csr_from_triplets(2, 2, {{0, 0, 2}, {1, 1, 4}}), b);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("singular and malformed systems are reported") {
  CHECK_THROWS_AS(LinearSolver(csr_from_triplets(2, 2, {{0, 0, 1}})), SingularMatrix);
  CHECK_THROWS_AS(LinearSolver(csr_from_triplets(2, 3, {{0, 0, 1}})), InvalidArgument);
  CHECK_THROWS_AS(LinearSolver(csr_from_triplets(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}})),
                  SingularMatrix);
}

TEST_CASE("sparse solves agree with dense elimination") {
  for (unsigned seed : {1u, 2u, 3u}) CHECK(oracle::worst_solve_mismatch(seed) < 1e-10);
}
