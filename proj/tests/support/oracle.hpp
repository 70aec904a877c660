#pragma once

// Reference computations shared by unit and acceptance tests. Nothing in here calls
// the library's quadrature, basis or assembly code: element integrals are exact
// barycentric monomial integrals and derivatives are central differences.

#include "robin_fsi/assembly.hpp"
#include "robin_fsi/mms.hpp"
#include "robin_fsi/space.hpp"

#include <Eigen/Dense>

namespace oracle {

/// Dense operator with the library's dof numbering, integrated exactly.
Eigen::MatrixXd dense_operator(const robin_fsi::Space& trial, const robin_fsi::Space& test,
                               const robin_fsi::KernelSpec& kernel);

/// Gaussian elimination with partial pivoting, written out by hand.
Eigen::VectorXd gauss_solve(Eigen::MatrixXd A, Eigen::VectorXd b);

/// Largest |a_ij - b_ij| over max(1, max |b_ij|).
double scaled_max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Compares every kernel the solver uses on one mesh; returns the worst scaled difference.
double worst_operator_mismatch(const std::shared_ptr<const robin_fsi::Mesh>& mesh);

/// Worst relative difference between sparse solves and gauss_solve over a few seeded systems.
double worst_solve_mismatch(unsigned seed);

// Central differences of the closed-form fields only; no derivative formulas from the library.
struct FiniteDifference {
  const robin_fsi::ManufacturedCase& mc;
  double h = 1e-4;

  robin_fsi::Mat2 grad(robin_fsi::Point x, double t) const {
    robin_fsi::Mat2 g;
    for (int j = 0; j < 2; ++j) {
      robin_fsi::Point a = x, b = x;
      a[j] += h;
      b[j] -= h;
      const robin_fsi::Vec2 ua = mc.u(a, t), ub = mc.u(b, t);
      for (int i = 0; i < 2; ++i) g.m[i][j] = (ua[i] - ub[i]) / (2 * h);
    }
    return g;
  }
  double div(robin_fsi::Point x, double t) const {
    const robin_fsi::Mat2 g = grad(x, t);
    return g.m[0][0] + g.m[1][1];
  }
  // 2 mu D(u) + iso I with iso = c_div div u + c_p p.
  robin_fsi::Mat2 stress(robin_fsi::Point x, double t, double mu, double c_div, double c_p) const {
    const robin_fsi::Mat2 g = grad(x, t);
    const double iso = c_div * div(x, t) + c_p * mc.p(x, t);
    robin_fsi::Mat2 s;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s.m[i][j] = mu * (g.m[i][j] + g.m[j][i]) + (i == j ? iso : 0.0);
    return s;
  }
  robin_fsi::Vec2 div_stress(robin_fsi::Point x, double t, double mu, double c_div, double c_p) const {
    robin_fsi::Vec2 out;
    for (int j = 0; j < 2; ++j) {
      robin_fsi::Point a = x, b = x;
      a[j] += h;
      b[j] -= h;
      const robin_fsi::Mat2 sa = stress(a, t, mu, c_div, c_p), sb = stress(b, t, mu, c_div, c_p);
      for (int i = 0; i < 2; ++i) out[i] += (sa.m[i][j] - sb.m[i][j]) / (2 * h);
    }
    return out;
  }
  robin_fsi::Vec2 dt_u(robin_fsi::Point x, double t) const {
    const robin_fsi::Vec2 a = mc.u(x, t + h), b = mc.u(x, t - h);
    return (1.0 / (2 * h)) * (a - b);
  }
  robin_fsi::Vec2 dt_xi(robin_fsi::Point x, double t) const {
    const robin_fsi::Vec2 a = mc.xi(x, t + h), b = mc.xi(x, t - h);
    return (1.0 / (2 * h)) * (a - b);
  }
};

/// Largest strong-form residual of the manufactured forcing over random points in both strips.
double worst_forcing_residual(const robin_fsi::ManufacturedCase& mc, int points, unsigned seed);

}  // namespace oracle
