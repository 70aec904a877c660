#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace robin_fsi {

/// Dense coefficient vector used throughout the solver.
using Vector = Eigen::VectorXd;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double operator[](int c) const { return c == 0 ? x : y; }
  double& operator[](int c) { return c == 0 ? x : y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

using Point = Vec2;

/// 2x2 tensor stored row-major: m[i][j].
struct Mat2 {
  std::array<std::array<double, 2>, 2> m{};

  Vec2 operator*(Vec2 v) const {
    return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
  }
};

using ScalarFn = std::function<double(Point, double)>;
using VectorFn = std::function<Vec2(Point, double)>;
/// Boundary traction as a function of position, outward unit normal and time.
using TractionFn = std::function<Vec2(Point, Vec2, double)>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MeshMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientHistory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace robin_fsi
