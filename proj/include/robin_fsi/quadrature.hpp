#pragma once

#include <array>
#include <vector>

namespace robin_fsi {

/// Triangle point in barycentric coordinates; weights sum to one (area-normalized).
struct TriangleQuadPoint {
  std::array<double, 3> bary;
  double weight;
};

/// Point on [0, 1]; weights sum to one (length-normalized).
struct LineQuadPoint {
  double s;
  double weight;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
std::vector<std::array<double, 2>> gauss_legendre(int n);

/// Collapsed (Duffy) Gauss rule exact for polynomials of total degree <= `degree`.
std::vector<TriangleQuadPoint> triangle_rule(int degree);

/// Gauss rule on [0, 1] exact for polynomials of degree <= `degree`.
std::vector<LineQuadPoint> line_rule(int degree);

/// Quadrature orders used by assembly.
inline constexpr int kMatrixOrder = 4;
inline constexpr int kDataOrder = 8;
inline constexpr int kBoundaryOrder = 7;
inline constexpr int kErrorOrder = 10;

}  // namespace robin_fsi
