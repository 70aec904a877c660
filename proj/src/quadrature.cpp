#include "robin_fsi/quadrature.hpp"

#include "robin_fsi/common.hpp"

#include <cmath>
#include <numbers>

namespace robin_fsi {

std::vector<std::array<double, 2>> gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be >= 1");
  std::vector<std::array<double, 2>> out(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    out[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return out;
}

std::vector<LineQuadPoint> line_rule(int degree) {
  const int n = std::max(1, (degree + 2) / 2);
  std::vector<LineQuadPoint> out;
  for (const auto& [x, w] : gauss_legendre(n)) out.push_back({0.5 * (x + 1.0), 0.5 * w});
  return out;
}

std::vector<TriangleQuadPoint> triangle_rule(int degree) {
  // The Duffy map adds one degree in the collapsed direction.
  const int n = std::max(1, (degree + 3) / 2);
  const auto gl = gauss_legendre(n);
  std::vector<TriangleQuadPoint> out;
  out.reserve(n * n);
  for (const auto& [xu, wu] : gl) {
    const double u = 0.5 * (xu + 1.0);
    for (const auto& [xv, wv] : gl) {
      const double v = 0.5 * (xv + 1.0);
      const double x = u;
      const double y = v * (1.0 - u);
      // 0.25 from the two interval maps, (1 - u) Jacobian, 2 to normalize by the reference area.
      const double w = 0.25 * wu * wv * (1.0 - u) * 2.0;
      out.push_back({{1.0 - x - y, x, y}, w});
    }
  }
  return out;
}

}  // namespace robin_fsi
