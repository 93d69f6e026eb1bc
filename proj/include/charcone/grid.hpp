#ifndef CHARCONE_GRID_HPP
#define CHARCONE_GRID_HPP

#include <vector>

#include "charcone/errors.hpp"

namespace charcone {

using Field = std::vector<double>;

// Structured rectangle in (theta1, theta2) with per-direction periodicity.
// Periodic directions exclude the right endpoint (uniform spacing (b-a)/n),
// non-periodic directions include both endpoints (spacing (b-a)/(n-1)).
struct Grid2 {
  int n1 = 0, n2 = 0;
  double a1 = 0, b1 = 1, a2 = 0, b2 = 1;
  bool periodic1 = false, periodic2 = true;

  int size() const { return n1 * n2; }
  int idx(int i, int j) const { return i * n2 + j; }
  double h1() const { return periodic1 ? (b1 - a1) / n1 : (b1 - a1) / (n1 - 1); }
  double h2() const { return periodic2 ? (b2 - a2) / n2 : (b2 - a2) / (n2 - 1); }
  double theta1(int i) const { return a1 + i * h1(); }
  double theta2(int j) const { return a2 + j * h2(); }

  Field make_field(double v = 0.0) const { return Field(size(), v); }
};

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's recursion).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

// First-derivative operators along each grid direction. Periodic directions
// use wide centered stencils, non-periodic ones shift the same-width stencil
// one-sidedly near the edges. Interior order is 8 when the direction has at
// least 16 points, degrading to the widest stencil the grid supports.
class DiffOps {
 public:
  explicit DiffOps(const Grid2& g);

  // d(field)/d(theta_dir), dir in {1,2}. Throws GridTooCoarse below 8 points.
  Field d(const Field& f, int dir) const;

  // Second derivative d^2/d(theta_dir1) d(theta_dir2) via repeated first
  // derivatives.
  Field dd(const Field& f, int dir1, int dir2) const { return d(d(f, dir1), dir2); }

  const Grid2& grid() const { return g_; }

 private:
  struct DirOps {
    int n = 0;
    bool periodic = false;
    int width = 0;
    // weights[i] holds the stencil for output node i; offsets[i] the node
    // offsets relative to i.
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<int>> offsets;
  };
  DirOps build_dir(int n, double h, bool periodic) const;

  Grid2 g_;
  DirOps d1_, d2_;
};

double max_abs(const Field& f);

}  // namespace charcone

#endif
