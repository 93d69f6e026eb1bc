#include "charcone/grid.hpp"

#include <algorithm>
#include <cmath>

namespace charcone {

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  // B. Fornberg, "Generation of finite difference formulas on arbitrarily
  // spaced grids", Math. Comp. 51 (1988).
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<std::vector<std::vector<double>>> c(
      n + 1, std::vector<std::vector<double>>(n + 1, std::vector<double>(m + 1, 0.0)));
  c[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      for (int k = 0; k <= std::min(i, m); ++k) {
        c[i][j][k] = ((nodes[i] - x0) * c[i - 1][j][k] -
                      (k > 0 ? k * c[i - 1][j][k - 1] : 0.0)) /
                     c3;
      }
    }
    for (int k = 0; k <= std::min(i, m); ++k) {
      c[i][i][k] = (c1 / c2) * ((k > 0 ? k * c[i - 1][i - 1][k - 1] : 0.0) -
                                (nodes[i - 1] - x0) * c[i - 1][i - 1][k]);
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = c[n][j][m];
  return w;
}

DiffOps::DiffOps(const Grid2& g) : g_(g) {
  d1_ = build_dir(g.n1, g.h1(), g.periodic1);
  d2_ = build_dir(g.n2, g.h2(), g.periodic2);
}

DiffOps::DirOps DiffOps::build_dir(int n, double h, bool periodic) const {
  DirOps ops;
  ops.n = n;
  ops.periodic = periodic;
  if (n < 8) return ops;  // flagged lazily in d()

  // widest odd stencil <= 9 that the direction supports
  int width = std::min(9, periodic ? n : n);
  if (width % 2 == 0) width -= 1;
  ops.width = width;
  const int half = width / 2;

  // First-derivative weights sum to zero analytically; pin that down in
  // floating point so constant fields map to exact zero.
  auto fix_zero_sum = [](std::vector<double>& w, const std::vector<int>& off) {
    double sum = 0.0;
    for (double x : w) sum += x;
    for (size_t k = 0; k < off.size(); ++k)
      if (off[k] == 0) w[k] -= sum;
  };

  if (periodic) {
    std::vector<double> nodes(width);
    std::vector<int> off(width);
    for (int k = 0; k < width; ++k) {
      nodes[k] = (k - half) * h;
      off[k] = k - half;
    }
    auto w = fd_weights(0.0, nodes, 1);
    fix_zero_sum(w, off);
    ops.weights.assign(1, w);
    ops.offsets.assign(1, off);
  } else {
    ops.weights.resize(n);
    ops.offsets.resize(n);
    for (int i = 0; i < n; ++i) {
      int lo = std::max(0, std::min(i - half, n - width));
      std::vector<double> nodes(width);
      std::vector<int> off(width);
      for (int k = 0; k < width; ++k) {
        off[k] = lo + k - i;
        nodes[k] = off[k] * h;
      }
      ops.weights[i] = fd_weights(0.0, nodes, 1);
      fix_zero_sum(ops.weights[i], off);
      ops.offsets[i] = off;
    }
  }
  return ops;
}

Field DiffOps::d(const Field& f, int dir) const {
  const DirOps& ops = (dir == 1) ? d1_ : d2_;
  if (ops.n < 8)
    throw GridTooCoarse("tangential derivative needs >= 8 points in direction " +
                        std::to_string(dir));
  Field out(g_.size(), 0.0);
  const int n1 = g_.n1, n2 = g_.n2;
  // Stencils are applied in difference form against the center value: with
  // zero-sum weights this is algebraically identical and makes constants
  // differentiate to exact zero.
  if (dir == 1) {
    for (int i = 0; i < n1; ++i) {
      const auto& w = ops.periodic ? ops.weights[0] : ops.weights[i];
      const auto& off = ops.periodic ? ops.offsets[0] : ops.offsets[i];
      for (int j = 0; j < n2; ++j) {
        const double fc = f[g_.idx(i, j)];
        double acc = 0.0;
        for (size_t k = 0; k < w.size(); ++k) {
          int ii = i + off[k];
          if (ops.periodic) ii = (ii % n1 + n1) % n1;
          acc += w[k] * (f[g_.idx(ii, j)] - fc);
        }
        out[g_.idx(i, j)] = acc;
      }
    }
  } else {
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const auto& w = ops.periodic ? ops.weights[0] : ops.weights[j];
        const auto& off = ops.periodic ? ops.offsets[0] : ops.offsets[j];
        const double fc = f[g_.idx(i, j)];
        double acc = 0.0;
        for (size_t k = 0; k < w.size(); ++k) {
          int jj = j + off[k];
          if (ops.periodic) jj = (jj % n2 + n2) % n2;
          acc += w[k] * (f[g_.idx(i, jj)] - fc);
        }
        out[g_.idx(i, j)] = acc;
      }
    }
  }
  return out;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace charcone
