#pragma once

#include <array>
#include <stdexcept>

namespace glmcf {

/// Uniform periodic grid over an n-dimensional parameter box. Indexing is
/// row major with axis 0 slowest. Curves use the unit parameter interval
/// (spacing 1/M); graph and mesh domains are [0, 2pi)^n (spacing 2pi/N_k).
struct PeriodicGrid {
  int dim = 1;
  std::array<int, 3> size{1, 1, 1};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};

  int num_nodes() const { return size[0] * size[1] * size[2]; }

  int flatten(const std::array<int, 3>& c) const {
    return (c[0] * size[1] + c[1]) * size[2] + c[2];
  }

  std::array<int, 3> unflatten(int idx) const {
    std::array<int, 3> c;
    c[2] = idx % size[2];
    idx /= size[2];
    c[1] = idx % size[1];
    c[0] = idx / size[1];
    return c;
  }

  /// Index shifted by `by` nodes along `axis`, periodically. `wrap_count`
  /// receives how many times the shift crossed the periodic seam (signed).
  int shifted(int idx, int axis, int by, int& wrap_count) const {
    auto c = unflatten(idx);
    int v = c[axis] + by;
    int n = size[axis];
    wrap_count = 0;
    while (v >= n) {
      v -= n;
      ++wrap_count;
    }
    while (v < 0) {
      v += n;
      --wrap_count;
    }
    c[axis] = v;
    return flatten(c);
  }

  double min_spacing() const {
    double m = spacing[0];
    for (int k = 1; k < dim; ++k) m = std::min(m, spacing[k]);
    return m;
  }

  static PeriodicGrid line(int m, double spacing) {
    if (m < 2) throw std::invalid_argument("PeriodicGrid: need at least 2 nodes");
    PeriodicGrid g;
    g.dim = 1;
    g.size = {m, 1, 1};
    g.spacing = {spacing, 1.0, 1.0};
    return g;
  }

  static PeriodicGrid box(int dim, const std::array<int, 3>& size,
                          const std::array<double, 3>& spacing) {
    PeriodicGrid g;
    g.dim = dim;
    g.size = {1, 1, 1};
    g.spacing = {1.0, 1.0, 1.0};
    for (int k = 0; k < dim; ++k) {
      if (size[k] < 4) throw std::invalid_argument("PeriodicGrid: need at least 4 nodes per axis");
      g.size[k] = size[k];
      g.spacing[k] = spacing[k];
    }
    return g;
  }
};

}  // namespace glmcf
