#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace vklbm {

using Point = std::array<double, 3>;

// Uniform node grid; axes beyond dims have one node.
struct Grid {
  int dims = 1;
  std::array<int, 3> n{1, 1, 1};
  double dx = 1.0;
  Point origin{0.0, 0.0, 0.0};

  static Grid line(int nodes, double dx, double x0 = 0.0);
  static Grid square(int nodes, double dx, double x0 = 0.0);
  static Grid cube(int nodes, double dx, double x0 = 0.0);

  size_t size() const { return static_cast<size_t>(n[0]) * n[1] * n[2]; }
  size_t index(int i, int j = 0, int k = 0) const {
    return (static_cast<size_t>(k) * n[1] + j) * n[0] + i;
  }
  std::array<int, 3> coords(size_t idx) const;
  Point position(size_t idx) const;
  double coordinate(int axis, int i) const { return origin[axis] + i * dx; }
  bool operator==(const Grid& o) const = default;
};

std::vector<double> sample(const Grid& grid, const std::function<double(const Point&)>& fn);

// Runs fn(begin, end) over [0, n) split into at most `threads` contiguous chunks.
void parallel_for(size_t n, size_t threads, const std::function<void(size_t, size_t)>& fn);

}  // namespace vklbm
