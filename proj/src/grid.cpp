#include "vklbm/grid.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace vklbm {

Grid Grid::line(int nodes, double dx, double x0) {
  Grid g;
  g.dims = 1;
  g.n = {nodes, 1, 1};
  g.dx = dx;
  g.origin = {x0, 0.0, 0.0};
  return g;
}

Grid Grid::square(int nodes, double dx, double x0) {
  Grid g;
  g.dims = 2;
  g.n = {nodes, nodes, 1};
  g.dx = dx;
  g.origin = {x0, x0, 0.0};
  return g;
}

Grid Grid::cube(int nodes, double dx, double x0) {
  Grid g;
  g.dims = 3;
  g.n = {nodes, nodes, nodes};
  g.dx = dx;
  g.origin = {x0, x0, x0};
  return g;
}

std::array<int, 3> Grid::coords(size_t idx) const {
  int i = static_cast<int>(idx % n[0]);
  size_t r = idx / n[0];
  int j = static_cast<int>(r % n[1]);
  int k = static_cast<int>(r / n[1]);
  return {i, j, k};
}

Point Grid::position(size_t idx) const {
  auto c = coords(idx);
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dims; ++a) p[a] = coordinate(a, c[a]);
  return p;
}

std::vector<double> sample(const Grid& grid, const std::function<double(const Point&)>& fn) {
  std::vector<double> out(grid.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = fn(grid.position(i));
  return out;
}

void parallel_for(size_t n, size_t threads, const std::function<void(size_t, size_t)>& fn) {
  if (threads <= 1 || n < 2 * threads) {
    fn(0, n);
    return;
  }
  size_t chunk = (n + threads - 1) / threads;
  std::vector<std::exception_ptr> errors((n + chunk - 1) / chunk);
  {
    std::vector<std::jthread> pool;
    for (size_t b = chunk, c = 1; b < n; b += chunk, ++c) {
      pool.emplace_back([&, b, c] {
        try {
          fn(b, std::min(n, b + chunk));
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    try {
      fn(0, std::min(n, chunk));
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace vklbm
