#include "ymh/grid.hpp"

namespace ymh {

Grid::Grid(int nx_, int ny_, double a_, int degree_) : nx(nx_), ny(ny_), a(a_), degree(degree_) {
  if (nx < 4 || ny < 4) throw std::invalid_argument("grid dimensions must be at least 4");
  if (!(a > 0.0)) throw std::invalid_argument("grid spacing must be positive");
}

Grid build_grid(int nx, int ny, double a, int degree) { return Grid(nx, ny, a, degree); }

}  // namespace ymh
