#pragma once
#include <complex>
#include <stdexcept>
#include <vector>

#include "ymh/vec3.hpp"

namespace ymh {

inline constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;

// Flat 2-torus lattice. Sites (ix, iy) with 0 <= ix < nx, 0 <= iy < ny and
// spacing a, so Vol = nx*ny*a^2. A nonzero twist degree inserts the clutching
// data of a degree-d circle bundle at the x-seam: section values crossing the
// seam pick up the transition action exp(2*pi*i*d*iy/ny), and y-links
// crossing it shift additively by the transition's derivative 2*pi*d/(ny*a).
// Scalar (Lie-algebra valued) fields wrap plainly in both directions.
struct Grid {
  int nx = 0, ny = 0;
  double a = 0.0;
  int degree = 0;

  Grid() = default;
  Grid(int nx_, int ny_, double a_, int degree_);

  int sites() const { return nx * ny; }
  int links() const { return 2 * nx * ny; }
  int idx(int ix, int iy) const { return iy * nx + ix; }
  double volume() const { return double(nx) * double(ny) * a * a; }
  double plaq_area() const { return a * a; }

  // group angle applied to a section value per +x wrap (iy already reduced);
  // the corresponding section multiplier for the linear fiber is
  // exp(+2*pi*i*degree*iy/ny).
  double transition_angle(int iy) const { return -2.0 * kPi * degree * iy / ny; }

  // additive shift of a y-link value per +x wrap (independent of iy)
  double seam_link_shift() const { return 2.0 * kPi * degree / (ny * a); }

  bool same_shape(const Grid& o) const {
    return nx == o.nx && ny == o.ny && a == o.a && degree == o.degree;
  }
};

// validated constructor wrapper
Grid build_grid(int nx, int ny, double a, int degree);

struct WrapResult {
  int ix, iy;
  int xwraps;  // signed number of +x seam crossings applied during reduction
};

inline WrapResult wrap(const Grid& g, int ix, int iy) {
  WrapResult w{ix, iy, 0};
  while (w.iy < 0) w.iy += g.ny;
  while (w.iy >= g.ny) w.iy -= g.ny;
  while (w.ix < 0) {
    w.ix += g.nx;
    --w.xwraps;
  }
  while (w.ix >= g.nx) {
    w.ix -= g.nx;
    ++w.xwraps;
  }
  return w;
}

namespace detail {
inline double pointwise_pair(double a, double b) { return a * b; }
inline double pointwise_pair(const Complex& a, const Complex& b) {
  return a.real() * b.real() + a.imag() * b.imag();
}
inline double pointwise_pair(const Vec3& a, const Vec3& b) { return dot(a, b); }
inline Complex pointwise_cpair(const Complex& a, const Complex& b) { return std::conj(a) * b; }
}  // namespace detail

// Dense per-site storage. Access is in-domain; wrapped() gives the plain
// periodic value (correct for gauge-invariant scalars and Lie-algebra fields,
// which carry the trivial twist).
template <class T>
struct SiteField {
  Grid grid;
  std::vector<T> v;

  SiteField() = default;
  explicit SiteField(const Grid& g, T init = T{}) : grid(g), v(size_t(g.sites()), init) {}

  T& operator()(int ix, int iy) { return v[size_t(grid.idx(ix, iy))]; }
  const T& operator()(int ix, int iy) const { return v[size_t(grid.idx(ix, iy))]; }

  T wrapped(int ix, int iy) const {
    WrapResult w = wrap(grid, ix, iy);
    return (*this)(w.ix, w.iy);
  }
};

// Dense per-link storage; k = 0 is the +x link at the site, k = 1 the +y link.
template <class T>
struct LinkField {
  Grid grid;
  std::vector<T> v;

  LinkField() = default;
  explicit LinkField(const Grid& g, T init = T{}) : grid(g), v(size_t(2 * g.sites()), init) {}

  T& operator()(int ix, int iy, int k) { return v[size_t(2 * grid.idx(ix, iy) + k)]; }
  const T& operator()(int ix, int iy, int k) const { return v[size_t(2 * grid.idx(ix, iy) + k)]; }
};

// Dense per-plaquette storage, indexed by the lower-left base site.
template <class T>
struct PlaqField {
  Grid grid;
  std::vector<T> v;

  PlaqField() = default;
  explicit PlaqField(const Grid& g, T init = T{}) : grid(g), v(size_t(g.sites()), init) {}

  T& operator()(int ix, int iy) { return v[size_t(grid.idx(ix, iy))]; }
  const T& operator()(int ix, int iy) const { return v[size_t(grid.idx(ix, iy))]; }

  T wrapped(int ix, int iy) const {
    WrapResult w = wrap(grid, ix, iy);
    return (*this)(w.ix, w.iy);
  }
};

inline void require_same_shape(const Grid& a, const Grid& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("field shape mismatch");
}

// L2 inner products: sum of pointwise pairings times the area element, in a
// fixed row-major order so reductions are deterministic.
template <class T>
double l2_inner_product(const SiteField<T>& f, const SiteField<T>& g) {
  require_same_shape(f.grid, g.grid);
  double s = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) s += detail::pointwise_pair(f.v[i], g.v[i]);
  return s * f.grid.plaq_area();
}

template <class T>
double l2_inner_product(const LinkField<T>& f, const LinkField<T>& g) {
  require_same_shape(f.grid, g.grid);
  double s = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) s += detail::pointwise_pair(f.v[i], g.v[i]);
  return s * f.grid.plaq_area();
}

template <class T>
double l2_inner_product(const PlaqField<T>& f, const PlaqField<T>& g) {
  require_same_shape(f.grid, g.grid);
  double s = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) s += detail::pointwise_pair(f.v[i], g.v[i]);
  return s * f.grid.plaq_area();
}

// complex-valued pairing for complex site fields
inline Complex l2_inner_product_c(const SiteField<Complex>& f, const SiteField<Complex>& g) {
  require_same_shape(f.grid, g.grid);
  Complex s = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) s += detail::pointwise_cpair(f.v[i], g.v[i]);
  return s * f.grid.plaq_area();
}

template <class F>
double l2_norm(const F& f) {
  return std::sqrt(l2_inner_product(f, f));
}

// Wedge with the area form: 0-form -> 2-form stored as per-plaquette
// integrals, (L s)(x) = s(x) * a^2.
inline PlaqField<double> wedge_area(const SiteField<double>& s) {
  PlaqField<double> out(s.grid);
  const int n = s.grid.sites();
  for (int i = 0; i < n; ++i) out.v[size_t(i)] = s.v[size_t(i)] * s.grid.plaq_area();
  return out;
}

// Contraction with the area form on per-plaquette integrals: the adjoint of
// wedge_area, (Lambda F)(x) = F(x) / a^2, assigned to the base site.
inline SiteField<double> lambda_contract(const PlaqField<double>& f) {
  SiteField<double> out(f.grid);
  const int n = f.grid.sites();
  for (int i = 0; i < n; ++i) out.v[size_t(i)] = f.v[size_t(i)] / f.grid.plaq_area();
  return out;
}

inline double sup_norm(const SiteField<double>& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

inline double mean(const SiteField<double>& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s / double(f.v.size());
}

inline double variance(const SiteField<double>& f) {
  double m = mean(f);
  double s = 0.0;
  for (double x : f.v) s += (x - m) * (x - m);
  return s / double(f.v.size());
}

inline double l1_norm(const SiteField<double>& f) {
  double s = 0.0;
  for (double x : f.v) s += std::abs(x);
  return s * f.grid.plaq_area();
}

}  // namespace ymh
