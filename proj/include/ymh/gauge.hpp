#pragma once
#include <cmath>
#include <stdexcept>
#include <string>

#include "ymh/fiber.hpp"
#include "ymh/grid.hpp"
#include "ymh/rng.hpp"

namespace ymh {

// Connection on the twisted circle bundle: real link field alpha, storing the
// pointwise 1-form component along each link. The transport phase of the link
// (x, k) is theta = a * alpha_k(x). Crossing the x-seam, y-link values shift
// by the transition's derivative; this keeps the total flux (and hence the
// degree) exact.
struct Connection {
  Grid grid;
  LinkField<double> alpha;

  Connection() = default;
  explicit Connection(const Grid& g) : grid(g), alpha(g, 0.0) {}

  // twisted periodic access of the pointwise link component
  double at(int ix, int iy, int k) const {
    WrapResult w = wrap(grid, ix, iy);
    double v = alpha(w.ix, w.iy, k);
    if (k == 1 && w.xwraps != 0) v += w.xwraps * grid.seam_link_shift();
    return v;
  }

  // integrated transport angle of the link at (ix, iy) in direction k
  double theta(int ix, int iy, int k) const { return grid.a * at(ix, iy, k); }
};

// Section of the associated fiber bundle: per-site fiber points with
// equivariant twisted access across the x-seam.
template <class F>
struct Section {
  using Point = typename F::Point;
  using Tangent = typename F::Tangent;

  Grid grid;
  SiteField<Point> sites;

  Section() = default;
  explicit Section(const Grid& g, Point init = Point{}) : grid(g), sites(g, init) {}

  Point& operator()(int ix, int iy) { return sites(ix, iy); }
  const Point& operator()(int ix, int iy) const { return sites(ix, iy); }

  Point at(int ix, int iy) const {
    WrapResult w = wrap(grid, ix, iy);
    Point p = sites(w.ix, w.iy);
    if (w.xwraps != 0) p = F::rotate(p, w.xwraps * grid.transition_angle(w.iy));
    return p;
  }

  // chain rule counterpart of at(): scatter-add a cotangent contribution,
  // undoing the transition applied on access
  void add_cotangent(SiteField<Tangent>& acc, int ix, int iy, const Tangent& g) const {
    WrapResult w = wrap(grid, ix, iy);
    Tangent gg = g;
    if (w.xwraps != 0)
      gg = F::rotate_tangent(sites(w.ix, w.iy), gg, -w.xwraps * grid.transition_angle(w.iy));
    acc(w.ix, w.iy) += gg;
  }

  void retract_all() {
    for (auto& p : sites.v) p = F::retract(p);
  }
};

// tangent fields along a section, with the same twisted access rule
template <class F>
typename F::Tangent tangent_at(const Section<F>& u, const SiteField<typename F::Tangent>& t,
                               int ix, int iy) {
  WrapResult w = wrap(u.grid, ix, iy);
  typename F::Tangent v = t(w.ix, w.iy);
  if (w.xwraps != 0)
    v = F::rotate_tangent(u.sites(w.ix, w.iy), v, w.xwraps * u.grid.transition_angle(w.iy));
  return v;
}

// ---------------------------------------------------------------------------
// curvature, degree

// Curvature coefficient per plaquette (base site = lower-left corner): the
// oriented plaquette sum of integrated link values divided by the plaquette
// area. For the constant-curvature degree-d connection this is 2*pi*d/Vol.
inline PlaqField<double> curvature(const Connection& A) {
  const Grid& g = A.grid;
  PlaqField<double> B(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double s = A.at(ix, iy, 0) + A.at(ix + 1, iy, 1) - A.at(ix, iy + 1, 0) - A.at(ix, iy, 1);
      B(ix, iy) = s / g.a;
    }
  return B;
}

struct NotIntegerError : std::runtime_error {
  double raw_value;
  explicit NotIntegerError(double v)
      : std::runtime_error("degree is not an integer: " + std::to_string(v)), raw_value(v) {}
};

// Chern degree: total flux over 2*pi. The pre-rounding value must sit within
// 1e-9 of an integer; anything else signals broken twist bookkeeping.
inline int degree(const Connection& A) {
  PlaqField<double> B = curvature(A);
  double s = 0.0;
  for (double b : B.v) s += b;
  double d = s * A.grid.plaq_area() / (2.0 * kPi);
  double r = std::round(d);
  if (std::abs(d - r) > 1e-9) throw NotIntegerError(d);
  return int(r);
}

// Connection with uniform curvature 2*pi*d/Vol on the degree-d grid:
// alpha_y(ix, iy) = 2*pi*d*ix/(nx*ny*a), alpha_x = 0.
inline Connection constant_curvature_connection(const Grid& g) {
  Connection A(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      A.alpha(ix, iy, 1) = 2.0 * kPi * g.degree * ix / (double(g.nx) * double(g.ny) * g.a);
  return A;
}

// ---------------------------------------------------------------------------
// covariant derivative and Dolbeault splitting

enum class Stencil { Forward, Centered };

// d_A u along the link (x, k): transported forward difference
// (Phi_{exp(i a alpha)}(u(x + e_k)) - u(x)) / a. Reduces to the plain
// difference when A = 0. The centered variant averages the forward and
// backward transported differences.
template <class F>
typename F::Tangent cov_deriv_link(const Connection& A, const Section<F>& u, int ix, int iy,
                                   int k) {
  const double a = A.grid.a;
  int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
  typename F::Point head = F::rotate(u.at(hx, hy), A.theta(ix, iy, k));
  return (1.0 / a) * (head - u.at(ix, iy));
}

template <class F>
typename F::Tangent cov_deriv_link_backward(const Connection& A, const Section<F>& u, int ix,
                                            int iy, int k) {
  const double a = A.grid.a;
  int tx = ix - (k == 0 ? 1 : 0), ty = iy - (k == 1 ? 1 : 0);
  typename F::Point tail = F::rotate(u.at(tx, ty), -A.theta(tx, ty, k));
  return (1.0 / a) * (u.at(ix, iy) - tail);
}

template <class F>
LinkField<typename F::Tangent> covariant_derivative(const Connection& A, const Section<F>& u,
                                                    Stencil st = Stencil::Forward) {
  require_same_shape(A.grid, u.grid);
  const Grid& g = A.grid;
  LinkField<typename F::Tangent> d(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int k = 0; k < 2; ++k) {
        auto f = cov_deriv_link(A, u, ix, iy, k);
        if (st == Stencil::Forward) {
          d(ix, iy, k) = f;
        } else {
          auto b = cov_deriv_link_backward(A, u, ix, iy, k);
          d(ix, iy, k) = 0.5 * (f + b);
        }
      }
  return d;
}

// Dolbeault parts of d_A u: dbar = (d_A u + J d_A u j)/2 with j the base
// rotation e1 -> e2. Componentwise: dbar_1 = (D1 + J D2)/2, dbar_2 = (D2 - J D1)/2,
// and del + dbar = d_A u exactly.
template <class F>
struct DolbeaultParts {
  LinkField<typename F::Tangent> del, dbar;
};

template <class F>
DolbeaultParts<F> dolbeault_parts(const Connection& A, const Section<F>& u,
                                  Stencil st = Stencil::Forward) {
  auto d = covariant_derivative(A, u, st);
  const Grid& g = A.grid;
  DolbeaultParts<F> out{LinkField<typename F::Tangent>(g), LinkField<typename F::Tangent>(g)};
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const auto& p = u.sites(ix, iy);
      auto d1 = d(ix, iy, 0), d2 = d(ix, iy, 1);
      auto jd1 = F::J(p, d1), jd2 = F::J(p, d2);
      out.dbar(ix, iy, 0) = 0.5 * (d1 + jd2);
      out.dbar(ix, iy, 1) = 0.5 * (d2 - jd1);
      out.del(ix, iy, 0) = 0.5 * (d1 - jd2);
      out.del(ix, iy, 1) = 0.5 * (d2 + jd1);
    }
  return out;
}

// ---------------------------------------------------------------------------
// gauge transformations

// Unitary gauge transformation with phase field psi: section values rotate by
// the fiber action of e^{i psi(x)}, links shift by minus the lattice gradient
// of psi. Exactly equivariant: d_{g(A)}(g u) = g (d_A u) to machine precision.
template <class F>
void gauge_apply_unitary(const SiteField<double>& psi, Connection& A, Section<F>& u) {
  require_same_shape(psi.grid, A.grid);
  const Grid& g = A.grid;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      u(ix, iy) = F::rotate(u(ix, iy), psi(ix, iy));
      A.alpha(ix, iy, 0) -= (psi.wrapped(ix + 1, iy) - psi(ix, iy)) / g.a;
      A.alpha(ix, iy, 1) -= (psi.wrapped(ix, iy + 1) - psi(ix, iy)) / g.a;
    }
}

// Complexified gauge transformation with real parameter field sigma
// (the group element e^{sigma}): section values move along the complexified
// action, links shift by minus the rotated gradient of sigma, so the
// curvature coefficient changes by minus a discrete Laplacian of sigma.
// Holomorphy of the pair is preserved at the discretization order.
template <class F>
void gauge_apply_complexified(const SiteField<double>& sigma, Connection& A, Section<F>& u) {
  require_same_shape(sigma.grid, A.grid);
  const Grid& g = A.grid;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      u(ix, iy) = F::cplx_scale(u(ix, iy), sigma(ix, iy));
      A.alpha(ix, iy, 0) += (sigma.wrapped(ix, iy + 1) - sigma(ix, iy)) / g.a;
      A.alpha(ix, iy, 1) -= (sigma.wrapped(ix + 1, iy) - sigma(ix, iy)) / g.a;
    }
}

// tagged union covering both transformation flavors
struct GaugeTransform {
  enum class Kind { Unitary, Complexified } kind = Kind::Unitary;
  SiteField<double> param;  // phase psi or log-scale sigma
};

template <class F>
void gauge_apply(const GaugeTransform& t, Connection& A, Section<F>& u) {
  if (t.kind == GaugeTransform::Kind::Unitary)
    gauge_apply_unitary(t.param, A, u);
  else
    gauge_apply_complexified(t.param, A, u);
}

// ---------------------------------------------------------------------------
// holomorphic sections (linear fiber)

// section-style twisted access / scatter for plain complex site fields
inline Complex section_value_at(const Grid& g, const SiteField<Complex>& f, int ix, int iy) {
  WrapResult w = wrap(g, ix, iy);
  Complex p = f(w.ix, w.iy);
  if (w.xwraps != 0) p *= std::polar(1.0, -w.xwraps * g.transition_angle(w.iy));
  return p;
}

inline void section_value_scatter(const Grid& g, SiteField<Complex>& acc, int ix, int iy,
                                  Complex val) {
  WrapResult w = wrap(g, ix, iy);
  if (w.xwraps != 0) val *= std::polar(1.0, w.xwraps * g.transition_angle(w.iy));
  acc(w.ix, w.iy) += val;
}

// dbar_A as a complex-linear map on linear-fiber sections, represented by the
// first (dx) coefficient of the (0,1) part; the dy coefficient is -i times it.
// dbar_adjoint is the true adjoint with respect to the discrete complex L2
// product, so <dbar f, h> = <f, dbar_adjoint h> to machine precision.
SiteField<Complex> dbar_apply(const Connection& A, const SiteField<Complex>& f);
SiteField<Complex> dbar_adjoint_apply(const Connection& A, const SiteField<Complex>& h);

struct HolomorphicProjectResult {
  Section<LinearFiber> section;
  double residual = 0.0;  // ||dbar u|| / ||u||, form normalization
  bool converged = false;
  int iterations = 0;
};

// Unit-L2-norm section minimizing ||dbar_A u||, by inverse power iteration on
// the normal operator dbar^* dbar with conjugate-gradient inner solves.
// "converged" means the residual dropped below hol_tol; otherwise the result
// reports NonConvergence through the flag, with the residual attached.
HolomorphicProjectResult holomorphic_project(const Connection& A, std::uint64_t seed,
                                             double hol_tol = 1e-8, int max_outer = -1);

}  // namespace ymh
