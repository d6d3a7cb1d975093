#pragma once
#include <string>
#include <vector>

#include "ymh/gauge.hpp"

namespace ymh {

struct EnergyBreakdown {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, total = 0.0;
};

// Yang-Mills-Higgs energy: ||F_A||^2 + ||d_A u||^2 + ||mu(u) - c||^2 with the
// discrete L2 norms. The link term is accumulated as squared transported
// chords, which is what the exact gradients below differentiate.
template <class F>
EnergyBreakdown ymh_energy(const Connection& A, const Section<F>& u, double c) {
  require_same_shape(A.grid, u.grid);
  const Grid& g = A.grid;
  EnergyBreakdown e;
  PlaqField<double> B = curvature(A);
  for (double b : B.v) e.e1 += b * b;
  e.e1 *= g.plaq_area();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      for (int k = 0; k < 2; ++k) {
        int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
        auto head = F::rotate(u.at(hx, hy), A.theta(ix, iy, k));
        auto chord = head - u.at(ix, iy);
        e.e2 += detail::pointwise_pair(chord, chord);
      }
      double dm = F::moment(u(ix, iy)) - c;
      e.e3 += dm * dm;
    }
  e.e3 *= g.plaq_area();
  e.total = e.e1 + e.e2 + e.e3;
  return e;
}

// Exact L2 gradient of the discrete energy with respect to the section. For
// the sphere fiber the euclidean partial is projected to the tangent space,
// which is the Riemannian gradient of the retracted energy.
template <class F>
SiteField<typename F::Tangent> grad_u(const Connection& A, const Section<F>& u, double c) {
  require_same_shape(A.grid, u.grid);
  const Grid& g = A.grid;
  SiteField<typename F::Tangent> acc(g, typename F::Tangent{});
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int k = 0; k < 2; ++k) {
        int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
        double th = A.theta(ix, iy, k);
        auto head = F::rotate(u.at(hx, hy), th);
        auto chord = head - u.at(ix, iy);
        acc(ix, iy) += -2.0 * chord;
        u.add_cotangent(acc, hx, hy, F::rotate_tangent(u(ix, iy), 2.0 * chord, -th));
      }
  const double inv_a2 = 1.0 / g.plaq_area();
  SiteField<typename F::Tangent> out(g, typename F::Tangent{});
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      auto v = inv_a2 * acc(ix, iy);
      v += 2.0 * (F::moment(u(ix, iy)) - c) * F::grad_moment(u(ix, iy));
      out(ix, iy) = F::project(u(ix, iy), v);
    }
  return out;
}

// Exact L2 gradient with respect to the link field. Independent of c: the
// Higgs term carries no connection dependence.
template <class F>
LinkField<double> grad_A(const Connection& A, const Section<F>& u) {
  require_same_shape(A.grid, u.grid);
  const Grid& g = A.grid;
  PlaqField<double> B = curvature(A);
  LinkField<double> out(g, 0.0);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      out(ix, iy, 0) = (2.0 / g.a) * (B(ix, iy) - B.wrapped(ix, iy - 1));
      out(ix, iy, 1) = (2.0 / g.a) * (B.wrapped(ix - 1, iy) - B(ix, iy));
      for (int k = 0; k < 2; ++k) {
        int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
        auto head = F::rotate(u.at(hx, hy), A.theta(ix, iy, k));
        auto chord = head - u.at(ix, iy);
        out(ix, iy, k) +=
            (2.0 / g.a) * detail::pointwise_pair(chord, F::act_vec(head, 1.0));
      }
    }
  return out;
}

// pointwise vortex residual r = Lambda F + mu(u) - c, base-site staggered
template <class F>
SiteField<double> vortex_residual(const Connection& A, const Section<F>& u, double c) {
  require_same_shape(A.grid, u.grid);
  PlaqField<double> B = curvature(A);
  SiteField<double> r(A.grid);
  const Grid& g = A.grid;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) r(ix, iy) = B(ix, iy) + F::moment(u(ix, iy)) - c;
  return r;
}

// ehat = |Lambda F + mu(u) - c|^2 pointwise
template <class F>
SiteField<double> ehat(const Connection& A, const Section<F>& u, double c) {
  SiteField<double> r = vortex_residual(A, u, c);
  for (auto& x : r.v) x = x * x;
  return r;
}

// ---------------------------------------------------------------------------
// operator identity suite
//
// The adjoint operators below are the true transposes of the discrete forward
// maps with respect to the lattice L2 products, so the residuals measure only
// commutator defects of the discretization, not adjoint bookkeeping.

// twisted access of a tangent-valued link field component
template <class F>
typename F::Tangent link_tangent_at(const Grid& g, const Section<F>& u,
                                    const LinkField<typename F::Tangent>& psi, int ix, int iy,
                                    int k) {
  WrapResult w = wrap(g, ix, iy);
  typename F::Tangent v = psi(w.ix, w.iy, k);
  if (w.xwraps != 0)
    v = F::rotate_tangent(u.sites(w.ix, w.iy), v, w.xwraps * g.transition_angle(w.iy));
  return v;
}

// adjoint of v -> (D_1 v, D_2 v) on tangent fields along u; the centered
// variant is the adjoint of the averaged forward/backward difference
template <class F>
SiteField<typename F::Tangent> cov_deriv_adjoint(const Connection& A, const Section<F>& u,
                                                 const LinkField<typename F::Tangent>& psi,
                                                 Stencil st = Stencil::Forward) {
  const Grid& g = A.grid;
  const double w_fwd = (st == Stencil::Forward) ? 1.0 : 0.5;
  const double w_bwd = (st == Stencil::Forward) ? 0.0 : 0.5;
  SiteField<typename F::Tangent> out(g, typename F::Tangent{});
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int k = 0; k < 2; ++k) {
        int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
        int tx = ix - (k == 0 ? 1 : 0), ty = iy - (k == 1 ? 1 : 0);
        auto c = (1.0 / g.a) * psi(ix, iy, k);
        if (w_fwd != 0.0) {
          u.add_cotangent(out, hx, hy,
                          F::rotate_tangent(u(ix, iy), w_fwd * c, -A.theta(ix, iy, k)));
          out(ix, iy) += -w_fwd * c;
        }
        if (w_bwd != 0.0) {
          out(ix, iy) += w_bwd * c;
          u.add_cotangent(out, tx, ty,
                          F::rotate_tangent(u(ix, iy), -w_bwd * c, A.theta(tx, ty, k)));
        }
      }
  return out;
}

// covariant exterior derivative of a tangent-valued 1-form, as the plaquette
// coefficient field D_1 psi_2 - D_2 psi_1 with link transport
template <class F>
PlaqField<typename F::Tangent> cov_exterior(const Connection& A, const Section<F>& u,
                                            const LinkField<typename F::Tangent>& psi,
                                            Stencil st = Stencil::Forward) {
  const Grid& g = A.grid;
  PlaqField<typename F::Tangent> out(g, typename F::Tangent{});
  auto fwd = [&](int ix, int iy, int k, int comp) {
    int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
    auto head = F::rotate_tangent(u(ix, iy), link_tangent_at(g, u, psi, hx, hy, comp),
                                  A.theta(ix, iy, k));
    return (1.0 / g.a) * (head - psi(ix, iy, comp));
  };
  auto bwd = [&](int ix, int iy, int k, int comp) {
    int tx = ix - (k == 0 ? 1 : 0), ty = iy - (k == 1 ? 1 : 0);
    auto tail = F::rotate_tangent(u(ix, iy), link_tangent_at(g, u, psi, tx, ty, comp),
                                  -A.theta(tx, ty, k));
    return (1.0 / g.a) * (psi(ix, iy, comp) - tail);
  };
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      if (st == Stencil::Forward) {
        out(ix, iy) = fwd(ix, iy, 0, 1) - fwd(ix, iy, 1, 0);
      } else {
        out(ix, iy) = 0.5 * (fwd(ix, iy, 0, 1) + bwd(ix, iy, 0, 1)) -
                      0.5 * (fwd(ix, iy, 1, 0) + bwd(ix, iy, 1, 0));
      }
    }
  return out;
}

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
  double scale = 0.0;
};

// forward or centered discrete gradient of a plain periodic scalar field
inline LinkField<double> scalar_gradient(const SiteField<double>& f, Stencil st) {
  const Grid& g = f.grid;
  LinkField<double> out(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      if (st == Stencil::Forward) {
        out(ix, iy, 0) = (f.wrapped(ix + 1, iy) - f(ix, iy)) / g.a;
        out(ix, iy, 1) = (f.wrapped(ix, iy + 1) - f(ix, iy)) / g.a;
      } else {
        out(ix, iy, 0) = (f.wrapped(ix + 1, iy) - f.wrapped(ix - 1, iy)) / (2.0 * g.a);
        out(ix, iy, 1) = (f.wrapped(ix, iy + 1) - f.wrapped(ix, iy - 1)) / (2.0 * g.a);
      }
    }
  return out;
}

std::vector<IdentityResidual> identity_residuals(const Connection& A,
                                                 const Section<LinearFiber>& u,
                                                 Stencil st = Stencil::Forward);

}  // namespace ymh
