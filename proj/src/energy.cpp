#include "ymh/energy.hpp"

#include <cmath>

namespace ymh {

namespace {
using F = LinearFiber;

double site_l2(const SiteField<Complex>& f) { return std::sqrt(l2_inner_product(f, f)); }
}  // namespace

std::vector<IdentityResidual> identity_residuals(const Connection& A,
                                                 const Section<LinearFiber>& u, Stencil st) {
  require_same_shape(A.grid, u.grid);
  const Grid& g = A.grid;
  std::vector<IdentityResidual> out;

  // Lemma 2.1 / 2.3 pointwise: <L_p xi, v> = <xi, L*_p v> and L = -J (dmu)^*,
  // evaluated over the section's own values with a fixed probe tangent.
  {
    const Complex vprobe(0.7, -0.4);
    const double rho = 0.9;
    double worst = 0.0, scale = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const Complex& p = u(ix, iy);
        Complex lxi = F::act_vec(p, rho);
        double lhs = F::metric(p, lxi, vprobe);
        double rhs = rho * F::lstar(p, vprobe);
        worst = std::max(worst, std::abs(lhs - rhs));
        Complex op = lxi + F::J(p, rho * F::grad_moment(p));
        worst = std::max(worst, std::abs(op));
        scale = std::max(scale, std::abs(lhs) + std::abs(rhs) + std::abs(lxi));
      }
    out.push_back({"lemma2.1", worst, scale});
  }

  auto d = covariant_derivative(A, u, st);
  auto dbp = dolbeault_parts(A, u, st);

  // Lemma 3.3: dbar^* psi = i [del_A, Lambda] psi = -J Lambda d_A psi on the
  // (0,1) part of d_A u.
  {
    const auto& psi = dbp.dbar;
    auto lhs = cov_deriv_adjoint(A, u, psi, st);
    auto ext = cov_exterior(A, u, psi, st);
    SiteField<Complex> r(g), rhs(g);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        rhs(ix, iy) = F::J(u(ix, iy), ext(ix, iy));
        r(ix, iy) = lhs(ix, iy) + rhs(ix, iy);
      }
    out.push_back({"lemma3.3", site_l2(r), site_l2(lhs) + site_l2(rhs)});
  }

  // Lemma 3.5: (dbar - del)(mu(u)) = i L^*_u(d_A u), in real coordinates
  // d2 mu = L^*(D_1 u), -d1 mu = L^*(D_2 u). Holds modulo the holomorphy
  // defect of u, which is reported alongside.
  {
    SiteField<double> m(g);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) m(ix, iy) = F::moment(u(ix, iy));
    auto gm = scalar_gradient(m, st);
    double num = 0.0, den = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        double l1 = F::lstar(u(ix, iy), d(ix, iy, 0));
        double l2 = F::lstar(u(ix, iy), d(ix, iy, 1));
        double r1 = gm(ix, iy, 1) - l1;
        double r2 = gm(ix, iy, 0) + l2;
        num += r1 * r1 + r2 * r2;
        den += gm(ix, iy, 0) * gm(ix, iy, 0) + gm(ix, iy, 1) * gm(ix, iy, 1) + l1 * l1 + l2 * l2;
      }
    out.push_back({"lemma3.5", std::sqrt(num * g.plaq_area()), std::sqrt(den * g.plaq_area())});
    double dbar_norm = std::sqrt(l2_inner_product(dbp.dbar, dbp.dbar));
    double d_norm = std::sqrt(l2_inner_product(d, d));
    out.push_back({"dbar-residual", dbar_norm, d_norm});
  }

  // Lemma 3.6: d*_A F_A = i (del_A - dbar_A) Lambda F_A. The left side is the
  // true adjoint of the plaquette curl; in real coordinates the right side is
  // (d2 B, -d1 B).
  {
    PlaqField<double> Bp = curvature(A);
    SiteField<double> B(g);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) B(ix, iy) = Bp(ix, iy);
    auto gB = scalar_gradient(B, st);
    double num = 0.0, den = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        double l1, l2;
        if (st == Stencil::Forward) {
          l1 = (B(ix, iy) - B.wrapped(ix, iy - 1)) / g.a;
          l2 = (B.wrapped(ix - 1, iy) - B(ix, iy)) / g.a;
        } else {
          l1 = 0.5 * ((B(ix, iy) - B.wrapped(ix, iy - 1)) + (B.wrapped(ix, iy + 1) - B(ix, iy))) /
               g.a;
          l2 = 0.5 * ((B.wrapped(ix - 1, iy) - B(ix, iy)) + (B(ix, iy) - B.wrapped(ix + 1, iy))) /
               g.a;
        }
        double r1 = l1 - gB(ix, iy, 1);
        double r2 = l2 + gB(ix, iy, 0);
        num += r1 * r1 + r2 * r2;
        den += l1 * l1 + l2 * l2 + gB(ix, iy, 0) * gB(ix, iy, 0) + gB(ix, iy, 1) * gB(ix, iy, 1);
      }
    out.push_back({"lemma3.6", std::sqrt(num * g.plaq_area()), std::sqrt(den * g.plaq_area())});
  }

  // Lemma 3.7: d*_A d_A u - (i Lambda F_A) u = 2 dbar^*_A dbar_A u, where the
  // Lie algebra value acts through J X, plus the scalar pairing form.
  {
    auto ddu = cov_deriv_adjoint(A, u, d, st);
    auto dbb = cov_deriv_adjoint(A, u, dbp.dbar, st);
    PlaqField<double> Bp = curvature(A);
    SiteField<Complex> r(g), K(g);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const Complex& p = u(ix, iy);
        K(ix, iy) = Bp(ix, iy) * F::J(p, F::act_vec(p, 1.0));
        r(ix, iy) = ddu(ix, iy) - K(ix, iy) - 2.0 * dbb(ix, iy);
      }
    out.push_back(
        {"lemma3.7", site_l2(r), site_l2(ddu) + site_l2(K) + 2.0 * site_l2(dbb)});

    double lhs_s = l2_inner_product(d, d);
    double ku = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        ku += detail::pointwise_pair(K(ix, iy), u(ix, iy));
    ku *= g.plaq_area();
    double rhs_s = 2.0 * l2_inner_product(dbp.dbar, dbp.dbar);
    out.push_back({"lemma3.7-scalar", std::abs(lhs_s - ku - rhs_s),
                   std::abs(lhs_s) + std::abs(ku) + std::abs(rhs_s)});
  }

  return out;
}

}  // namespace ymh
