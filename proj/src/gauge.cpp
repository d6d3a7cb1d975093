#include "ymh/gauge.hpp"

#include <cmath>

namespace ymh {

SiteField<Complex> dbar_apply(const Connection& A, const SiteField<Complex>& f) {
  const Grid& g = A.grid;
  require_same_shape(g, f.grid);
  SiteField<Complex> out(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      Complex d[2];
      for (int k = 0; k < 2; ++k) {
        int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
        Complex head = section_value_at(g, f, hx, hy) * std::polar(1.0, -A.theta(ix, iy, k));
        d[k] = (head - f(ix, iy)) / g.a;
      }
      out(ix, iy) = 0.5 * (d[0] + Complex(0.0, 1.0) * d[1]);
    }
  return out;
}

SiteField<Complex> dbar_adjoint_apply(const Connection& A, const SiteField<Complex>& h) {
  const Grid& g = A.grid;
  require_same_shape(g, h.grid);
  SiteField<Complex> out(g, Complex(0.0, 0.0));
  const Complex w0(0.5, 0.0), w1(0.0, -0.5);  // conj of the dbar component weights
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int k = 0; k < 2; ++k) {
        Complex c = (k == 0 ? w0 : w1) * h(ix, iy) / g.a;
        int hx = ix + (k == 0 ? 1 : 0), hy = iy + (k == 1 ? 1 : 0);
        section_value_scatter(g, out, hx, hy, std::polar(1.0, A.theta(ix, iy, k)) * c);
        out(ix, iy) -= c;
      }
  return out;
}

namespace {

// normal operator N = dbar^* dbar plus a small shift
SiteField<Complex> normal_apply(const Connection& A, const SiteField<Complex>& f, double shift) {
  SiteField<Complex> out = dbar_adjoint_apply(A, dbar_apply(A, f));
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += shift * f.v[i];
  return out;
}

double cnorm2(const SiteField<Complex>& f) {
  double s = 0.0;
  for (const Complex& z : f.v) s += std::norm(z);
  return s * f.grid.plaq_area();
}

Complex cdot(const SiteField<Complex>& f, const SiteField<Complex>& g) {
  Complex s = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) s += std::conj(f.v[i]) * g.v[i];
  return s * f.grid.plaq_area();
}

// conjugate gradients for the shifted normal equations
SiteField<Complex> cg_solve(const Connection& A, const SiteField<Complex>& b, double shift,
                            double tol, int max_iter) {
  const Grid& g = A.grid;
  SiteField<Complex> x(g, Complex(0, 0));
  SiteField<Complex> r = b;
  SiteField<Complex> p = r;
  double rr = cnorm2(r);
  const double stop = tol * tol * cnorm2(b);
  for (int it = 0; it < max_iter && rr > stop; ++it) {
    SiteField<Complex> Ap = normal_apply(A, p, shift);
    double pAp = cdot(p, Ap).real();
    if (pAp <= 0.0) break;
    double alpha = rr / pAp;
    for (size_t i = 0; i < x.v.size(); ++i) {
      x.v[i] += alpha * p.v[i];
      r.v[i] -= alpha * Ap.v[i];
    }
    double rr_new = cnorm2(r);
    double beta = rr_new / rr;
    rr = rr_new;
    for (size_t i = 0; i < p.v.size(); ++i) p.v[i] = r.v[i] + beta * p.v[i];
  }
  return x;
}

}  // namespace

HolomorphicProjectResult holomorphic_project(const Connection& A, std::uint64_t seed,
                                             double hol_tol, int max_outer) {
  const Grid& g = A.grid;
  if (max_outer < 0) max_outer = 10 * g.sites();
  SplitMix64 rng(seed);
  SiteField<Complex> v(g);
  for (auto& z : v.v) z = Complex(rng.symmetric(1.0), rng.symmetric(1.0));
  double n = std::sqrt(cnorm2(v));
  for (auto& z : v.v) z /= n;

  // scale-aware shift keeps CG well posed when the operator is singular
  const double shift = 1e-12 / (g.a * g.a);
  double lambda_prev = -1.0;
  int outer = 0;
  for (; outer < max_outer; ++outer) {
    SiteField<Complex> w = cg_solve(A, v, shift, 1e-12, 4 * g.sites());
    double wn = std::sqrt(cnorm2(w));
    if (!(wn > 0.0)) break;
    for (size_t i = 0; i < w.v.size(); ++i) w.v[i] /= wn;
    v = w;
    double lambda = cdot(v, normal_apply(A, v, 0.0)).real();
    if (lambda_prev >= 0.0 &&
        std::abs(lambda - lambda_prev) <= 1e-6 * std::max(lambda, 1e-30) + 1e-30)
      break;
    lambda_prev = lambda;
  }

  double lambda = cdot(v, normal_apply(A, v, 0.0)).real();
  double residual = std::sqrt(std::max(0.0, 2.0 * lambda));  // form norm of dbar u

  HolomorphicProjectResult res;
  res.section = Section<LinearFiber>(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) res.section(ix, iy) = v(ix, iy);
  res.residual = residual;
  res.iterations = outer + 1;
  res.converged = residual <= hol_tol;
  return res;
}

}  // namespace ymh
