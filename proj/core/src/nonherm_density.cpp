#include <erm/herm.hpp>
#include <erm/nonherm.hpp>
#include <erm/special.hpp>

#include <algorithm>
#include <cmath>

namespace erm::nonherm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// one damped fixed-point solve of
//   g = [z* - 2 gamma g* h(i kappa(g)* R + i k0 R)] / [2 gamma h(2 Im kappa(g) R)]
// returns (g, converged)
std::pair<cplx, bool> g_low_density(cplx z, const GreenModel& m, cplx g0, double eta = 0.5,
                                    int itmax = 4000, double tol = 1e-11) {
  cplx g = g0;
  const double X = m.k0R;
  for (int it = 0; it < itmax; ++it) {
    cplx kapR = special::kappa_over_k0(g, m.rho_lambda3) * X;
    cplx h1 = special::pair_h(cplx(0, 1) * std::conj(kapR) + cplx(0, X));
    cplx h2 = special::pair_h(cplx(2.0 * kapR.imag(), 0));
    cplx gn = (std::conj(z) - 2.0 * m.gamma * std::conj(g) * h1) / (2.0 * m.gamma * h2);
    cplx next = (1.0 - eta) * g + eta * gn;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) return {g, false};
    if (std::abs(next - g) < tol * std::max(1.0, std::abs(g))) return {next, true};
    g = next;
  }
  return {g, false};
}

double c2_low_density(cplx g, const GreenModel& m) {
  cplx kapR = special::kappa_over_k0(g, m.rho_lambda3) * m.k0R;
  double h2 = special::pair_h(cplx(2.0 * kapR.imag(), 0)).real();
  return 1.0 / (2.0 * m.gamma * h2) - std::norm(g);
}
}  // namespace

NonHermField density_low_density(const GreenModel& model, double re_lo, double re_hi,
                                 std::size_t nx, double im_lo, double im_hi, std::size_t ny) {
  NonHermField f;
  f.nx = nx;
  f.ny = ny;
  f.dx = (re_hi - re_lo) / double(nx - 1);
  f.dy = (im_hi - im_lo) / double(ny - 1);
  f.z.resize(nx * ny);
  f.g.assign(nx * ny, 0.0);
  f.c2.assign(nx * ny, -1.0);
  std::vector<bool> conv(nx * ny, false);

  // sweep each row from the outside in, seeding with the previous solution;
  // init from g = 1/z far outside the spectral region
  for (std::size_t iy = 0; iy < ny; ++iy) {
    double y = im_lo + f.dy * double(iy);
    // left-to-center and right-to-center passes
    for (int pass = 0; pass < 2; ++pass) {
      cplx gprev;
      bool seeded = false;
      for (std::size_t step = 0; step < nx; ++step) {
        std::size_t ix = pass == 0 ? step : nx - 1 - step;
        double x = re_lo + f.dx * double(ix);
        cplx z(x, y);
        std::size_t id = iy * nx + ix;
        f.z[id] = z;
        if (!seeded) {
          cplx zfar = z + (pass == 0 ? cplx(-30.0 * std::sqrt(model.gamma), 0)
                                     : cplx(30.0 * std::sqrt(model.gamma), 0));
          auto [gf, okf] = g_low_density(zfar, model, 1.0 / zfar);
          gprev = okf ? gf : 1.0 / zfar;
          seeded = true;
        }
        auto [g, ok] = g_low_density(z, model, gprev);
        if (ok) {
          gprev = g;
          if (!conv[id] || pass == 1) {
            f.g[id] = g;
            f.c2[id] = c2_low_density(g, model);
            conv[id] = true;
          }
        } else if (!conv[id]) {
          f.c2[id] = -1.0;  // exterior / divergent point
        }
      }
    }
  }

  // Cauchy-Riemann density p = (1/2pi)(d Re g/dx - d Im g/dy), central diffs
  f.p.assign(nx * ny, 0.0);
  for (std::size_t iy = 1; iy + 1 < ny; ++iy)
    for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
      std::size_t id = iy * nx + ix;
      if (f.c2[id] <= 0) continue;  // outside the domain
      if (f.c2[id - 1] <= 0 || f.c2[id + 1] <= 0 || f.c2[id - nx] <= 0 || f.c2[id + nx] <= 0)
        continue;  // needs interior neighbors
      double dre = (f.g[id + 1].real() - f.g[id - 1].real()) / (2.0 * f.dx);
      double dim = (f.g[id + nx].imag() - f.g[id - nx].imag()) / (2.0 * f.dy);
      double p = (dre - dim) / (2.0 * kPi);
      f.p[id] = std::max(p, -1e-6);
    }
  return f;
}

Marginals marginal_conjecture(double gamma, double rho_lambda3) {
  Marginals out;
  out.validity_flag = gamma <= 2.0;
  const double g2 = gamma / 2.0;

  // Im marginal: MP law with variance g2 in y = Im Lambda + 1
  auto law = freeprob::mp_gamma_law(g2);
  const double ylo = law.lo, yhi = law.hi;
  const int n = 800;
  for (int i = 0; i < n; ++i) {
    double y = ylo + (yhi - ylo) * (i + 0.5) / n;
    out.grid_im.push_back(y - 1.0);  // back to Im Lambda
    out.p_im.push_back(law.density(y));
  }

  // Re marginal: cosc law at gamma/2 via the box R-transform
  auto r = [g2, rho_lambda3](cplx z) { return r_cosc_box(z, g2, rho_lambda3); };
  auto g = freeprob::g_from_r(r, std::max(1.0, std::sqrt(gamma)));
  const double xmax = 2.5 * std::sqrt(2.0 * gamma) + 1.0;
  const double eps = 2e-3 * std::max(1.0, xmax);
  const int nx = 600;
  for (int i = 0; i < nx; ++i) {
    double x = -xmax + 2.0 * xmax * (i + 0.5) / nx;
    cplx gg = g(cplx(x, eps));
    out.grid_re.push_back(x);
    out.p_re.push_back(std::max(0.0, -gg.imag() / kPi));
  }
  return out;
}

cplx r_cosc_box(cplx z, double gamma, double rho_lambda3) {
  const double r = rho_lambda3;
  const double q = 4.0 * kPi * kPi * kPi * gamma / r;  // 4 pi^3 gamma / (rho l0^3)
  cplx s = std::sqrt(-1.0 - r / (2.0 * kPi * kPi) * z);
  cplx acoth = 0.5 * std::log((q + 1.0) / (q - 1.0));
  cplx a1 = std::atan((1.0 + 1.0 / q) / s);
  cplx a2 = std::atan((1.0 - 1.0 / q) / s);
  return -(2.0 / kPi) * acoth - (2.0 / kPi) * s * (0.5 * kPi - a1 + a2);
}

double domainfree_residual(cplx z, double gamma) {
  const double x = z.real(), y = z.imag();
  return x * x + std::pow(y / (1.0 + y) - gamma / (2.0 + y), 2) -
         4.0 * gamma / ((1.0 + y) * (2.0 + y));
}

XMatrixModel XMatrixModel::from_n_rho_box(double n, double rho_lambda3) {
  XMatrixModel m;
  m.n = n;
  m.rho_lambda3 = rho_lambda3;
  m.k0L = std::cbrt(8.0 * kPi * kPi * kPi * n / rho_lambda3);
  m.gamma = herm::gamma_box(n, m.k0L);
  return m;
}

XMatrixSuite x_matrix_suite(double gamma, double rho_lambda3, bool with_refined, int nrays) {
  if (!(gamma > 0)) throw std::invalid_argument("x_matrix_suite: gamma > 0");
  XMatrixSuite out;
  using namespace freeprob;
  // X = C + i (S' - I): R1 is the cosc law, R2 the centered MP law
  auto u_simple = gaussian_root_provider(gamma);
  auto v_mp = mp_root_provider(gamma, 1.0);
  cplx center(0, 0.45 * gamma);  // domain sits slightly above the origin
  double rmax = 4.0 * std::sqrt(2.0 * gamma) + 0.5;

  auto pts = quaternion_borderline(u_simple, v_mp, center, rmax, nrays);
  out.simple.method = "quaternion_free_simple";
  out.simple.gamma = gamma;
  out.simple.rho_lambda3 = rho_lambda3;
  out.simple.components.push_back(std::move(pts));

  if (with_refined) {
    auto rfun = [gamma, rho_lambda3](cplx zz) { return r_cosc_box(zz, gamma, rho_lambda3); };
    auto u_ref = newton_root_provider(rfun, gamma);
    auto pr = quaternion_borderline(u_ref, v_mp, center, rmax, nrays);
    out.refined.method = "quaternion_free_refined";
    out.refined.gamma = gamma;
    out.refined.rho_lambda3 = rho_lambda3;
    out.refined.components.push_back(std::move(pr));
  }

  out.p_simple = [gamma](cplx z) {
    double y = z.imag();
    if (domainfree_residual(z, gamma) > 0) return 0.0;
    return (1.0 / (4.0 * kPi)) *
           (1.0 / gamma + 1.0 / (gamma * (1.0 + y) * (1.0 + y)) -
            1.0 / ((2.0 + y) * (2.0 + y)));
  };
  return out;
}

}  // namespace erm::nonherm
