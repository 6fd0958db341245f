#include <erm/herm.hpp>
#include <erm/special.hpp>

#include <algorithm>
#include <cmath>

namespace erm::herm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// damped Newton continuation along the grid, large |Lambda| first
ResolventField continuation_solve(const std::vector<double>& grid, double eps,
                                  const std::function<cplx(cplx)>& F_of_g,  // z(g)
                                  const std::function<cplx(cplx)>& dF_of_g, const ScOptions& opt) {
  // order points by decreasing |Lambda|, remember permutation
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(grid[a]) > std::abs(grid[b]); });

  ResolventField out;
  out.z.resize(grid.size());
  out.g.resize(grid.size());
  out.p.resize(grid.size());
  out.converged.assign(grid.size(), false);
  out.eps = eps;

  cplx g = 0;
  bool seeded = false;
  for (std::size_t idx : order) {
    cplx z(grid[idx], eps);
    if (!seeded) {
      // start well outside the spectrum on the same side
      double far = 40.0 * std::max(1.0, std::abs(grid[idx]));
      cplx zf(grid[idx] >= 0 ? far : -far, eps);
      g = 1.0 / zf;
      for (int k = 0; k <= 60; ++k) {
        cplx zt = zf + (z - zf) * (double(k) / 60.0);
        for (int it = 0; it < opt.max_iter; ++it) {
          cplx F = F_of_g(g) - zt;
          cplx Fp = dF_of_g(g);
          cplx step = F / Fp;
          while (std::abs(step) > 0.4 * std::max(1e-6, std::abs(g))) step *= 0.5;
          g -= step;
          if (std::abs(step) < opt.tol * std::max(1.0, std::abs(g))) break;
        }
      }
      seeded = true;
    }
    bool ok = false;
    int used = 0;
    for (int it = 0; it < opt.max_iter; ++it) {
      cplx F = F_of_g(g) - z;
      cplx Fp = dF_of_g(g);
      if (Fp == cplx(0)) break;
      cplx step = F / Fp;
      while (std::abs(step) > 0.4 * std::max(1e-6, std::abs(g))) step *= 0.5;
      g -= step;
      ++used;
      if (std::abs(step) < opt.tol * std::max(1.0, std::abs(g))) {
        ok = true;
        break;
      }
    }
    if (g.imag() > 0) g = std::conj(g);  // physical sheet: Im g(L + i eps) <= 0
    out.z[idx] = z;
    out.g[idx] = g;
    out.p[idx] = -g.imag() / kPi;
    out.converged[idx] = ok && std::abs(F_of_g(g) - z) < 1e-9 * std::max(1.0, std::abs(z));
    out.max_iterations_used = std::max(out.max_iterations_used, used);
  }
  return out;
}
}  // namespace

ResolventField solve_sc_trace(const TSpectrum& t, const std::vector<double>& grid, double eps,
                              const ScOptions& opt) {
  const auto modes = t.modes;
  const double n = t.n_points;
  auto F = [modes, n](cplx g) {
    cplx s = 0;
    for (auto& m : modes) s += double(m.degeneracy) * m.mu / (1.0 - g * m.mu);
    return 1.0 / g + s / n;
  };
  auto dF = [modes, n](cplx g) {
    cplx s = 0;
    for (auto& m : modes) {
      cplx d = 1.0 - g * m.mu;
      s += double(m.degeneracy) * m.mu * m.mu / (d * d);
    }
    return -1.0 / (g * g) + s / n;
  };
  return continuation_solve(grid, eps, F, dF, opt);
}

ResolventField solve_sc_trace_traceless(const TSpectrum& t, const std::vector<double>& grid,
                                        double eps, const ScOptions& opt) {
  const auto modes = t.modes;
  const double n = t.n_points;
  auto F = [modes, n](cplx g) {
    cplx s = 0;
    for (auto& m : modes) s += double(m.degeneracy) * m.mu * m.mu / (1.0 - g * m.mu);
    return 1.0 / g + g * s / n;
  };
  auto dF = [modes, n](cplx g) {
    cplx s = 0, s2 = 0;
    for (auto& m : modes) {
      cplx d = 1.0 - g * m.mu;
      s += double(m.degeneracy) * m.mu * m.mu / d;
      s2 += double(m.degeneracy) * m.mu * m.mu * m.mu / (d * d);
    }
    return -1.0 / (g * g) + s / n + g * s2 / n;
  };
  return continuation_solve(grid, eps, F, dF, opt);
}

ResolventField gaussian_erm_density(double rho_a3, const std::vector<double>& grid,
                                    double eps) {
  if (!(rho_a3 > 0)) throw std::invalid_argument("gaussian_erm_density: rho a^3 > 0");
  const double b = std::pow(2.0 * kPi, 1.5) * rho_a3;
  auto F = [b](cplx g) { return 1.0 / g + special::li32(b * g) / (b * g); };
  auto dF = [b, &F](cplx g) {
    double d = 1e-7 * std::max(1.0, std::abs(g));
    return (F(g + d) - F(g - d)) / (2.0 * d);
  };
  return continuation_solve(grid, eps, F, dF, {});
}

std::vector<double> gaussian_high_density(double rho_a3, const std::vector<double>& grid) {
  const double b = std::pow(2.0 * kPi, 1.5) * rho_a3;
  std::vector<double> p(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double L = grid[i];
    if (L <= 0 || L >= b) continue;
    p[i] = std::sqrt(std::log(b / L)) / (std::sqrt(2.0) * kPi * kPi * rho_a3 * L);
  }
  return p;
}

ResolventField sinc_density(double k0R, double n_points,
                            const std::vector<double>& lambda_grid, double eps) {
  return solve_sc_trace(sinc_t_spectrum(k0R, n_points), lambda_grid, eps);
}

std::vector<double> mp_approximation(double gamma, const std::vector<double>& grid) {
  const double lm = (1.0 - std::sqrt(gamma)) * (1.0 - std::sqrt(gamma));
  const double lp = (1.0 + std::sqrt(gamma)) * (1.0 + std::sqrt(gamma));
  std::vector<double> p(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double L = grid[i];
    if (L <= lm || L >= lp || L == 0) continue;
    p[i] = std::sqrt((lp - L) * (L - lm)) / (2.0 * kPi * gamma * L);
  }
  return p;
}

HeuristicTables heuristic_high_density(const geometry::KernelSpec& kernel, double rho, int u,
                                       const std::vector<double>& grid) {
  using F = geometry::KernelSpec::Family;
  if (kernel.family != F::gaussian && kernel.family != F::exponential)
    throw std::invalid_argument("heuristic_high_density: need a closed-form f0(k)");
  // f0(k): gaussian a -> (2pi)^{3/2} a^3 exp(-k^2 a^2/2);
  // exponential xi -> 8 pi xi^3 / (1 + k^2 xi^2)^2
  auto f0 = [&](double k) {
    if (kernel.family == F::gaussian) {
      double a = kernel.scale;
      return std::pow(2.0 * kPi, 1.5) * a * a * a * std::exp(-0.5 * k * k * a * a);
    }
    double xi = kernel.scale;
    double d = 1.0 + k * k * xi * xi;
    return 8.0 * kPi * xi * xi * xi / (d * d);
  };
  const double f00 = f0(0);
  // Lambda(k) = rho f0(k) (u=0) or rho (f0(k) - f0(0)) (u=1), both monotone in k
  HeuristicTables out;
  out.lambda = grid;
  out.p.assign(grid.size(), 0.0);
  out.cumulative.assign(grid.size(), 0.0);
  auto lam_of_k = [&](double k) { return u == 0 ? rho * f0(k) : rho * (f0(k) - f00); };
  // invert monotone lam(k) by bisection per grid point, p = k^2/(2 pi^2 rho |dLam/dk|)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double L = grid[i];
    double klo = 0, khi = 60.0 / kernel.scale;
    double flo = lam_of_k(klo) - L, fhi = lam_of_k(khi) - L;
    if (flo * fhi > 0) continue;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (klo + khi);
      double fm = lam_of_k(mid) - L;
      if (flo * fm <= 0) {
        khi = mid;
        fhi = fm;
      } else {
        klo = mid;
        flo = fm;
      }
    }
    double k = 0.5 * (klo + khi);
    double h = std::max(1e-7 / kernel.scale, 1e-9);
    double dd = std::abs((lam_of_k(k + h) - lam_of_k(k - h)) / (2.0 * h));
    if (dd > 0) out.p[i] = k * k / (2.0 * kPi * kPi * rho * dd);
    // cumulative (mass at Lambda' > L): k < k(L) region for decreasing lam
    out.cumulative[i] = std::min(1.0, k * k * k / (6.0 * kPi * kPi * rho));
  }
  return out;
}

HeuristicTables heuristic_low_density_u1(const geometry::KernelSpec& kernel, double rho, int d,
                                         const std::vector<double>& grid) {
  using F = geometry::KernelSpec::Family;
  if (kernel.family != F::exponential && kernel.family != F::gaussian)
    throw std::invalid_argument("heuristic_low_density_u1: monotone kernel required");
  const double xi = kernel.scale;
  const double vd = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  // f^{-1}(y): exponential -> -xi ln y ; gaussian -> a sqrt(-2 ln y)
  auto finv = [&](double y) {
    return kernel.family == F::exponential ? -xi * std::log(y)
                                           : xi * std::sqrt(-2.0 * std::log(y));
  };
  HeuristicTables out;
  out.lambda = grid;
  out.p.assign(grid.size(), 0.0);
  out.cumulative.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double L = grid[i];
    if (L >= 0) {
      out.cumulative[i] = 0;
      continue;
    }
    if (L <= -2.0) {
      out.cumulative[i] = 1;
      continue;
    }
    double r = finv(-L / 2.0);
    double C = std::exp(-vd * rho * std::pow(r, d) / 2.0);
    out.cumulative[i] = C;
    // p = -dC/dL
    double h = std::max(1e-8, 1e-6 * std::abs(L));
    double Lm = std::max(-2.0 + 1e-12, L - h), Lp = std::min(-1e-300, L + h);
    double Cm = std::exp(-vd * rho * std::pow(finv(-Lm / 2.0), d) / 2.0);
    double Cp = std::exp(-vd * rho * std::pow(finv(-Lp / 2.0), d) / 2.0);
    out.p[i] = -(Cp - Cm) / (Lp - Lm);
  }
  return out;
}

RelaxationCurves relaxation_curves(double lambda_min, double lambda_max,
                                   const std::vector<double>& t_grid, double t_w,
                                   double aging_const) {
  if (!(lambda_min > 0 && lambda_max > lambda_min))
    throw std::invalid_argument("relaxation_curves: need 0 < lambda_min < lambda_max");
  RelaxationCurves out;
  out.t = t_grid;
  out.lambda_min = lambda_min;
  out.lambda_max = lambda_max;
  out.t_w = t_w;
  static std::vector<double> gx, gw;
  if (gx.empty()) special::gauss_legendre(256, gx, gw);
  for (double t : t_grid) {
    // int dL e^{-L t}/L on [lmin, lmax], log substitution L = e^s
    double slo = std::log(lambda_min), shi = std::log(lambda_max);
    double acc = 0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      double s = 0.5 * (shi - slo) * gx[i] + 0.5 * (shi + slo);
      acc += 0.5 * (shi - slo) * gw[i] * std::exp(-std::exp(s) * t);
    }
    out.delta_n.push_back(acc);
    out.aging.push_back(aging_const * std::log1p(t_w / t));
  }
  return out;
}

}  // namespace erm::herm
