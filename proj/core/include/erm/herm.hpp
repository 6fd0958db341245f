#pragma once

#include <erm/geometry.hpp>
#include <erm/tspectrum.hpp>
#include <erm/types.hpp>

namespace erm::herm {

struct ResolventField {
  std::vector<cplx> z;       // evaluation points (Lambda + i eps on the real line)
  std::vector<cplx> g;
  std::vector<double> p;     // -Im g / pi
  std::vector<bool> converged;
  double eps = 0;
  int max_iterations_used = 0;
};

struct ScOptions {
  double eps = 1e-3;          // times the spectral scale
  double eta = 0.5;           // fixed-point damping (Newton fallback path)
  int max_iter = 2000;
  double tol = 1e-11;
};

// z = 1/g + (1/N) sum_a deg_a mu_a / (1 - g mu_a), solved by damped Newton with
// continuation from the large-|Lambda| end of the grid; p = -Im g / pi.
ResolventField solve_sc_trace(const TSpectrum& t, const std::vector<double>& lambda_grid,
                              double eps, const ScOptions& opt = {});

// Gaussian-kernel ERM (u = 0, density rho a^3):
//   z = 1/g + Li_{3/2}(b g)/(b g),  b = (2 pi)^{3/2} rho a^3
ResolventField gaussian_erm_density(double rho_a3, const std::vector<double>& lambda_grid,
                                    double eps);
// high-density closed form on 0 < Lambda <= b
std::vector<double> gaussian_high_density(double rho_a3,
                                          const std::vector<double>& lambda_grid);

// T-spectrum of the sinc kernel in a sphere: mu_l = (3N/2)[j_l(k0R)^2 -
// j_{l-1}(k0R) j_{l+1}(k0R)], degeneracy 2l+1.
TSpectrum sinc_t_spectrum(double k0R, double n_points, int l_max = -1);

// cosc kernel in a sphere: kappa_lp roots of
//   kappa/k0 = [j_l(kR)/j_{l-1}(kR)] [n_{l-1}(k0R)/n_l(k0R)],
// mu_lp = (rho lambda0^3 / 2 pi^2) / ((kappa/k0)^2 - 1). Roots are real or
// purely imaginary. Traceless: the trace equation uses the mu^2 form.
TSpectrum cosc_t_spectrum(double k0R, double rho_lambda3, int l_max = -1,
                          double mu_rel_tol = 1e-4);

// trace equation for a traceless spectrum (cosc/green form):
//   z = 1/g + (g/N) sum (2l+1) mu^2 / (1 - g mu)
ResolventField solve_sc_trace_traceless(const TSpectrum& t,
                                        const std::vector<double>& lambda_grid, double eps,
                                        const ScOptions& opt = {});

// gamma = 2.8 N/(k0 L)^2 in a box, 9N/8(k0R)^2 in a sphere
double gamma_box(double n, double k0L);
double gamma_sphere(double n, double k0R);
double k0r_for_gamma_sphere(double n, double gamma);
double rho_lambda3_sphere(double n, double k0R);
double k0r_for_rho_sphere(double n, double rho_lambda3);

// Marchenko-Pastur approximation with variance gamma (atom (1-1/gamma)+ at 0)
std::vector<double> mp_approximation(double gamma, const std::vector<double>& lambda_grid);

// sinc density = sinc_t_spectrum + solve_sc_trace in one call
ResolventField sinc_density(double k0R, double n_points, const std::vector<double>& lambda_grid,
                            double eps);

// ---- closed-form low/high-density heuristics ----
struct HeuristicTables {
  std::vector<double> lambda;
  std::vector<double> p;
  std::vector<double> cumulative;  // mass above lambda
};
// high density: p(L) = (1/rho) int d^dk delta(L - rho f0(k)) / (2pi)^d
// (gaussian or exponential kernels, u = 0 or 1)
HeuristicTables heuristic_high_density(const geometry::KernelSpec& kernel, double rho, int u,
                                       const std::vector<double>& lambda_grid);
// low density (u = 1, monotone kernel): C(L) = exp(-V_d rho xi^d [-ln(-L/2)]^d / 2)
HeuristicTables heuristic_low_density_u1(const geometry::KernelSpec& kernel, double rho,
                                         int d, const std::vector<double>& lambda_grid);

// ---- relaxation ----
struct RelaxationCurves {
  std::vector<double> t;
  std::vector<double> delta_n;    // |dn(t)| = int dL e^{-L t}/L over the window
  std::vector<double> aging;      // C ln(1 + tw/t)
  double lambda_min = 0, lambda_max = 0, t_w = 0;
};
RelaxationCurves relaxation_curves(double lambda_min, double lambda_max,
                                   const std::vector<double>& t_grid, double t_w,
                                   double aging_const = 1.0);

}  // namespace erm::herm
