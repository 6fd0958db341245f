#pragma once

#include <erm/types.hpp>

namespace erm::herm {

// Self-consistent vibrational solver for the u = 1 Gaussian-spring model
// f(r) = -exp(-r^2/2 a^2), a = 1 units:
//   g_k(z) = 1/(z - eps(k) - sigma_k(z)),  eps(k) = rho (2pi)^{3/2}(1 - e^{-k^2/2})
//   sigma_k(z) = (1/rho) int d3q/(2pi)^3 {rho[f0(q) - f0(k-q)]}^2 g_q(z)
// plus the closure for g(z) and the derived DOS / reduced DOS / DSF.
struct VibrationResult {
  std::vector<double> omega;
  std::vector<double> dos;          // nu(omega)
  std::vector<double> reduced_dos;  // nu/omega^2
  std::vector<cplx> g;              // resolvent at z = omega^2 + i eps -> 0
  // per requested k: S(k, omega) at unit k_B T and the linewidth diagnostics
  std::vector<double> k_list;
  std::vector<std::vector<double>> dsf;       // [k][omega]
  std::vector<double> gamma_k;                // Im sigma_k / omega at the Brillouin peak
  double gamma_exponent = 0;                  // fitted d ln Gamma / d ln k
  bool converged = true;
};

struct VibrationOptions {
  double eps_scale = 2e-3;   // epsilon = eps_scale * max(0.3, omega^2), Richardson-refined
  int base_grid_lo = 420;    // q in [0, 1.5]
  int base_grid_hi = 180;    // q in (1.5, qmax]
  double qmax = 7.0;
  double eta = 0.6;
  int max_iter = 5000;
  double tol = 1e-12;
};

VibrationResult vibrational_solver(double rho_a3, const std::vector<double>& omega_grid,
                                   const std::vector<double>& k_list = {},
                                   const VibrationOptions& opt = {});

// speed of sound of the continuum limit, c^2 = rho (2pi)^{3/2} / 2
double sound_speed(double rho_a3);

}  // namespace erm::herm
