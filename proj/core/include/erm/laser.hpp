#pragma once

#include <erm/nonherm.hpp>
#include <erm/types.hpp>

namespace erm::nonherm {

// Pumped point-scatterer polarizability alpha~(delta, W) in Gamma_0 = 1 units,
// delta = (omega - omega_0)/Gamma_0. The shipped model is the three-level atom
// under incoherent pump W: inversion (W-1)/(W+1), power-broadened width 1+W.
// Anything with the same signature can be plugged in.
struct PumpedPolarizability {
  std::function<cplx(double delta, double W)> alpha_tilde;
  static PumpedPolarizability incoherent_three_level();
};

struct LaserThreshold {
  bool lases = false;
  double w_c = 0;      // threshold pump
  double delta_l = 0;  // lasing detuning (omega_L - omega_0)/Gamma_0
};

// pump threshold from the uniform-pump linear-stability condition applied to
// the largest Im Lambda of the domain: W^2 + (2-Y) W + (1+Y) = 0
LaserThreshold threshold_from_max_im(double max_im_lambda);

// first overlap of the 1/alpha~ locus with a computed eigenvalue domain
LaserThreshold lasing_threshold(const Borderline& domain, const PumpedPolarizability& pol,
                                double w_max = 500.0);

// low-density closed form: first W such that
// max_delta (3/8) b0 |alpha~|^2 h(b0 Im alpha~ / 2) = 1
LaserThreshold lasing_threshold_low_density(double b0, const PumpedPolarizability& pol,
                                            double w_max = 500.0);

}  // namespace erm::nonherm
