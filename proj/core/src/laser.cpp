#include <erm/laser.hpp>
#include <erm/special.hpp>

#include <cmath>

namespace erm::nonherm {

PumpedPolarizability PumpedPolarizability::incoherent_three_level() {
  PumpedPolarizability p;
  p.alpha_tilde = [](double delta, double w) -> cplx {
    const double inv = (w - 1.0) / (w + 1.0);  // equilibrium inversion
    return inv / cplx(-2.0 * delta, 1.0 + w);
  };
  return p;
}

LaserThreshold threshold_from_max_im(double y) {
  LaserThreshold t;
  // (W-1)/(W+1) Y = 1+W  ->  W^2 + (2-Y) W + (1+Y) = 0
  const double disc = y * y - 8.0 * y;
  if (y < 8.0 || disc < 0) return t;  // no pump can reach the domain
  t.lases = true;
  t.w_c = 0.5 * ((y - 2.0) - std::sqrt(disc));
  t.delta_l = 0.0;
  return t;
}

namespace {
// does the pump-W locus 1/alpha~(delta) touch the domain? returns contact delta
bool locus_touches(const Borderline& domain, const PumpedPolarizability& pol, double w,
                   double* delta_hit) {
  for (double d = -60.0; d <= 60.0; d += 0.05) {
    cplx at = pol.alpha_tilde(d, w);
    if (at == cplx(0)) continue;
    if (domain.contains(1.0 / at)) {
      if (delta_hit) *delta_hit = d;
      return true;
    }
  }
  return false;
}
}  // namespace

LaserThreshold lasing_threshold(const Borderline& domain, const PumpedPolarizability& pol,
                                double w_max) {
  LaserThreshold t;
  double hit = 0;
  if (!locus_touches(domain, pol, w_max, &hit)) return t;
  double lo = 0, hi = w_max;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (locus_touches(domain, pol, mid, &hit))
      hi = mid;
    else
      lo = mid;
  }
  t.lases = true;
  t.w_c = 0.5 * (lo + hi);
  locus_touches(domain, pol, hi, &t.delta_l);
  return t;
}

LaserThreshold lasing_threshold_low_density(double b0, const PumpedPolarizability& pol,
                                            double w_max) {
  LaserThreshold t;
  auto phi_max = [&](double w) {
    double best = -1e300;
    for (double d = -60.0; d <= 60.0; d += 0.02) {
      cplx at = pol.alpha_tilde(d, w);
      double val = 0.375 * b0 * std::norm(at) *
                   special::pair_h(cplx(0.5 * b0 * at.imag(), 0)).real();
      if (val > best) best = val;
    }
    return best;
  };
  if (phi_max(w_max) < 1.0) return t;
  double lo = 0, hi = w_max;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (phi_max(mid) >= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  t.lases = true;
  t.w_c = 0.5 * (lo + hi);
  // lasing detuning = argmax of phi at threshold
  double best = -1e300;
  for (double d = -60.0; d <= 60.0; d += 0.02) {
    cplx at = pol.alpha_tilde(d, t.w_c);
    double val =
        0.375 * b0 * std::norm(at) * special::pair_h(cplx(0.5 * b0 * at.imag(), 0)).real();
    if (val > best) {
      best = val;
      t.delta_l = d;
    }
  }
  return t;
}

}  // namespace erm::nonherm
