#include <erm/herm.hpp>
#include <erm/nonherm.hpp>
#include <erm/special.hpp>

#include <algorithm>
#include <cmath>

namespace erm::nonherm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

GreenModel GreenModel::from_n_rho(double n, double rho_lambda3) {
  GreenModel m;
  m.n = n;
  m.rho_lambda3 = rho_lambda3;
  m.k0R = herm::k0r_for_rho_sphere(n, rho_lambda3);
  m.gamma = herm::gamma_sphere(n, m.k0R);
  return m;
}
GreenModel GreenModel::from_n_gamma(double n, double gamma) {
  GreenModel m;
  m.n = n;
  m.gamma = gamma;
  m.k0R = herm::k0r_for_gamma_sphere(n, gamma);
  m.rho_lambda3 = herm::rho_lambda3_sphere(n, m.k0R);
  return m;
}
GreenModel GreenModel::from_gamma_rho(double gamma, double rho_lambda3) {
  GreenModel m;
  m.gamma = gamma;
  m.rho_lambda3 = rho_lambda3;
  // rho l0^3 * k0R = 16 pi^2 gamma / 3
  m.k0R = 16.0 * kPi * kPi * gamma / (3.0 * rho_lambda3);
  m.n = 8.0 * gamma * m.k0R * m.k0R / 9.0;
  return m;
}

GreenTSpectrum green_t_spectrum(double k0R, double rho_lambda3,
                                const GreenSpectrumOptions& opt) {
  if (!(k0R > 0)) throw std::invalid_argument("green_t_spectrum: k0R > 0 required");
  const double X = k0R;
  const int l_max = opt.l_max >= 0 ? opt.l_max
                                   : int(std::ceil(k0R + 4.0 * std::cbrt(k0R) + 10.0));
  auto h1 = special::sph_h1(l_max + 1, X);

  GreenTSpectrum out;
  out.t.ensemble = "green";
  out.t.k0R = k0R;
  out.t.rho_lambda3 = rho_lambda3;
  out.t.l_max = l_max;
  out.t.n_points = rho_lambda3 * X * X * X / (6.0 * kPi * kPi);

  struct RawRoot {
    cplx x;  // kappa R
  };
  std::vector<std::vector<cplx>> roots_per_l(l_max + 1);

  for (int l = 0; l <= l_max; ++l) {
    const cplx hl = h1[l];
    const cplx hm = l >= 1 ? h1[l - 1] : std::exp(cplx(0, X)) / X;  // h1_{-1} = e^{ix}/x
    const cplx rh = hm / hl;
    // ratio form: j_l(x)/j_{l-1}(x) = (x/X) / rh  -> F(x) = ratio(x) - (x/X)/rh
    auto eqn = [&](cplx x) { return special::sph_j_ratio(l, x) - (x / X) / rh; };
    auto scale_at = [&](cplx x) {
      return std::abs(special::sph_j_ratio(l, x)) + std::abs(x / X / rh) + 1e-8;
    };
    auto polish = [&](cplx x0) -> cplx {
      cplx x = x0;
      for (int it = 0; it < 80; ++it) {
        cplx F = eqn(x);
        double d = 1e-7 * std::max(1.0, std::abs(x));
        cplx Fp = (eqn(x + d) - eqn(x - d)) / (2.0 * d);
        if (Fp == cplx(0)) break;
        cplx step = F / Fp;
        while (std::abs(step) > 0.5 * std::max(1.0, std::abs(x))) step *= 0.5;
        x -= step;
        if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(x))) return x;
      }
      return cplx(NAN, NAN);
    };
    auto& roots = roots_per_l[l];
    auto add_root = [&](cplx x) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return;
      if (x.real() < -1e-9) x = -x;
      if (std::abs(x) < 1e-2) return;
      if (std::abs(eqn(x)) > 1e-8 * scale_at(x)) return;
      for (auto& r : roots)
        if (std::abs(x - r) < 1e-8 * std::max(1.0, std::abs(r))) return;
      roots.push_back(x);
    };

    // the mu cutoff limits how far out in |kappa| roots can matter
    const double xstop = 5.0 * X + 60.0;
    // (1) iterated asymptotic seeds x = (l/2+p) pi - (i/2) ln((x+X)/(x-X))
    for (int p = 1;; ++p) {
      double x0 = (0.5 * l + p) * kPi;
      if (x0 > xstop && p > 4) break;
      cplx x(x0, 0);
      for (int it = 0; it < 3; ++it) {
        if (std::abs(x - X) < 1e-9) break;
        x = (0.5 * l + p) * kPi - cplx(0, 0.5) * std::log((x + X) / (x - X));
      }
      add_root(polish(x));
    }
    // (2) real-axis scan of Re F at pi/2 spacing (catches near-real roots)
    double fp = 0;
    bool have = false;
    for (double xr = 0.05; xr < xstop; xr += 0.5 * kPi) {
      double f = eqn(cplx(xr, 0)).real();
      if (have && fp * f < 0) add_root(polish(cplx(xr - 0.25 * kPi, 0)));
      fp = f;
      have = true;
    }
    // (3) imaginary-axis seeds for evanescent-type roots
    for (double s = 0.5 * kPi; s < 2.0 * X + 30.0; s += 0.5 * kPi)
      add_root(polish(cplx(0.05, s)));
  }

  // mu, global cutoff, channels
  double mumax = 0;
  for (int l = 0; l <= l_max; ++l)
    for (auto x : roots_per_l[l]) {
      cplx ko = x / X;
      mumax = std::max(mumax, std::abs((rho_lambda3 / (2.0 * kPi * kPi)) / (ko * ko - 1.0)));
    }
  out.mu_max = mumax;
  cplx tr = 0;
  for (int l = 0; l <= l_max; ++l) {
    GreenTSpectrum::Channel ch;
    ch.l = l;
    int p = 1;
    for (auto x : roots_per_l[l]) {
      cplx ko = x / X;
      cplx mu = (rho_lambda3 / (2.0 * kPi * kPi)) / (ko * ko - 1.0);
      if (std::abs(mu) < opt.mu_rel_tol * mumax) continue;
      ch.mu.push_back(mu);
      ch.kappa_over_k0.push_back(ko);
      out.t.modes.push_back({mu, 2 * l + 1, ko, l, p++});
      tr += double(2 * l + 1) * mu;
    }
    if (ch.mu.empty()) continue;

    // pair overlaps C_lpp' from j values at the kept roots; C is invariant
    // under independent rescaling of the j-vector at each argument, so the
    // unnormalized (overflow-safe) values are fine
    const std::size_t P = ch.mu.size();
    std::vector<cplx> jm(P), j0(P), jp(P);
    for (std::size_t i = 0; i < P; ++i) {
      cplx x = ch.kappa_over_k0[i] * X;
      auto j = special::sph_jn_unnormalized(l + 1, x);
      j0[i] = j[l];
      jp[i] = j[l + 1];
      jm[i] = l >= 1 ? j[l - 1] : j[l] / special::sph_j_ratio(0, x);  // j_{-1} via ratio
    }
    ch.C.assign(P * P, 0.0);
    for (std::size_t a = 0; a < P; ++a) {
      const cplx xa = std::conj(ch.kappa_over_k0[a] * X);
      const cplx jma = std::conj(jm[a]), j0a = std::conj(j0[a]);
      const cplx Da = std::conj(j0[a] * j0[a] - jm[a] * jp[a]);
      for (std::size_t b = 0; b < P; ++b) {
        const cplx xb = ch.kappa_over_k0[b] * X;
        if (a == b && std::abs(ch.kappa_over_k0[a].imag()) < 1e-9) {
          ch.C[a * P + b] = 1.0;  // real kappa: L = R*, normalized self-overlap
          continue;
        }
        const cplx num = xa * jma * j0[b] - xb * jm[b] * j0a;
        const cplx den = xb * xb - xa * xa;
        const cplx Db = j0[b] * j0[b] - jm[b] * jp[b];
        ch.C[a * P + b] = 4.0 * num * num / (den * den) / (Da * Db);
      }
    }
    out.channels.push_back(std::move(ch));
  }
  out.im_trace_over_n = tr.imag() / out.t.n_points;
  if (std::abs(out.im_trace_over_n - 1.0) > opt.trace_warn * opt.mu_rel_tol) {
    out.t.truncation_warning = true;
    out.t.warning = "trace drift: Im sum (2l+1) mu / N = " +
                    std::to_string(out.im_trace_over_n) + " (expected ~1)";
  }
  return out;
}

}  // namespace erm::nonherm
