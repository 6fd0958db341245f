#include <erm/herm.hpp>
#include <erm/special.hpp>

#include <algorithm>
#include <cmath>

namespace erm::herm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TSpectrum TSpectrum::flat(cplx mu, std::size_t m_modes, double n_points) {
  TSpectrum t;
  t.ensemble = "flat";
  t.n_points = n_points;
  t.modes.push_back({mu, int(m_modes), 0, 0, 0});
  return t;
}

double gamma_box(double n, double k0L) { return 2.8 * n / (k0L * k0L); }
double gamma_sphere(double n, double k0R) { return 9.0 * n / (8.0 * k0R * k0R); }
double k0r_for_gamma_sphere(double n, double gamma) {
  return std::sqrt(9.0 * n / (8.0 * gamma));
}
double rho_lambda3_sphere(double n, double k0R) {
  return 6.0 * kPi * kPi * n / (k0R * k0R * k0R);
}
double k0r_for_rho_sphere(double n, double rho_lambda3) {
  return std::cbrt(6.0 * kPi * kPi * n / rho_lambda3);
}

int default_l_max(double k0R) {
  return int(std::ceil(k0R + 4.0 * std::cbrt(k0R) + 10.0));
}

TSpectrum sinc_t_spectrum(double k0R, double n_points, int l_max) {
  if (!(k0R > 0)) throw std::invalid_argument("sinc_t_spectrum: k0R > 0 required");
  if (l_max < 0) l_max = default_l_max(k0R);
  auto j = special::sph_jn(l_max + 1, cplx(k0R, 0));
  TSpectrum t;
  t.ensemble = "sinc";
  t.n_points = n_points;
  t.k0R = k0R;
  t.l_max = l_max;
  for (int l = 0; l <= l_max; ++l) {
    double jl = j[l].real();
    double jm = l >= 1 ? j[l - 1].real() : std::cos(k0R) / k0R;
    double jp = j[l + 1].real();
    double mu = 1.5 * n_points * (jl * jl - jm * jp);
    t.modes.push_back({cplx(mu, 0), 2 * l + 1, 0, l, 0});
  }
  return t;
}

TSpectrum cosc_t_spectrum(double k0R, double rho_lambda3, int l_max, double mu_rel_tol) {
  if (!(k0R > 0)) throw std::invalid_argument("cosc_t_spectrum: k0R > 0 required");
  if (l_max < 0) l_max = default_l_max(k0R);
  const double X = k0R;
  auto yl = special::sph_yn(l_max + 1, X);

  TSpectrum t;
  t.ensemble = "cosc";
  t.n_points = rho_lambda3 * X * X * X / (6.0 * kPi * kPi);
  t.k0R = k0R;
  t.rho_lambda3 = rho_lambda3;
  t.l_max = l_max;

  // per l, roots x = kappa R of (x/X) j_{l-1}(x) n_l(X) = j_l(x) n_{l-1}(X);
  // real roots from sign scans plus imaginary-axis roots (x = i s)
  for (int l = 0; l <= l_max; ++l) {
    const double nl = yl[l];
    const double nm = l >= 1 ? yl[l - 1] : std::sin(X) / X;  // y_{-1}(x) = sin x / x
    const double rn = nl / nm;
    // ratio form (x/X)(n_l/n_{l-1}) = j_l(x)/j_{l-1}(x); j-ratio by continued
    // fraction, so the spurious x = 0 family never appears
    auto eqn = [&](cplx x) -> cplx { return x / X * rn - special::sph_j_ratio(l, x); };
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

    std::vector<cplx> roots;
    auto add_root = [&](cplx x) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return;
      if (x.real() < -1e-9) x = -x;
      if (std::abs(x) < 1e-2) return;
      double scale = std::abs(x / X * rn) + std::abs(special::sph_j_ratio(l, x)) + 1e-6;
      if (std::abs(eqn(x)) > 1e-8 * scale) return;
      for (auto& r : roots)
        if (std::abs(x - r) < 1e-8 * std::max(1.0, std::abs(r))) return;
      roots.push_back(x);
    };
    // real-axis scan at pi/2 spacing up to the mu cutoff radius
    const double xstop = 4.0 * X + 40.0;
    double fp = 0;
    bool have = false;
    for (double x = 0.05; x < xstop; x += 0.5 * kPi) {
      double f = eqn(cplx(x, 0)).real();
      if (have && fp * f < 0) add_root(polish(cplx(x - 0.25 * kPi, 0)));
      fp = f;
      have = true;
    }
    // imaginary axis: x = i s; equation real there as well
    have = false;
    for (double s = 0.05; s < 2.0 * X + 20.0; s += 0.5 * kPi) {
      double f = eqn(cplx(0, s)).real();
      if (have && fp * f < 0) add_root(polish(cplx(0, s - 0.25 * kPi)));
      fp = f;
      have = true;
    }
    int p = 1;
    for (auto x : roots) {
      cplx ko = x / X;
      cplx mu = (rho_lambda3 / (2.0 * kPi * kPi)) / (ko * ko - 1.0);
      t.modes.push_back({mu, 2 * l + 1, ko, l, p++});
    }
  }

  // global relative-mu cutoff
  double mumax = 0;
  for (auto& m : t.modes) mumax = std::max(mumax, std::abs(m.mu));
  std::erase_if(t.modes, [&](const TSpectrum::Mode& m) {
    return std::abs(m.mu) < mu_rel_tol * mumax;
  });
  return t;
}

}  // namespace erm::herm
