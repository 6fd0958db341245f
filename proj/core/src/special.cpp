#include <erm/special.hpp>

#include <cmath>

namespace erm::special {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<cplx> miller_downward(int lmax, cplx z, bool normalize) {
  std::vector<cplx> out(lmax + 1);
  if (std::abs(z) < 1e-8) {
    out[0] = 1.0;
    for (int l = 1; l <= lmax; ++l) out[l] = out[l - 1] * z / double(2 * l + 1);
    return out;
  }
  const int nstart = lmax + int(std::ceil(std::sqrt(40.0 * std::max(lmax, 1)))) + 20;
  cplx jp = 0.0, jc = 1e-280;
  for (int l = nstart; l >= 1; --l) {
    cplx jm = double(2 * l + 1) / z * jc - jp;
    jp = jc;
    jc = jm;
    if (l - 1 <= lmax) out[l - 1] = jc;
    if (std::abs(jc.real()) > 1e250 || std::abs(jc.imag()) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
  }
  if (normalize) {
    cplx scale = (std::sin(z) / z) / out[0];
    for (auto& v : out) v *= scale;
  } else {
    // fix scale to keep magnitudes workable without referencing sin(z)
    double m = 0;
    for (auto& v : out) m = std::max(m, std::abs(v));
    if (m > 0)
      for (auto& v : out) v /= m;
  }
  return out;
}
}  // namespace

std::vector<cplx> sph_jn(int lmax, cplx z) { return miller_downward(lmax, z, true); }

std::vector<cplx> sph_jn_unnormalized(int lmax, cplx z) { return miller_downward(lmax, z, false); }

cplx sph_j_ratio(int l, cplx z) {
  // j_l/j_{l-1} = z / ((2l+1) - z^2/((2l+3) - z^2/(...)))
  const int kmax = 20000;
  const double tiny = 1e-290;
  cplx b = cplx(2 * l + 1), f = b, C = b, D = 0.0;
  if (std::abs(f) < tiny) f = tiny;
  for (int k = 1; k < kmax; ++k) {
    cplx a = -z * z;
    b = cplx(2.0 * (l + k) + 1.0);
    D = b + a * D;
    if (std::abs(D) < tiny) D = tiny;
    C = b + a / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0 / D;
    cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return z / f;
}

std::vector<double> sph_yn(int lmax, double x) {
  std::vector<double> out(lmax + 1);
  out[0] = -std::cos(x) / x;
  if (lmax >= 1) out[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 2; l <= lmax; ++l) out[l] = double(2 * l - 1) / x * out[l - 1] - out[l - 2];
  return out;
}

std::vector<cplx> sph_h1(int lmax, double x) {
  std::vector<cplx> out(lmax + 1);
  const cplx eix = std::exp(cplx(0, x));
  out[0] = cplx(0, -1) * eix / x;
  if (lmax >= 1) out[1] = -(1.0 + cplx(0, 1) / x) * eix / x;
  for (int l = 2; l <= lmax; ++l) out[l] = double(2 * l - 1) / x * out[l - 1] - out[l - 2];
  return out;
}

double sph_jn_real(int l, double x) { return sph_jn(l, cplx(x, 0))[l].real(); }

cplx li32(cplx x) {
  if (std::abs(x) < 0.9) {
    cplx s = 0.0, xp = x;
    for (int k = 1; k < 400; ++k) {
      cplx t = xp / (std::sqrt(double(k)) * double(k));
      s += t;
      xp *= x;
      if (std::abs(t) < 1e-17 * std::max(1.0, std::abs(s))) break;
    }
    return s;
  }
  // Li_{3/2}(x) = x/Gamma(3/2) * int_0^inf sqrt(t)/(e^t - x) dt
  static std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(96, gx, gw);
  const double panels[8] = {0, 1, 3, 8, 20, 45, 90, 180};
  cplx total = 0.0;
  for (int pnl = 0; pnl < 7; ++pnl) {
    double a = panels[pnl], b = panels[pnl + 1];
    for (std::size_t i = 0; i < gx.size(); ++i) {
      double t = 0.5 * (b - a) * gx[i] + 0.5 * (a + b);
      total += 0.5 * (b - a) * gw[i] * std::sqrt(t) / (std::exp(t) - x);
    }
  }
  return x * total / (0.5 * std::sqrt(kPi));
}

cplx pair_h(cplx x) {
  if (std::abs(x) < 1e-2) {
    // 1 - 8x/15 + 2x^2/9 - 8x^3/105 + ...
    return 1.0 - 8.0 * x / 15.0 + 2.0 * x * x / 9.0 - 8.0 * x * x * x / 105.0;
  }
  cplx x2 = x * x;
  return (3.0 - 6.0 * x2 + 8.0 * x2 * x - 3.0 * (1.0 + 2.0 * x) * std::exp(-2.0 * x)) /
         (6.0 * x2 * x2);
}

cplx kappa_over_k0(cplx g, double rho_lambda3) {
  return std::sqrt(1.0 + g * rho_lambda3 / (2.0 * kPi * kPi));
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
  }
}

void gauss_chebyshev2(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int k = 1; k <= n; ++k) {
    double th = k * kPi / (n + 1);
    x[k - 1] = std::cos(th);
    w[k - 1] = kPi / (n + 1) * std::sin(th) * std::sin(th);
  }
}

}  // namespace erm::special
