#include <erm/freeprob.hpp>
#include <erm/special.hpp>

#include <algorithm>
#include <cmath>

namespace erm::freeprob {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// principal sqrt with the branch fixed so that f(z) ~ z at |z| -> inf on the
// physical sheet: sqrt(z^2 - s^2) continued from positive real axis
cplx sqrt_branch_inf(cplx z, double s2) {
  cplx w = std::sqrt(z * z - s2);
  if ((std::conj(z) * w).real() < 0) w = -w;  // align with z
  return w;
}

// damped Newton with numeric derivative
cplx newton_solve(const Fn& f, cplx target, cplx guess, int itmax = 300, double tol = 1e-13) {
  cplx q = guess;
  for (int it = 0; it < itmax; ++it) {
    cplx F = f(q) - target;
    double d = 1e-7 * std::max(1.0, std::abs(q));
    cplx Fp = (f(q + d) - f(q - d)) / (2.0 * d);
    if (Fp == cplx(0)) break;
    cplx step = F / Fp;
    double cap = 0.5 * std::max(1.0, std::abs(q));
    while (std::abs(step) > cap) step *= 0.5;
    q -= step;
    if (std::abs(step) < tol * std::max(1.0, std::abs(q))) return q;
  }
  throw NumericalFailure("newton inversion did not converge");
}
}  // namespace

Law semicircle_law() {
  Law law;
  law.lo = -2;
  law.hi = 2;
  law.g = {[](cplx z) { return 0.5 * (z - sqrt_branch_inf(z, 4.0)); },
           "C minus [-2,2]", "semicircle_g"};
  law.density = [](double x) {
    return std::abs(x) >= 2 ? 0.0 : std::sqrt(4.0 - x * x) / (2.0 * kPi);
  };
  return law;
}

Law marchenko_pastur_law(double c) {
  if (!(c > 0)) throw std::invalid_argument("marchenko_pastur_law: c > 0 required");
  Law law;
  const double lm = std::pow(1.0 / std::sqrt(c) - 1.0, 2);
  const double lp = std::pow(1.0 / std::sqrt(c) + 1.0, 2);
  law.lo = lm;
  law.hi = lp;
  law.atom_weight = std::max(0.0, 1.0 - 1.0 / c);
  law.atom_location = 0.0;
  law.g = {[c, lm, lp](cplx z) {
             cplx root = std::sqrt(z - lp) * std::sqrt(z - lm);
             if ((std::conj(z) * root).real() < 0) root = -root;
             return (z + 1.0 - 1.0 / c - root) / (2.0 * z);
           },
           "C minus support", "mp_g"};
  law.density = [c, lm, lp](double x) {
    if (x <= lm || x >= lp) return 0.0;
    return std::sqrt((lp - x) * (x - lm)) / (2.0 * kPi * x);
  };
  return law;
}

Law mp_gamma_law(double gamma) {
  // scaled Wishart: Lambda = gamma * Lambda_wishart(c = gamma)
  Law w = marchenko_pastur_law(gamma);
  Law law;
  law.lo = gamma * w.lo;
  law.hi = gamma * w.hi;
  law.atom_weight = w.atom_weight;
  law.atom_location = 0.0;
  law.g = {[gamma, gw = w.g](cplx z) { return gw(z / gamma) / gamma; },
           "C minus support", "mp_gamma_g"};
  law.density = [gamma, dw = w.density](double x) { return dw(x / gamma) / gamma; };
  return law;
}

BlueR blue_and_r(const AnalyticFunction& g, double scale) {
  // continuation path: from w0 = g(Z) with |Z| large toward the requested w
  auto blue = [g, scale](cplx w) -> cplx {
    cplx zbig = cplx(0, 1000.0 * scale);
    cplx z = zbig;
    const int nsteps = 60;
    cplx w_far = g(zbig);
    for (int k = 1; k <= nsteps; ++k) {
      double f = double(k) / nsteps;
      cplx wt = w_far + f * (w - w_far);
      z = newton_solve(g.eval, wt, z);
    }
    return z;
  };
  BlueR out;
  out.blue = {blue, "image of g", "blue"};
  out.r = {[blue](cplx w) { return blue(w) - 1.0 / w; }, "image of g", "r"};
  return out;
}

AnalyticFunction g_from_r(const Fn& r, double scale) {
  auto eval = [r, scale](cplx z) -> cplx {
    cplx zbig = (std::abs(z) > 100.0 * scale) ? z : cplx(z.real(), 0) + cplx(0, 1) * (1000.0 * scale);
    if (std::abs(z) > 900.0 * scale) zbig = z;
    cplx g = 1.0 / zbig;
    const int nsteps = 80;
    auto B = [&r](cplx w) { return r(w) + 1.0 / w; };
    for (int k = 0; k <= nsteps; ++k) {
      double f = double(k) / nsteps;
      cplx zt = zbig + f * (z - zbig);
      g = newton_solve(B, zt, g);
    }
    if (z.imag() > 0 && g.imag() > 1e-12) g = std::conj(g);  // physical branch
    return g;
  };
  return {eval, "upper half-plane", "g_from_r"};
}

AnalyticFunction s_from_g(const AnalyticFunction& g, double scale) {
  auto eval = [g, scale](cplx z) -> cplx {
    // (1/chi) g(1/chi) = 1 + z ; w = 1/chi: w g(w) = 1 + z
    auto f = [&g](cplx w) { return w * g(w); };
    // start from large w where w g(w) ~ 1
    cplx w = cplx(0, 1000.0 * scale);
    cplx f_far = f(w);
    const int nsteps = 60;
    for (int k = 1; k <= nsteps; ++k) {
      double t = double(k) / nsteps;
      cplx target = f_far + t * (1.0 + z - f_far);
      w = newton_solve(f, target, w);
    }
    cplx chi = 1.0 / w;
    return (1.0 + z) / z * chi;
  };
  return {eval, "near 0", "s_from_g"};
}

AnalyticFunction g_from_s(const Fn& s, double scale) {
  auto eval = [s, scale](cplx z) -> cplx {
    // chi(t) = t s(t)/(1+t); solve chi(t) = 1/z, then g(z) = (1+t)/z
    auto chi = [&s](cplx t) { return t * s(t) / (1.0 + t); };
    // continuation from t ~ -1 + 1/(z s(...))? use large-|z| start t0 ~ g(z)z - 1 ~ m1/z
    cplx zbig = cplx(0, 1000.0 * scale);
    cplx t = 1.0 / (zbig * s(cplx(1e-8, 1e-8))) * 0.0 + cplx(1e-6, -1e-6);
    // walk the target 1/zt from 1/zbig to 1/z
    const int nsteps = 80;
    for (int k = 0; k <= nsteps; ++k) {
      double f = double(k) / nsteps;
      cplx zt = zbig + f * (z - zbig);
      t = newton_solve(chi, 1.0 / zt, t);
    }
    return (1.0 + t) / z;
  };
  return {eval, "upper half-plane", "g_from_s"};
}

MomentsEdges moments_and_edges(const Fn& r, double scale) {
  MomentsEdges out;
  const double h = 1e-5 * scale;
  out.mean = r(cplx(h, 0)).real() * 0.5 + r(cplx(-h, 0)).real() * 0.5;
  out.variance = (r(cplx(h, 0)) - r(cplx(-h, 0))).real() / (2.0 * h);
  // edges: real roots of B'(z) = R'(z) - 1/z^2
  auto Bp = [&](double z) {
    cplx rp = (r(cplx(z + h, 0)) - r(cplx(z - h, 0))) / (2.0 * h);
    return rp.real() - 1.0 / (z * z);
  };
  const double zmax = 30.0 / std::max(std::sqrt(std::abs(out.variance)), 1e-3);
  const int ngrid = 4000;
  double prev = 0;
  bool have_prev = false;
  for (int i = 0; i <= ngrid; ++i) {
    double z = -zmax + 2.0 * zmax * i / ngrid;
    if (std::abs(z) < 1e-9 * zmax) {
      have_prev = false;
      continue;
    }
    double v;
    try {
      v = Bp(z);
    } catch (const NumericalFailure&) {
      have_prev = false;
      continue;
    }
    if (have_prev && prev * v < 0) {
      double lo = -zmax + 2.0 * zmax * (i - 1) / ngrid, hi = z, flo = prev;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = Bp(mid);
        if (flo * fm <= 0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      double zstar = 0.5 * (lo + hi);
      out.edges.push_back((r(cplx(zstar, 0)) + 1.0 / zstar).real());
    }
    prev = v;
    have_prev = true;
  }
  std::sort(out.edges.begin(), out.edges.end());
  if (out.edges.empty()) out.bounded = false;
  return out;
}

Fn erm_r_transform(const herm::TSpectrum& t) {
  if (t.modes.empty()) throw std::invalid_argument("erm_r_transform: empty spectrum");
  auto modes = t.modes;
  double n = t.n_points;
  return [modes, n](cplx z) {
    cplx s = 0;
    for (auto& m : modes) s += double(m.degeneracy) * m.mu / (1.0 - m.mu * z);
    return s / n;
  };
}

// ---------------- quaternion free addition ----------------

RootProvider gaussian_root_provider(double var) {
  return [var](cplx w, cplx s) {
    // var q^2 - w q - s = 0
    cplx disc = std::sqrt(w * w + 4.0 * var * s);
    return std::vector<cplx>{(w + disc) / (2.0 * var), (w - disc) / (2.0 * var)};
  };
}

RootProvider mp_root_provider(double gamma, double shift) {
  return [gamma, shift](cplx w, cplx s) {
    // R(q) = 1/(1-gamma q) - shift:
    // gamma (shift + w) q^2 + (gamma s - w - shift + 1) q - s = 0
    cplx a = gamma * (shift + w);
    cplx b = gamma * s - w - (shift - 1.0);
    cplx c = -s;
    if (std::abs(a) < 1e-300) return std::vector<cplx>{-c / b};
    cplx disc = std::sqrt(b * b - 4.0 * a * c);
    return std::vector<cplx>{(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)};
  };
}

RootProvider newton_root_provider(Fn r, double var_seed) {
  auto seeds = gaussian_root_provider(var_seed);
  return [r = std::move(r), seeds](cplx w, cplx s) {
    auto f = [&](cplx q) { return r(q) * q - w * q - s; };
    std::vector<cplx> out;
    for (cplx q : seeds(w, s)) {
      try {
        cplx root = newton_solve(f, 0.0, q, 200);
        bool dup = false;
        for (auto& o : out)
          if (std::abs(o - root) < 1e-9 * std::max(1.0, std::abs(root))) dup = true;
        if (!dup) out.push_back(root);
      } catch (const NumericalFailure&) {
      }
    }
    return out;
  };
}

std::vector<QuaternionPoint> quaternion_candidates(cplx z, const RootProvider& u_roots,
                                                   const RootProvider& v_roots,
                                                   const QfaOptions& opt) {
  const double x = z.real(), y = z.imag();
  std::vector<QuaternionPoint> out;
  // branch pair (iu, iv) tracked separately so F(t) stays continuous
  auto u_at = [&](double t, std::size_t iu) -> cplx {
    auto r = u_roots(cplx(x, 0), cplx(t - 1.0, 0));
    return iu < r.size() ? r[iu] : cplx(NAN, NAN);
  };
  auto v_at = [&](double t, std::size_t iv) -> cplx {
    auto r = v_roots(cplx(y, 0), cplx(-t, 0));
    return iv < r.size() ? r[iv] : cplx(NAN, NAN);
  };
  for (std::size_t iu = 0; iu < 2; ++iu) {
    for (std::size_t iv = 0; iv < 2; ++iv) {
      double Fp = 0, tp = 0;
      bool have = false;
      for (int k = 0; k < opt.nt_scan; ++k) {
        double t = opt.t_lo + (opt.t_hi - opt.t_lo) * k / (opt.nt_scan - 1);
        cplx u = u_at(t, iu), v = v_at(t, iv);
        if (!std::isfinite(u.real()) || !std::isfinite(v.real())) {
          have = false;
          continue;
        }
        double F = std::abs(u) - std::abs(v);
        if (have && (F == 0.0 || Fp * F < 0)) {
          double lo = tp, hi = t, flo = Fp;
          for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            cplx um = u_at(mid, iu), vm = v_at(mid, iv);
            double fm = std::abs(um) - std::abs(vm);
            if (flo * fm <= 0)
              hi = mid;
            else {
              lo = mid;
              flo = fm;
            }
          }
          double tr = 0.5 * (lo + hi);
          cplx u0 = u_at(tr, iu), v0 = v_at(tr, iv);
          QuaternionPoint q;
          q.t = tr;
          q.g = cplx(u0.real(), -v0.real());
          q.c2 = std::norm(u0) - u0.real() * u0.real() - v0.real() * v0.real();
          q.inside = q.c2 > 0;
          out.push_back(q);
        }
        Fp = F;
        tp = t;
        have = true;
      }
    }
  }
  return out;
}

QuaternionPoint quaternion_point(cplx z, const RootProvider& u_roots,
                                 const RootProvider& v_roots, const QuaternionPoint* prev,
                                 const QfaOptions& opt) {
  auto cands = quaternion_candidates(z, u_roots, v_roots, opt);
  QuaternionPoint best;
  if (cands.empty()) return best;
  if (prev && prev->t >= 0) {
    double dbest = 1e300;
    for (auto& c : cands) {
      double d = std::abs(c.t - prev->t) + std::abs(c.g - prev->g);
      if (d < dbest) {
        dbest = d;
        best = c;
      }
    }
  } else {
    best = cands.front();
    for (auto& c : cands)
      if (c.c2 > best.c2) best = c;
  }
  return best;
}

std::vector<cplx> quaternion_borderline(const RootProvider& u_roots,
                                        const RootProvider& v_roots, cplx center,
                                        double r_max, int nrays, const QfaOptions& opt) {
  std::vector<cplx> pts;
  pts.reserve(nrays);
  for (int k = 0; k < nrays; ++k) {
    double th = 2.0 * kPi * k / nrays;
    cplx dir = std::exp(cplx(0, th));
    // continuation outward from the center
    QuaternionPoint prev;
    double r_in = 0, r_out = -1;
    const int nstep = 80;
    for (int i = 0; i <= nstep; ++i) {
      double rr = r_max * i / nstep;
      QuaternionPoint q = quaternion_point(center + rr * dir, u_roots, v_roots,
                                           prev.t >= 0 ? &prev : nullptr, opt);
      if (q.t >= 0) prev = q;
      if (q.t >= 0 && q.c2 > 0)
        r_in = rr;
      else {
        r_out = rr;
        if (i > 0) break;
      }
    }
    if (r_out < 0) continue;  // never left the domain within r_max
    // bisect c2 = 0 between r_in and r_out
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (r_in + r_out);
      QuaternionPoint q =
          quaternion_point(center + mid * dir, u_roots, v_roots, &prev, opt);
      if (q.t >= 0 && q.c2 > 0) {
        r_in = mid;
        prev = q;
      } else
        r_out = mid;
    }
    pts.push_back(center + 0.5 * (r_in + r_out) * dir);
  }
  return pts;
}

std::vector<double> tricomi_density(const std::function<double(double)>& dV, double a,
                                    double b, const std::vector<double>& lambdas, int nodes) {
  std::vector<double> tk, wk;
  special::gauss_chebyshev2(nodes, tk, wk);
  const double m = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<double> dv(nodes);
  for (int k = 0; k < nodes; ++k) dv[k] = dV(m + h * tk[k]);
  std::vector<double> out(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const double lam = lambdas[j];
    const double tau = (lam - m) / h;
    if (tau <= -1.0 || tau >= 1.0) {
      out[j] = 0;
      continue;
    }
    double pv = 0;
    for (int k = 0; k < nodes; ++k) pv += wk[k] * dv[k] / (tk[k] - tau);
    pv *= h;
    double val = (kPi - pv) / (kPi * kPi * h * std::sqrt(std::max(1e-300, 1.0 - tau * tau)));
    out[j] = val;
    if (val < -1e-6)
      throw NumericalFailure("tricomi_density: negative density (wrong support)");
  }
  return out;
}

}  // namespace erm::freeprob
