#include <erm/nonherm.hpp>
#include <erm/special.hpp>

#include <algorithm>
#include <cmath>

namespace erm::nonherm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// point-in-polygon, even-odd rule
bool in_polygon(const std::vector<cplx>& poly, cplx z) {
  bool in = false;
  const double x = z.real(), y = z.imag();
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    double xi = poly[i].real(), yi = poly[i].imag();
    double xj = poly[j].real(), yj = poly[j].imag();
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
  }
  return in;
}

}  // namespace

bool Borderline::contains(cplx z) const {
  // even-odd across all components: outer minus holes
  int count = 0;
  for (const auto& c : components)
    if (c.size() >= 3 && in_polygon(c, z)) ++count;
  return (count % 2) == 1;
}

double Borderline::max_im() const {
  double m = -1e300;
  for (const auto& c : components)
    for (auto z : c) m = std::max(m, z.imag());
  return m;
}

Borderline girko_law(double gamma, int npts) {
  if (!(gamma > 0)) throw std::invalid_argument("girko_law: gamma > 0");
  Borderline b;
  b.method = "girko";
  b.gamma = gamma;
  std::vector<cplx> c;
  const double r = std::sqrt(2.0 * gamma);
  for (int k = 0; k < npts; ++k)
    c.push_back(r * std::exp(cplx(0, 2.0 * kPi * k / npts)));
  b.components.push_back(std::move(c));
  return b;
}

double girko_density(double gamma) { return 1.0 / (2.0 * kPi * gamma); }

Borderline borderline_low_density(double gamma, int nrays) {
  if (!(gamma > 0)) throw std::invalid_argument("borderline_low_density: gamma > 0");
  Borderline b;
  b.method = "contour3";
  b.gamma = gamma;
  std::vector<cplx> pts;
  bool open = false;
  for (int k = 0; k < nrays; ++k) {
    double th = 2.0 * kPi * k / nrays;
    cplx dir = std::exp(cplx(0, th));
    auto F = [&](double r) {
      cplx z = r * dir;
      double arg = -8.0 * gamma * z.imag() / (3.0 * r * r);
      return r * r - 2.0 * gamma * special::pair_h(cplx(arg, 0)).real();
    };
    // F < 0 near 0 (h(0)=1 > 0 term dominates), > 0 far out
    double rlo = 1e-6, rhi = std::sqrt(2.0 * gamma);
    while (F(rhi) < 0 && rhi < 1e6) rhi *= 1.6;
    if (F(rhi) < 0) {
      open = true;
      continue;
    }
    double flo = F(rlo);
    if (flo > 0) {  // no crossing on this ray (can happen at the bottom wall)
      open = true;
      continue;
    }
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (rlo + rhi);
      double f = F(mid);
      if (flo * f <= 0)
        rhi = mid;
      else {
        rlo = mid;
        flo = f;
      }
    }
    pts.push_back(0.5 * (rlo + rhi) * dir);
  }
  b.components.push_back(std::move(pts));
  b.closed = !open;
  return b;
}

Borderline borderline_diffusion(double gamma, int nrays) {
  if (!(gamma > 0)) throw std::invalid_argument("borderline_diffusion: gamma > 0");
  Borderline b;
  b.method = "diffusion";
  b.gamma = gamma;
  std::vector<cplx> pts;
  bool open = false;
  for (int k = 0; k < nrays; ++k) {
    double th = 2.0 * kPi * k / nrays;
    cplx dir = std::exp(cplx(0, th));
    auto F = [&](double r) -> double {
      cplx z = r * dir;
      if (z.imag() <= -1.0) return 1e9;  // the curve lives above Im = -1
      double m2 = r * r;
      return m2 - 8.0 * gamma / (std::sqrt(3.0) * kPi) * std::sqrt(1.0 + z.imag()) *
                      (1.0 + m2 / (m2 + 4.0 * gamma));
    };
    double rlo = 1e-6, rhi = std::sqrt(2.0 * gamma);
    while (F(rhi) < 0 && rhi < 1e6) rhi *= 1.6;
    double flo = F(rlo);
    if (flo > 0 || F(rhi) < 0) {
      open = true;
      continue;
    }
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (rlo + rhi);
      double f = F(mid);
      if (flo * f <= 0)
        rhi = mid;
      else {
        rlo = mid;
        flo = f;
      }
    }
    pts.push_back(0.5 * (rlo + rhi) * dir);
  }
  b.components.push_back(std::move(pts));
  b.closed = !open;
  return b;
}

namespace {
cplx t3_map(cplx g, const GreenTSpectrum& spec) {
  cplx s = 0;
  for (const auto& ch : spec.channels) {
    cplx acc = 0;
    for (std::size_t p = 0; p < ch.mu.size(); ++p)
      acc += ch.mu[p] * ch.mu[p] / (1.0 - g * ch.mu[p]);
    s += double(2 * ch.l + 1) * acc;
  }
  return 1.0 / g + g * s / spec.t.n_points;
}

double t4_sum(cplx g, const GreenTSpectrum& spec) {
  cplx s = 0;
  for (const auto& ch : spec.channels) {
    const std::size_t P = ch.mu.size();
    // w_p = mu_p / (1 - g mu_p); bilinear form conj(w) C w
    static thread_local std::vector<cplx> w;
    w.resize(P);
    for (std::size_t p = 0; p < P; ++p) w[p] = ch.mu[p] / (1.0 - g * ch.mu[p]);
    cplx acc = 0;
    for (std::size_t a = 0; a < P; ++a) {
      cplx wa = std::conj(w[a]);
      const cplx* row = &ch.C[a * P];
      cplx inner = 0;
      for (std::size_t b = 0; b < P; ++b) inner += row[b] * w[b];
      acc += wa * inner;
    }
    s += double(2 * ch.l + 1) * acc;
  }
  return s.real() / spec.t.n_points;
}
}  // namespace

Borderline borderline_exact(const GreenModel& model, const GreenTSpectrum& spec, int nrays) {
  Borderline b;
  b.method = "exact_recipe";
  b.gamma = model.gamma;
  b.rho_lambda3 = model.rho_lambda3;
  b.k0R = model.k0R;

  // crossings of D(r) = 1/r^2 - t4(r e^{i th}) along g-plane rays; odd counts,
  // first crossing belongs to the outer z-contour, extra pairs to holes
  std::vector<std::vector<double>> cross(nrays);  // radii per ray
  for (int k = 0; k < nrays; ++k) {
    double th = 2.0 * kPi * k / nrays;
    cplx dir = std::exp(cplx(0, th));
    auto D = [&](double r) { return 1.0 / (r * r) - t4_sum(r * dir, spec); };
    const int nr = 160;
    const double lrlo = std::log(1e-3 / std::sqrt(model.gamma)),
                 lrhi = std::log(3e2 / std::sqrt(2.0 * model.gamma));
    double prev = 0;
    bool have = false;
    for (int i = 0; i <= nr; ++i) {
      double r = std::exp(lrlo + (lrhi - lrlo) * i / nr);
      double v = D(r);
      if (!std::isfinite(v)) {
        have = false;
        continue;
      }
      if (have && prev * v < 0) {
        double lo = std::exp(lrlo + (lrhi - lrlo) * (i - 1) / nr), hi = r, flo = prev;
        for (int it = 0; it < 70; ++it) {
          double mid = std::sqrt(lo * hi);
          double f = D(mid);
          if (flo * f <= 0)
            hi = mid;
          else {
            lo = mid;
            flo = f;
          }
        }
        cross[k].push_back(std::sqrt(lo * hi));
      }
      prev = v;
      have = true;
    }
  }

  // outer contour: first crossing on every ray that has one
  std::vector<cplx> outer;
  int max_extra = 0;
  for (int k = 0; k < nrays; ++k) {
    if (cross[k].empty()) continue;
    double th = 2.0 * kPi * k / nrays;
    outer.push_back(t3_map(cross[k][0] * std::exp(cplx(0, th)), spec));
    max_extra = std::max(max_extra, int(cross[k].size()) - 1);
  }
  b.components.push_back(std::move(outer));

  // hole walls: pair crossings (1,2), (3,4), ... chained down one wall and
  // back the other to close the loop
  for (int pair = 1; pair + 1 <= max_extra; pair += 2) {
    std::vector<cplx> down, up;
    for (int k = 0; k < nrays; ++k) {
      double th = 2.0 * kPi * k / nrays;
      if (int(cross[k].size()) > pair)
        down.push_back(t3_map(cross[k][pair] * std::exp(cplx(0, th)), spec));
      if (int(cross[k].size()) > pair + 1)
        up.push_back(t3_map(cross[k][pair + 1] * std::exp(cplx(0, th)), spec));
    }
    if (down.empty() && up.empty()) continue;
    std::vector<cplx> loop = down;
    loop.insert(loop.end(), up.rbegin(), up.rend());
    b.components.push_back(std::move(loop));
  }
  return b;
}

Borderline borderline_exact(const GreenModel& model, int nrays) {
  auto spec = green_t_spectrum(model.k0R, model.rho_lambda3);
  return borderline_exact(model, spec, nrays);
}

double max_im_lambda(const Borderline& b) { return b.max_im(); }

SubradiantBranch subradiant_branch(double k0R, const std::vector<double>& abs_grid) {
  if (!(k0R > 0)) throw std::invalid_argument("subradiant_branch: k0R > 0");
  SubradiantBranch out;
  out.abs_min = 1.0 / (2.0 * k0R);
  out.abs_lambda = abs_grid;
  auto s = [](double x) { return 1.0 - 1.5 * x + 0.5 * x * x * x; };
  for (double L : abs_grid) {
    double x = 1.0 / (2.0 * k0R * L);
    double w = (L >= out.abs_min) ? 3.0 / std::pow(k0R, 3) / (L * L) * s(x) : 0.0;
    out.weight.push_back(std::max(w, 0.0));
  }
  return out;
}

bool near_spiral(cplx lambda, double rel_tol) {
  double a = std::arg(lambda);
  for (double sgn : {1.0, -1.0}) {
    double arg = sgn * a;
    if (arg <= 1e-9) continue;
    double pred = 1.0 / arg;
    if (std::abs(std::abs(lambda) - pred) < rel_tol * pred) return true;
  }
  return false;
}

std::vector<bool> spiral_mask(const std::vector<cplx>& ev, double rel_tol) {
  std::vector<bool> m(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) m[i] = near_spiral(ev[i], rel_tol);
  return m;
}

double capture_fraction(const Borderline& b, const std::vector<cplx>& ev,
                        const std::vector<bool>& exclude) {
  std::size_t kept = 0, inside = 0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (!exclude.empty() && exclude[i]) continue;
    ++kept;
    if (b.contains(ev[i])) ++inside;
  }
  return kept ? double(inside) / double(kept) : 0.0;
}

double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  auto directed = [](const std::vector<cplx>& p, const std::vector<cplx>& q) {
    double worst = 0;
    for (auto z : p) {
      double best = 1e300;
      for (auto w : q) best = std::min(best, std::abs(z - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace erm::nonherm
