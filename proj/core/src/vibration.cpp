#include <erm/vibration.hpp>

#include <algorithm>
#include <cmath>

namespace erm::herm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kTp32 = std::pow(2.0 * kPi, 1.5);

// closed form of int_{|k-q|}^{k+q} du u (2pi)^3 (e^{-q^2/2} - e^{-u^2/2})^2
double inner_I(double k, double q) {
  const double lo = std::abs(k - q), hi = k + q;
  const double a2 = std::exp(-q * q), a1 = std::exp(-q * q / 2.0);
  auto F = [&](double u) {
    return a2 * u * u / 2.0 + 2.0 * a1 * std::exp(-u * u / 2.0) - std::exp(-u * u) / 2.0;
  };
  return std::pow(2.0 * kPi, 3) * (F(hi) - F(lo));
}

struct Grid {
  std::vector<double> q, w;
};

Grid make_grid(double rho, double om, double eps, const VibrationOptions& opt) {
  std::vector<double> q;
  q.reserve(opt.base_grid_lo + opt.base_grid_hi + 200);
  for (int i = 0; i < opt.base_grid_lo; ++i)
    q.push_back(1e-5 + (1.5 - 1e-5) * i / (opt.base_grid_lo - 1));
  for (int i = 1; i <= opt.base_grid_hi; ++i)
    q.push_back(1.5 + (opt.qmax - 1.5) * i / opt.base_grid_hi);
  const double x = om * om;
  if (x < rho * kTp32 * 0.999) {  // refine around the acoustic pole
    double qs = std::sqrt(-2.0 * std::log(1.0 - x / (rho * kTp32)));
    double dq = std::max(eps / (rho * kTp32 * std::max(qs, 1e-3)), 1e-9);
    for (int i = -40; i <= 40; ++i) {
      double v = qs + dq * i * 0.5;
      if (v > 1e-9 && v < opt.qmax) q.push_back(v);
    }
  }
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  Grid g;
  g.q = q;
  g.w.resize(q.size());
  for (std::size_t i = 1; i + 1 < q.size(); ++i) g.w[i] = 0.5 * (q[i + 1] - q[i - 1]);
  g.w.front() = 0.5 * (q[1] - q[0]);
  g.w.back() = 0.5 * (q[q.size() - 1] - q[q.size() - 2]);
  return g;
}

struct SolveOut {
  cplx g;                     // closure resolvent
  std::vector<cplx> gk;       // momentum-resolved
  std::vector<cplx> sigma_k;
  bool converged = true;
};

SolveOut solve_at(double rho, double om, double eps, const Grid& grid,
                  const VibrationOptions& opt) {
  const auto& q = grid.q;
  const auto& w = grid.w;
  const std::size_t nq = q.size();
  std::vector<double> II(nq * nq);
  for (std::size_t i = 0; i < nq; ++i)
    for (std::size_t j = 0; j < nq; ++j) II[i * nq + j] = inner_I(q[i], q[j]);

  const cplx z(om * om, eps);
  std::vector<double> epsk(nq);
  for (std::size_t i = 0; i < nq; ++i) epsk[i] = rho * kTp32 * (1.0 - std::exp(-q[i] * q[i] / 2));

  SolveOut out;
  out.gk.resize(nq);
  out.sigma_k.assign(nq, 0.0);
  for (std::size_t i = 0; i < nq; ++i) out.gk[i] = 1.0 / (z - epsk[i]);
  std::vector<cplx> rhs(nq), gn(nq);
  bool ok = false;
  for (int it = 0; it < opt.max_iter; ++it) {
    for (std::size_t j = 0; j < nq; ++j) rhs[j] = q[j] * out.gk[j] * w[j];
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < nq; ++i) {
      cplx acc = 0;
      const double* row = &II[i * nq];
      for (std::size_t j = 0; j < nq; ++j) acc += row[j] * rhs[j];
      cplx sig = rho / (4.0 * kPi * kPi * q[i]) * acc;
      out.sigma_k[i] = sig;
      cplx next = 1.0 / (z - epsk[i] - sig);
      gn[i] = (1.0 - opt.eta) * out.gk[i] + opt.eta * next;
      diff = std::max(diff, std::abs(gn[i] - out.gk[i]));
      scale = std::max(scale, std::abs(gn[i]));
    }
    out.gk.swap(gn);
    if (diff < opt.tol * std::max(1.0, scale)) {
      ok = true;
      break;
    }
  }
  out.converged = ok;

  // closure: A g^2 - C1 g + 1/rho = 0 with C1 = z/rho - (2pi)^{3/2} - B,
  // B = 4 pi int dq q^2 e^{-q^2} g_q
  const double A = std::pow(kPi, 1.5);
  cplx B = 0;
  for (std::size_t i = 0; i < nq; ++i) B += q[i] * q[i] * std::exp(-q[i] * q[i]) * out.gk[i] * w[i];
  B *= 4.0 * kPi;
  cplx C1 = z / rho - kTp32 - B;
  cplx disc = std::sqrt(C1 * C1 - 4.0 * A / rho);
  cplx g1 = (C1 + disc) / (2.0 * A), g2 = (C1 - disc) / (2.0 * A);
  bool ok1 = g1.imag() <= 1e-12, ok2 = g2.imag() <= 1e-12;
  if (ok1 && !ok2)
    out.g = g1;
  else if (ok2 && !ok1)
    out.g = g2;
  else
    out.g = std::abs(g1 * z - 1.0) < std::abs(g2 * z - 1.0) ? g1 : g2;
  return out;
}
}  // namespace

double sound_speed(double rho_a3) { return std::sqrt(rho_a3 * kTp32 / 2.0); }

VibrationResult vibrational_solver(double rho_a3, const std::vector<double>& omega_grid,
                                   const std::vector<double>& k_list,
                                   const VibrationOptions& opt) {
  VibrationResult out;
  out.omega = omega_grid;
  out.k_list = k_list;
  out.dsf.assign(k_list.size(), std::vector<double>(omega_grid.size(), 0.0));

  for (std::size_t oi = 0; oi < omega_grid.size(); ++oi) {
    const double om = omega_grid[oi];
    double e0 = opt.eps_scale * std::max(0.3, om * om);
    Grid grid = make_grid(rho_a3, om, e0, opt);
    SolveOut s1 = solve_at(rho_a3, om, e0, grid, opt);
    SolveOut s2 = solve_at(rho_a3, om, 0.5 * e0, grid, opt);
    out.converged = out.converged && s1.converged && s2.converged;
    double im_g = 2.0 * s2.g.imag() - s1.g.imag();  // Richardson toward eps -> 0
    im_g = std::min(im_g, 0.0);
    cplx g(0.5 * (s1.g.real() + s2.g.real()), im_g);
    out.g.push_back(g);
    double nu = -(2.0 * om / kPi) * im_g;
    out.dos.push_back(nu);
    out.reduced_dos.push_back(om > 0 ? nu / (om * om) : 0.0);
    // DSF at the requested k via the momentum-resolved solution
    for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
      double k = k_list[ki];
      auto it = std::lower_bound(grid.q.begin(), grid.q.end(), k);
      std::size_t idx = std::min<std::size_t>(it - grid.q.begin(), grid.q.size() - 1);
      double imgk = 2.0 * s2.gk[idx].imag() - s1.gk[idx].imag();
      out.dsf[ki][oi] = -(2.0 * k * k / (om * kPi)) * std::min(imgk, 0.0);
    }
  }

  // Brillouin linewidth Gamma(k) = Im sigma_k(om_k^2)/om_k at om_k = c k,
  // measured as a log-log slope over the k list
  if (k_list.size() >= 2) {
    const double c = sound_speed(rho_a3);
    std::vector<double> lnk, lng;
    out.gamma_k.resize(k_list.size());
    for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
      double k = k_list[ki];
      double om = c * k;
      double e0 = opt.eps_scale * std::max(0.3, om * om);
      Grid grid = make_grid(rho_a3, om, e0, opt);
      SolveOut s1 = solve_at(rho_a3, om, e0, grid, opt);
      SolveOut s2 = solve_at(rho_a3, om, 0.5 * e0, grid, opt);
      auto it = std::lower_bound(grid.q.begin(), grid.q.end(), k);
      std::size_t idx = std::min<std::size_t>(it - grid.q.begin(), grid.q.size() - 1);
      double imsig = 2.0 * s2.sigma_k[idx].imag() - s1.sigma_k[idx].imag();
      double gam = std::max(-imsig / std::max(om, 1e-12), 1e-300);
      out.gamma_k[ki] = gam;
      lnk.push_back(std::log(k));
      lng.push_back(std::log(gam));
    }
    // least squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lnk.size(); ++i) {
      sx += lnk[i];
      sy += lng[i];
      sxx += lnk[i] * lnk[i];
      sxy += lnk[i] * lng[i];
    }
    double n = double(lnk.size());
    out.gamma_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

}  // namespace erm::herm
