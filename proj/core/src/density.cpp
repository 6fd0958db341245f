#include <erm/density.hpp>

#include <algorithm>
#include <cmath>

namespace erm::oracle {

namespace {
void auto_range(const std::vector<double>& v, double& lo, double& hi) {
  auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  double pad = 0.01 * std::max(*mx - *mn, 1e-12);
  lo = *mn - pad;
  hi = *mx + pad;
}
}  // namespace

DensityEstimate histogram_1d(const std::vector<double>& values, Binning bins,
                             std::size_t realizations) {
  if (values.empty()) throw std::invalid_argument("histogram_1d: empty sample");
  double lo = bins.lo, hi = bins.hi;
  if (lo == hi) auto_range(values, lo, hi);
  const std::size_t nb = bins.nbins;
  const double w = (hi - lo) / nb;
  DensityEstimate d;
  d.centers_re.resize(nb);
  for (std::size_t i = 0; i < nb; ++i) d.centers_re[i] = lo + (i + 0.5) * w;
  std::vector<std::size_t> counts(nb, 0);
  std::size_t used = 0;
  for (double v : values) {
    if (v < lo || v >= hi) continue;
    ++counts[std::size_t((v - lo) / w)];
    ++used;
  }
  d.p.resize(nb);
  d.stderr_p.resize(nb);
  const double norm = double(values.size()) * w;  // pooled-count normalization
  for (std::size_t i = 0; i < nb; ++i) {
    d.p[i] = counts[i] / norm;
    d.stderr_p[i] = std::sqrt(double(counts[i])) / norm;
  }
  d.cell_measure = w;
  d.realizations = realizations;
  d.total_count = used;
  return d;
}

DensityEstimate histogram_2d(const std::vector<cplx>& values, Binning bins,
                             std::size_t realizations) {
  if (values.empty()) throw std::invalid_argument("histogram_2d: empty sample");
  if (bins.nbins_im == 0) throw std::invalid_argument("histogram_2d: nbins_im required");
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  double lo = bins.lo, hi = bins.hi, loi = bins.lo_im, hii = bins.hi_im;
  if (lo == hi) auto_range(re, lo, hi);
  if (loi == hii) auto_range(im, loi, hii);
  const std::size_t nx = bins.nbins, ny = bins.nbins_im;
  const double wx = (hi - lo) / nx, wy = (hii - loi) / ny;
  DensityEstimate d;
  d.centers_re.resize(nx);
  d.centers_im.resize(ny);
  for (std::size_t i = 0; i < nx; ++i) d.centers_re[i] = lo + (i + 0.5) * wx;
  for (std::size_t j = 0; j < ny; ++j) d.centers_im[j] = loi + (j + 0.5) * wy;
  std::vector<std::size_t> counts(nx * ny, 0);
  std::size_t used = 0;
  for (auto z : values) {
    if (z.real() < lo || z.real() >= hi || z.imag() < loi || z.imag() >= hii) continue;
    std::size_t ix = std::size_t((z.real() - lo) / wx);
    std::size_t iy = std::size_t((z.imag() - loi) / wy);
    ++counts[iy * nx + ix];
    ++used;
  }
  const double norm = double(values.size()) * wx * wy;
  d.p.resize(nx * ny);
  d.stderr_p.resize(nx * ny);
  for (std::size_t k = 0; k < nx * ny; ++k) {
    d.p[k] = counts[k] / norm;
    d.stderr_p[k] = std::sqrt(double(counts[k])) / norm;
  }
  d.cell_measure = wx * wy;
  d.realizations = realizations;
  d.total_count = used;
  return d;
}

std::vector<double> cumulative_above(const std::vector<double>& sorted_vals,
                                     const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto it = std::upper_bound(sorted_vals.begin(), sorted_vals.end(), grid[i]);
    out[i] = double(sorted_vals.end() - it) / double(sorted_vals.size());
  }
  return out;
}

Moments moments(const std::vector<cplx>& ev, int order) {
  if (ev.empty()) throw std::invalid_argument("moments: empty sample");
  Moments m;
  m.raw.assign(order, 0.0);
  for (auto v : ev) {
    cplx p = 1;
    for (int k = 0; k < order; ++k) {
      p *= v;
      m.raw[k] += p.real();
    }
    m.abs2 += std::norm(v);
  }
  for (auto& r : m.raw) r /= double(ev.size());
  m.abs2 /= double(ev.size());
  return m;
}

double ks_to_cdf(std::vector<double> s, const std::function<double(double)>& cdf) {
  if (s.empty()) throw std::invalid_argument("ks_to_cdf: empty sample");
  std::sort(s.begin(), s.end());
  const double n = double(s.size());
  double ks = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double F = cdf(s[i]);
    ks = std::max(ks, std::abs((i + 1) / n - F));
    ks = std::max(ks, std::abs(i / n - F));
  }
  return ks;
}

double ks_to_density_table(std::vector<double> sample, const std::vector<double>& grid,
                           const std::vector<double>& p, double atom_weight,
                           double atom_location) {
  // trapezoid CDF of the table, then renormalize total mass (incl. atom) to 1
  std::vector<double> cdf(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (p[i] + p[i - 1]) * (grid[i] - grid[i - 1]);
  double bulk = cdf.back();
  double total = bulk + atom_weight;
  auto F = [&](double x) {
    double c = 0;
    if (x >= atom_location) c += atom_weight;
    if (x <= grid.front())
      c += 0;
    else if (x >= grid.back())
      c += bulk;
    else {
      auto it = std::upper_bound(grid.begin(), grid.end(), x);
      std::size_t i = std::size_t(it - grid.begin());
      double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
      c += cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
    }
    return c / total;
  };
  return ks_to_cdf(std::move(sample), F);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    ks = std::max(ks, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return ks;
}

}  // namespace erm::oracle
