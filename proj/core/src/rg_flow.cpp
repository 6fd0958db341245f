#include <erm/rg.hpp>

#include <algorithm>
#include <cmath>

namespace erm::herm {

RgResult rg_flow(const geometry::PointCloud& cloud, const geometry::KernelSpec& kernel) {
  const std::size_t n = cloud.size();
  if (n < 2) throw std::invalid_argument("rg_flow: need at least 2 points");
  if (!kernel.is_real()) throw std::invalid_argument("rg_flow: positive decaying kernel required");

  // dense spring matrix (off-diagonal couplings only)
  std::vector<double> A(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = geometry::kernel_eval(kernel, cloud.points[i] - cloud.points[j]).real();
      A[i * n + j] = v;
      A[j * n + i] = v;
    }

  std::vector<double> mass(n, 1.0);
  std::vector<bool> alive(n, true);
  RgResult out;
  out.lambdas.reserve(n - 1);
  out.cluster_mass.reserve(n - 1);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;

  double prev_w2 = std::numeric_limits<double>::infinity();
  std::size_t nalive = n;
  while (nalive > 1) {
    // stiffest pair; ties resolved to the lowest index pair
    double best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      const double minv_a = 1.0 / mass[a];
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!alive[b]) continue;
        double w2 = A[a * n + b] * (minv_a + 1.0 / mass[b]);
        if (w2 > best + 1e-12 * std::max(1.0, best)) {
          best = w2;
          bi = a;
          bj = b;
        }
      }
    }
    if (best > prev_w2 * (1.0 + 1e-12)) ++out.frequency_violations;
    prev_w2 = best;
    out.lambdas.push_back(-best);
    // merge bj into bi
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c] || c == bi || c == bj) continue;
      A[bi * n + c] += A[bj * n + c];
      A[c * n + bi] = A[bi * n + c];
    }
    mass[bi] += mass[bj];
    out.cluster_mass.push_back(mass[bi]);
    alive[bj] = false;
    --nalive;
  }
  // flow records stiffest-first; expose ascending |Lambda| with the terminal
  // zero mode (rigid translation of the last surviving cluster) in front
  std::reverse(out.lambdas.begin(), out.lambdas.end());
  std::reverse(out.cluster_mass.begin(), out.cluster_mass.end());
  out.lambdas.insert(out.lambdas.begin(), 0.0);
  out.cluster_mass.insert(out.cluster_mass.begin(), double(n));
  return out;
}

}  // namespace erm::herm
