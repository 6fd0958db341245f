#include <erm/lapack.hpp>
#include <erm/matrix_build.hpp>

#include <cmath>

namespace erm::matrix {

using geometry::KernelSpec;
using geometry::PointCloud;
using geometry::Rng;

bool check_hermitian(const CMatrix& a, double tol) {
  const std::size_t n = a.rows();
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
  scale = std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale) return false;
  return true;
}

ErmMatrix build_erm(const PointCloud& cloud, const KernelSpec& kernel, int u,
                    const PointCloud* second_cloud) {
  const std::size_t n = cloud.size();
  if (n == 0) throw std::invalid_argument("build_erm: empty cloud");
  if (u != 0 && u != 1) throw std::invalid_argument("build_erm: u must be 0 or 1");
  const bool composite = kernel.family == KernelSpec::Family::cosc_plus_i_sinc;
  if (composite) {
    if (!second_cloud || second_cloud->size() != n)
      throw std::invalid_argument("cosc_plus_i_sinc needs a second cloud of equal size");
    if (u != 0) throw std::invalid_argument("cosc_plus_i_sinc is defined at u = 0");
  }

  ErmMatrix out;
  out.kernel = kernel;
  out.u = u;
  out.entries = CMatrix(n, n);
  CMatrix& A = out.entries;

  // pair separations below this fraction of the kernel scale make the
  // oscillatory kernels blow up; that's physical (proximity resonance) down to
  // zero, where we must refuse rather than clamp
  const double rmin = 1e-12 / std::max(kernel.scale, 1e-300);

  auto fill = [&](const PointCloud& c, const KernelSpec& k, bool imag_part) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec3 d = c.points[i] - c.points[j];
        if (k.zero_diagonal && d.norm() < rmin)
          throw DegenerateGeometry("coincident points for a zero-diagonal kernel");
        cplx v = geometry::kernel_eval(k, d);
        if (imag_part) v *= cplx(0, 1);
        A(i, j) += v;
        A(j, i) += v;
      }
    }
  };

  if (composite) {
    fill(cloud, KernelSpec::cosc(kernel.scale), false);
    KernelSpec s = KernelSpec::sinc(kernel.scale);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec3 d = second_cloud->points[i] - second_cloud->points[j];
        cplx v = cplx(0, 1) * geometry::kernel_eval(s, d);
        A(i, j) += v;
        A(j, i) += v;
      }
    // diagonal of C is 0, of i(S - I) is 0
  } else {
    fill(cloud, kernel, false);
    if (u == 0) {
      if (!kernel.zero_diagonal) {
        cplx f0 = geometry::kernel_eval(kernel, Vec3{});
        for (std::size_t i = 0; i < n; ++i) A(i, i) = f0;
      }
    } else {
      // A_ii = -sum_{j != i} A_ij ; with u=1 the diagonal term of f cancels
      for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) s += A(i, j);
        A(i, i) = -s;
      }
    }
  }

  out.hermitian = check_hermitian(A);
  return out;
}

CMatrix build_reference(const ReferenceEnsemble& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw std::invalid_argument("build_reference: n must be >= 2");
  Rng rng(spec.seed);
  CMatrix A(n, n);
  using F = ReferenceEnsemble::Family;
  switch (spec.family) {
    case F::goe: {
      // <A_ij A_kl> = (d_il d_jk + d_ik d_jl)/N: off-diag var 1/N, diag var 2/N
      const double s = 1.0 / std::sqrt(double(n));
      for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = std::sqrt(2.0) * s * rng.normal();
        for (std::size_t j = i + 1; j < n; ++j) {
          double v = s * rng.normal();
          A(i, j) = v;
          A(j, i) = v;
        }
      }
      break;
    }
    case F::gue: {
      // <A_ij A_kl> = d_il d_jk / N: off-diag complex var 1/N, diag real var 1/N
      const double s = 1.0 / std::sqrt(2.0 * double(n));
      for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = rng.normal() / std::sqrt(double(n));
        for (std::size_t j = i + 1; j < n; ++j) {
          cplx v = s * rng.complex_normal();
          A(i, j) = v;
          A(j, i) = std::conj(v);
        }
      }
      break;
    }
    case F::complex_ginibre: {
      const double s = 1.0 / std::sqrt(2.0 * double(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = s * rng.complex_normal();
      break;
    }
    case F::wishart: {
      if (spec.m < 1) throw std::invalid_argument("wishart: m must be >= 1");
      const std::size_t m = spec.m;
      const double s = 1.0 / std::sqrt(2.0 * double(n));
      CMatrix H(n, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) H(i, a) = s * rng.complex_normal();
      lapack::zgemm('n', 'c', 1.0, H, H, A);
      break;
    }
  }
  return A;
}

CMatrix build_surrogate(const std::vector<cplx>& mu, std::size_t n, std::uint64_t seed) {
  const std::size_t m = mu.size();
  Rng rng(seed);
  const double s = 1.0 / std::sqrt(2.0 * double(n));
  CMatrix H(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) H(i, a) = s * rng.complex_normal();
  CMatrix B = H;  // B = H diag(mu)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) B(i, a) *= mu[a];
  CMatrix A;
  lapack::zgemm('n', 'c', 1.0, B, H, A);
  return A;
}

}  // namespace erm::matrix
