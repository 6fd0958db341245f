#pragma once

#include <erm/geometry.hpp>
#include <erm/types.hpp>

#include <optional>

namespace erm::matrix {

struct ErmMatrix {
  CMatrix entries;
  geometry::KernelSpec kernel;
  int u = 0;
  bool hermitian = false;  // verified after construction, not assumed
  std::size_t n() const { return entries.rows(); }
};

struct ReferenceEnsemble {
  enum class Family { goe, gue, complex_ginibre, wishart };
  Family family = Family::goe;
  std::size_t n = 0;
  std::size_t m = 0;  // Wishart only; aspect ratio c = n/m
  std::uint64_t seed = 0;
  double aspect_ratio() const { return double(n) / double(m); }
};

// A_ij = f(r_i - r_j) - u delta_ij sum_k f(r_i - r_k)  (u = 0 or 1).
// For cosc_plus_i_sinc a second independent cloud of equal size is required:
// A = C(cloud) + i (S(cloud2) - I).
ErmMatrix build_erm(const geometry::PointCloud& cloud, const geometry::KernelSpec& kernel,
                    int u, const geometry::PointCloud* second_cloud = nullptr);

CMatrix build_reference(const ReferenceEnsemble& spec);

// H diag(mu) H^dagger with i.i.d. complex Gaussian H (variance 1/n); mu comes
// degeneracy-expanded. Independent-H surrogate for the trace equations.
CMatrix build_surrogate(const std::vector<cplx>& mu_expanded, std::size_t n, std::uint64_t seed);

bool check_hermitian(const CMatrix& a, double tol = 1e-12);

}  // namespace erm::matrix
