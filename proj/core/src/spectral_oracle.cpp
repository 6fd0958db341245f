#include <erm/lapack.hpp>
#include <erm/spectral_oracle.hpp>

#include <algorithm>
#include <cmath>

namespace erm::oracle {

namespace {
SpectralSample from_real_eigs(std::vector<double>&& w, CMatrix&& vecs, bool want_vectors) {
  SpectralSample s;
  s.eigenvalues.assign(w.begin(), w.end());
  if (want_vectors) s.right_vectors = std::move(vecs);
  return s;
}

bool entries_real(const CMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}
}  // namespace

SpectralSample eig_hermitian(const CMatrix& m, bool want_vectors) {
  if (!matrix::check_hermitian(m, 1e-10))
    throw std::invalid_argument("eig_hermitian: matrix fails the hermiticity check");
  std::vector<double> w;
  CMatrix vecs;
  if (entries_real(m))
    lapack::eig_symmetric(m, w, want_vectors ? &vecs : nullptr);
  else
    lapack::eig_hermitian(m, w, want_vectors ? &vecs : nullptr);
  return from_real_eigs(std::move(w), std::move(vecs), want_vectors);
}

SpectralSample eig_hermitian(const matrix::ErmMatrix& m, bool want_vectors) {
  return eig_hermitian(m.entries, want_vectors);
}

SpectralSample eig_general(CMatrix&& m, bool want_vectors, bool want_left_vectors) {
  SpectralSample s;
  CMatrix right;
  lapack::eig_general(std::move(m), s.eigenvalues, want_vectors ? &right : nullptr);
  if (want_vectors) {
    if (want_left_vectors) {
      // columns of V are right vectors; rows of V^{-1} are the matching left
      // vectors with <L_n|R_m> = delta exactly
      const std::size_t n = right.rows();
      CMatrix V(n, n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) V(i, k) = right(k, i);
      CMatrix I(n, n);
      for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
      try {
        CMatrix Vinv = lapack::solve(std::move(V), I);
        CMatrix left(n, n);
        // <L_n| is row n of V^{-1}; store |L_n> = conj of that row
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t i = 0; i < n; ++i) left(k, i) = std::conj(Vinv(k, i));
        s.left_vectors = std::move(left);
      } catch (const NumericalFailure&) {
        s.vectors_reliable = false;  // defective within tolerance
      }
    }
    s.right_vectors = std::move(right);
  }
  return s;
}

std::vector<double> compute_ipr(const CMatrix& right_vectors) {
  const std::size_t n = right_vectors.rows();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s2 = 0, s4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double a2 = std::norm(right_vectors(k, i));
      s2 += a2;
      s4 += a2 * a2;
    }
    if (s2 <= 0) throw NumericalFailure("compute_ipr: zero-norm eigenvector");
    out[k] = s4 / (s2 * s2);
  }
  return out;
}

double trace_residual(const SpectralSample& s, const CMatrix& m) {
  cplx tr = 0, se = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
  for (auto v : s.eigenvalues) se += v;
  double scale = std::max(1.0, std::abs(tr));
  return std::abs(tr - se) / scale;
}

}  // namespace erm::oracle
