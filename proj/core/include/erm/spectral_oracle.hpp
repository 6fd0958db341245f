#pragma once

#include <erm/matrix_build.hpp>
#include <erm/types.hpp>

#include <map>
#include <optional>

namespace erm::oracle {

struct SpectralSample {
  std::vector<cplx> eigenvalues;
  std::optional<CMatrix> right_vectors;  // rows are eigenvectors
  std::optional<CMatrix> left_vectors;   // rows; <L_n|R_m> = delta_nm
  std::vector<double> ipr;               // filled by compute_ipr
  bool vectors_reliable = true;
  std::map<std::string, double> meta;
  std::size_t size() const { return eigenvalues.size(); }
};

// Hermitian path: dsyevd when entries are real, zheevd otherwise. Eigenvalues
// ascending, real. Input must pass the hermiticity check.
SpectralSample eig_hermitian(const matrix::ErmMatrix& m, bool want_vectors = false);
SpectralSample eig_hermitian(const CMatrix& m, bool want_vectors = false);

// General complex path (zgeev); consumes the matrix. Left vectors, when
// requested, come from inverting the right-vector matrix, so biorthogonality
// holds to solver precision.
SpectralSample eig_general(CMatrix&& m, bool want_vectors = false,
                           bool want_left_vectors = false);

// IPR_n = sum_i |R_n(i)|^4 / (sum_i |R_n(i)|^2)^2
std::vector<double> compute_ipr(const CMatrix& right_vectors);

double trace_residual(const SpectralSample& s, const CMatrix& m);

}  // namespace erm::oracle
