#pragma once

#include <erm/types.hpp>

namespace erm::lapack {

// Real symmetric eigenproblem (dsyevd); a is row-major n x n taken as real
// parts. Ascending eigenvalues; vectors (rows of `vectors`) optional.
void eig_symmetric(const CMatrix& a, std::vector<double>& eigenvalues, CMatrix* vectors);

// Hermitian eigenproblem (zheevd). Ascending eigenvalues.
void eig_hermitian(const CMatrix& a, std::vector<double>& eigenvalues, CMatrix* vectors);

// General complex eigenproblem (zgeev). Consumes `a`. If `right` is non-null
// it receives right eigenvectors as rows.
void eig_general(CMatrix&& a, std::vector<cplx>& eigenvalues, CMatrix* right);

// c = alpha * op(a) * op(b), row-major, op in {'n','c','t'}
void zgemm(char opa, char opb, cplx alpha, const CMatrix& a, const CMatrix& b, CMatrix& c);

// x = a^{-1} b via zgesv; a consumed
CMatrix solve(CMatrix&& a, const CMatrix& b);

void set_blas_threads(int n);

}  // namespace erm::lapack
