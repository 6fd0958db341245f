#include <erm/lapack.hpp>

#include <lapacke.h>

extern "C" {
void cblas_zgemm(int layout, int transa, int transb, int m, int n, int k, const void* alpha,
                 const void* a, int lda, const void* b, int ldb, const void* beta, void* c,
                 int ldc);
void openblas_set_num_threads(int);
}

namespace erm::lapack {

namespace {
// CblasRowMajor = 101; NoTrans = 111, Trans = 112, ConjTrans = 113
int cblas_op(char c) { return c == 'n' ? 111 : (c == 't' ? 112 : 113); }

bool is_symmetric(const CMatrix& a, double tol = 1e-12) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol * (1.0 + std::abs(a(i, j)))) return false;
  return true;
}
}  // namespace

void set_blas_threads(int n) { openblas_set_num_threads(n); }

void eig_symmetric(const CMatrix& a, std::vector<double>& w, CMatrix* vectors) {
  const lapack_int n = lapack_int(a.rows());
  std::vector<double> m(std::size_t(n) * n);
  for (lapack_int i = 0; i < n; ++i)
    for (lapack_int j = 0; j < n; ++j) m[std::size_t(i) * n + j] = a(i, j).real();
  w.resize(n);
  lapack_int info =
      LAPACKE_dsyevd(LAPACK_ROW_MAJOR, vectors ? 'V' : 'N', 'U', n, m.data(), n, w.data());
  if (info != 0) throw NumericalFailure("dsyevd failed, info=" + std::to_string(info));
  if (vectors) {
    *vectors = CMatrix(n, n);
    // eigenvectors come back in columns; expose eigenvector k as row k
    for (lapack_int k = 0; k < n; ++k)
      for (lapack_int i = 0; i < n; ++i) (*vectors)(k, i) = m[std::size_t(i) * n + k];
  }
}

void eig_hermitian(const CMatrix& a, std::vector<double>& w, CMatrix* vectors) {
  const lapack_int n = lapack_int(a.rows());
  std::vector<cplx> m(a.data(), a.data() + std::size_t(n) * n);
  w.resize(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, vectors ? 'V' : 'N', 'U', n,
                                   reinterpret_cast<lapack_complex_double*>(m.data()), n,
                                   w.data());
  if (info != 0) throw NumericalFailure("zheevd failed, info=" + std::to_string(info));
  if (vectors) {
    *vectors = CMatrix(n, n);
    for (lapack_int k = 0; k < n; ++k)
      for (lapack_int i = 0; i < n; ++i) (*vectors)(k, i) = m[std::size_t(i) * n + k];
  }
}

void eig_general(CMatrix&& a, std::vector<cplx>& w, CMatrix* right) {
  const lapack_int n = lapack_int(a.rows());
  w.resize(n);
  // The row-major buffer read column-major is A^T, which has the same
  // eigenvalues; that avoids LAPACKE's internal full-matrix copy. When right
  // eigenvectors are wanted the buffer must hold A itself column-major, so
  // transpose unless the matrix is symmetric (every single-kernel ERM is).
  if (right && !is_symmetric(a)) a.transpose_inplace();
  CMatrix vecs;
  if (right) vecs = CMatrix(n, n);
  auto* ap = reinterpret_cast<lapack_complex_double*>(a.data());
  auto* wp = reinterpret_cast<lapack_complex_double*>(w.data());
  auto* vp = right ? reinterpret_cast<lapack_complex_double*>(vecs.data()) : nullptr;
  std::vector<double> rwork(std::size_t(2) * n);
  cplx wkopt;
  lapack_int info = LAPACKE_zgeev_work(LAPACK_COL_MAJOR, 'N', right ? 'V' : 'N', n, ap, n, wp,
                                       nullptr, n, vp, n,
                                       reinterpret_cast<lapack_complex_double*>(&wkopt), -1,
                                       rwork.data());
  if (info != 0) throw NumericalFailure("zgeev workspace query failed");
  lapack_int lwork = std::max<lapack_int>(lapack_int(wkopt.real()), 2 * n);
  std::vector<cplx> work(static_cast<std::size_t>(lwork));
  info = LAPACKE_zgeev_work(LAPACK_COL_MAJOR, 'N', right ? 'V' : 'N', n, ap, n, wp, nullptr, n,
                            vp, n, reinterpret_cast<lapack_complex_double*>(work.data()), lwork,
                            rwork.data());
  if (info != 0) throw NumericalFailure("zgeev failed, info=" + std::to_string(info));
  if (right) {
    // column k (contiguous in the column-major buffer) is right eigenvector k
    *right = CMatrix(n, n);
    for (lapack_int k = 0; k < n; ++k)
      for (lapack_int i = 0; i < n; ++i) (*right)(k, i) = vecs.data()[std::size_t(k) * n + i];
  }
}

void zgemm(char opa, char opb, cplx alpha, const CMatrix& a, const CMatrix& b, CMatrix& c) {
  const int m = int(opa == 'n' ? a.rows() : a.cols());
  const int k = int(opa == 'n' ? a.cols() : a.rows());
  const int nn = int(opb == 'n' ? b.cols() : b.rows());
  c = CMatrix(m, nn);
  const cplx beta = 0;
  cblas_zgemm(101, cblas_op(opa), cblas_op(opb), m, nn, k, &alpha, a.data(), int(a.cols()),
              b.data(), int(b.cols()), &beta, c.data(), nn);
}

CMatrix solve(CMatrix&& a, const CMatrix& b) {
  const lapack_int n = lapack_int(a.rows());
  const lapack_int nrhs = lapack_int(b.cols());
  CMatrix x = b;
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, n, nrhs,
                                  reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                  ipiv.data(),
                                  reinterpret_cast<lapack_complex_double*>(x.data()), nrhs);
  if (info != 0) throw NumericalFailure("zgesv failed, info=" + std::to_string(info));
  return x;
}

}  // namespace erm::lapack
