#pragma once

#include <erm/types.hpp>

namespace erm::special {

// Spherical Bessel j_0..j_lmax at complex z, Miller downward recurrence.
// Values are exact (normalized through j0 = sin z / z).
std::vector<cplx> sph_jn(int lmax, cplx z);

// Same but normalized only up to an overall constant (overflow-safe for large
// |Im z|); enough wherever only ratios and scale-invariant combinations enter.
std::vector<cplx> sph_jn_unnormalized(int lmax, cplx z);

// Ratio j_l(z) / j_{l-1}(z) by continued fraction (Lentz); no over/underflow.
cplx sph_j_ratio(int l, cplx z);

// Spherical Bessel y_l and Hankel h^(1)_l at real x > 0, upward recurrence.
std::vector<double> sph_yn(int lmax, double x);
std::vector<cplx> sph_h1(int lmax, double x);

double sph_jn_real(int l, double x);

// Polylogarithm Li_{3/2}: power series for |x| < 0.9, otherwise the
// Bose-Einstein integral representation (x off the cut [1, inf)).
cplx li32(cplx x);

// h(x) of the scalar-wave pair diagram, series near 0:
//   h = [3 - 6x^2 + 8x^3 - 3(1+2x)e^{-2x}] / 6x^4,  h(0) = 1
cplx pair_h(cplx x);

// kappa(g)/k0 = sqrt(1 + g rho lambda0^3 / 2 pi^2), principal branch
cplx kappa_over_k0(cplx g, double rho_lambda3);

// Gauss-Legendre nodes/weights on [-1,1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Gauss-Chebyshev (second kind) principal-value quadrature helper:
// nodes t_k = cos(k pi/(n+1)), weights for weight function sqrt(1-t^2).
void gauss_chebyshev2(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace erm::special
