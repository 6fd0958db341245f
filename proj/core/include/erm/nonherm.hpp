#pragma once

#include <erm/freeprob.hpp>
#include <erm/tspectrum.hpp>
#include <erm/types.hpp>

namespace erm::nonherm {

// Green's-matrix parameter bundle; any two of (n, k0R) / gamma / rho fix the rest.
struct GreenModel {
  double gamma = 0;        // low-density second moment <|Lambda|^2>
  double rho_lambda3 = 0;  // points per wavelength cubed
  double k0R = 0;
  double n = 0;
  double b0() const { return 16.0 * gamma / 3.0; }
  static GreenModel from_n_rho(double n, double rho_lambda3);
  static GreenModel from_n_gamma(double n, double gamma);
  static GreenModel from_gamma_rho(double gamma, double rho_lambda3);
};

struct Borderline {
  std::string method;
  // closed polylines on the complex plane; component 0 is the outer contour
  std::vector<std::vector<cplx>> components;
  bool closed = true;
  double gamma = 0, rho_lambda3 = 0, k0R = 0;

  // even-odd containment against all components
  bool contains(cplx z) const;
  double max_im() const;
};

// ---- closed-form / low-density borderlines ----
// |z|^2 = 2 gamma (Girko circle), p = 1/(2 pi gamma) inside
Borderline girko_law(double gamma, int npts = 256);
double girko_density(double gamma);

// |L|^2 = 2 gamma h(-8 gamma Im L / 3 |L|^2)
Borderline borderline_low_density(double gamma, int nrays = 256);
// |L|^2 = (8 gamma / sqrt(3) pi) sqrt(1 + Im L) (1 + |L|^2/(|L|^2 + 4 gamma))
Borderline borderline_diffusion(double gamma, int nrays = 256);

// ---- Green's-matrix T-spectrum (sphere) ----
struct GreenTSpectrum {
  herm::TSpectrum t;
  // per l: kept roots and the pair-overlap matrix C_lpp'
  struct Channel {
    int l = 0;
    std::vector<cplx> mu;
    std::vector<cplx> kappa_over_k0;
    std::vector<cplx> C;  // row-major P x P
  };
  std::vector<Channel> channels;
  double mu_max = 0;
  double im_trace_over_n = 0;  // should be ~1 (the sinc part of the trace)
};

struct GreenSpectrumOptions {
  int l_max = -1;            // default ceil(k0R + 4 k0R^{1/3} + 10)
  double mu_rel_tol = 1e-3;  // keep |mu| >= tol * max|mu|
  double trace_warn = 5.0;   // warn when |Im tr/N - 1| > trace_warn * mu_rel_tol
};
GreenTSpectrum green_t_spectrum(double k0R, double rho_lambda3,
                                const GreenSpectrumOptions& opt = {});

// exact borderline: level set (in the g-plane) of
//   1/|g|^2 = (1/N) sum_l (2l+1) sum_pp' mu_p' mu_p* C_pp'/((1-g mu_p')(1-g mu_p)*)
// mapped by z = 1/g + (g/N) sum (2l+1) mu^2/(1 - g mu)
Borderline borderline_exact(const GreenModel& model, const GreenTSpectrum& spec,
                            int nrays = 256);
Borderline borderline_exact(const GreenModel& model, int nrays = 256);

double max_im_lambda(const Borderline& b);

// ---- low-density resolvent field and density ----
struct NonHermField {
  std::vector<cplx> z;      // grid, row-major [iy][ix]
  std::vector<cplx> g;
  std::vector<double> c2;   // >= 0 inside the domain
  std::vector<double> p;    // Cauchy-Riemann density, clipped at -1e-6
  std::size_t nx = 0, ny = 0;
  double dx = 0, dy = 0;
};
NonHermField density_low_density(const GreenModel& model, double re_lo, double re_hi,
                                 std::size_t nx, double im_lo, double im_hi, std::size_t ny);

// marginal conjecture: p(Im L) from the MP law at gamma/2 in y = Im L + 1;
// p(Re L) from the cosc law at gamma/2 (box R-transform)
struct Marginals {
  std::vector<double> grid_re, p_re;
  std::vector<double> grid_im, p_im;
  bool validity_flag = true;  // false when gamma > 2
};
Marginals marginal_conjecture(double gamma, double rho_lambda3);

// subradiant spiral branch: density on arg L = -1/|L|,
// weight (3/(k0R)^3) (1/|L|^2) s(1/(2 k0R |L|)), s(x) = 1 - 3x/2 + x^3/2
struct SubradiantBranch {
  std::vector<double> abs_lambda;
  std::vector<double> weight;
  double abs_min = 0;  // support edge 1/(2 k0R)
};
SubradiantBranch subradiant_branch(double k0R, const std::vector<double>& abs_grid);

// spiral-branch membership: within rel_tol of |L| = 1/|arg L| (either spiral)
bool near_spiral(cplx lambda, double rel_tol = 0.05);
std::vector<bool> spiral_mask(const std::vector<cplx>& ev, double rel_tol = 0.05);

double capture_fraction(const Borderline& b, const std::vector<cplx>& ev,
                        const std::vector<bool>& exclude);
// directed+symmetric Hausdorff distance between polylines, scale-normalized
double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

// ---- X = C + i(S' - I): two independent clouds ----
struct XMatrixModel {
  double gamma = 0, rho_lambda3 = 0, k0L = 0, n = 0;
  static XMatrixModel from_n_rho_box(double n, double rho_lambda3);
};
struct XMatrixSuite {
  Borderline simple;    // R1 = gamma z, R2 = 1/(1 - gamma z) - 1
  Borderline refined;   // R1 = cosc box R-transform, same R2
  // closed-form density of the simple model inside its domain
  std::function<double(cplx)> p_simple;
};
XMatrixSuite x_matrix_suite(double gamma, double rho_lambda3, bool with_refined = true,
                            int nrays = 192);
// the cosc-ERM R-transform in a box (closed form), parameters (gamma, rho l0^3)
cplx r_cosc_box(cplx z, double gamma, double rho_lambda3);
// borderline of the simple model from its closed-form correlator
double domainfree_residual(cplx z, double gamma);

}  // namespace erm::nonherm
