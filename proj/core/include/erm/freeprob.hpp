#pragma once

#include <erm/tspectrum.hpp>
#include <erm/types.hpp>

#include <functional>

namespace erm::freeprob {

using Fn = std::function<cplx(cplx)>;

struct AnalyticFunction {
  Fn eval;
  std::string domain;
  std::string tag;
  cplx operator()(cplx z) const { return eval(z); }
};

// ---- closed-form reference laws ----
struct Law {
  AnalyticFunction g;
  std::function<double(double)> density;  // bulk density on [lo, hi]
  double lo = 0, hi = 0;
  double atom_weight = 0, atom_location = 0;
};
// Wigner semicircle on [-2, 2]
Law semicircle_law();
// Marchenko-Pastur in the Wishart convention: edges (1/sqrt(c) +- 1)^2,
// atom (1 - 1/c)+ at 0 for c > 1
Law marchenko_pastur_law(double c);
// variance-gamma convention: edges (1 +- sqrt(gamma))^2, atom (1 - 1/gamma)+
Law mp_gamma_law(double gamma);

// ---- transforms ----
// Functional inverse of g with damped-Newton continuation from |z| -> inf
// (where g ~ 1/z). B(g(z)) = z; R(z) = B(z) - 1/z.
struct BlueR {
  AnalyticFunction blue;
  AnalyticFunction r;
};
BlueR blue_and_r(const AnalyticFunction& g, double scale = 1.0);

// g from R: solve R(g) + 1/g = z by continuation; physical branch keeps
// Im g <= 0 for Im z > 0.
AnalyticFunction g_from_r(const Fn& r, double scale = 1.0);

// S-transform: S(z) = (1+z)/z * chi(z), where (1/chi) g(1/chi) - 1 = z.
AnalyticFunction s_from_g(const AnalyticFunction& g, double scale = 1.0);
AnalyticFunction g_from_s(const Fn& s, double scale = 1.0);

struct MomentsEdges {
  double mean = 0, variance = 0;
  std::vector<double> edges;
  bool bounded = true;
};
MomentsEdges moments_and_edges(const Fn& r, double scale = 1.0);

inline Fn free_add(Fn r1, Fn r2) {
  return [r1 = std::move(r1), r2 = std::move(r2)](cplx z) { return r1(z) + r2(z); };
}
inline Fn free_multiply(Fn s1, Fn s2) {
  return [s1 = std::move(s1), s2 = std::move(s2)](cplx z) { return s1(z) * s2(z); };
}

// R-transform of H T H^dagger driven by the T-spectrum:
// R(z) = (1/N) sum_a deg_a mu_a / (1 - mu_a z)
Fn erm_r_transform(const herm::TSpectrum& t);

// ---- quaternion free addition for X1 + i X2 ----
// System at z = x+iy: R1(u) = x + (t-1)/u, R2(v) = y - t/v, |u| = |v|.
// g = Re u - i Re v ; c2 = |u|^2 - (Re u)^2 - (Re v)^2  (>= 0 inside the
// eigenvalue domain, crosses zero on the borderline).
struct QuaternionPoint {
  cplx g = 0;
  double c2 = -1;
  double t = -1;
  bool inside = false;
};

// Candidate roots q of R(q) q - w q - s = 0 for one equation of the system.
using RootProvider = std::function<std::vector<cplx>(cplx w, cplx s)>;

// R(q) = var q  (semicircle-type)
RootProvider gaussian_root_provider(double var);
// R(q) = 1/(1 - gamma q) - shift  (Marchenko-Pastur-type; shift=1 gives the
// centered law of S' - I)
RootProvider mp_root_provider(double gamma, double shift);
// generic R: Newton from the quadratic seeds of the var-matched Gaussian model
RootProvider newton_root_provider(Fn r, double var_seed);

struct QfaOptions {
  int nt_scan = 600;
  double t_lo = 1e-10, t_hi = 1.0 - 1e-10;
};

// all (t, g, c2) candidates at z; continuation picks among them
std::vector<QuaternionPoint> quaternion_candidates(cplx z, const RootProvider& u_roots,
                                                   const RootProvider& v_roots,
                                                   const QfaOptions& opt = {});
// single point with branch selection: nearest to `prev` if given, else max c2
QuaternionPoint quaternion_point(cplx z, const RootProvider& u_roots,
                                 const RootProvider& v_roots,
                                 const QuaternionPoint* prev = nullptr,
                                 const QfaOptions& opt = {});

// borderline (c2 = 0) by radial bisection along rays from `center`;
// continuation runs outward along each ray
std::vector<cplx> quaternion_borderline(const RootProvider& u_roots,
                                        const RootProvider& v_roots, cplx center,
                                        double r_max, int nrays = 256,
                                        const QfaOptions& opt = {});

// ---- Tricomi inversion ----
// p(L) = 1/(pi^2 sqrt((L-a)(b-L))) [pi - P int_a^b sqrt((L'-a)(b-L'))
//        dV(L') / (L'-L) dL'], Gauss-Chebyshev nodes adapted to the weight.
// Throws a wrong-support NumericalFailure when p < -1e-6 anywhere.
std::vector<double> tricomi_density(const std::function<double(double)>& dV, double a,
                                    double b, const std::vector<double>& lambdas,
                                    int nodes = 512);

}  // namespace erm::freeprob
