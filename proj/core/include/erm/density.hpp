#pragma once

#include <erm/types.hpp>

#include <functional>

namespace erm::oracle {

// 1-D binned density (or 2-D when ny > 0): values normalized so that
// sum p * cell_measure = 1 over the pooled eigenvalue set.
struct DensityEstimate {
  std::vector<double> centers_re;
  std::vector<double> centers_im;      // empty for 1-D
  std::vector<double> p;               // row-major [im][re] for 2-D
  std::vector<double> stderr_p;
  double cell_measure = 0;
  std::size_t realizations = 0;
  std::size_t total_count = 0;
};

struct Binning {
  std::size_t nbins = 200;
  double lo = 0, hi = 0;     // lo == hi means auto range padded 1%
  std::size_t nbins_im = 0;  // nonzero -> 2-D
  double lo_im = 0, hi_im = 0;
};

DensityEstimate histogram_1d(const std::vector<double>& values, Binning bins,
                             std::size_t realizations = 1);
DensityEstimate histogram_2d(const std::vector<cplx>& values, Binning bins,
                             std::size_t realizations = 1);

// fraction of eigenvalues strictly above lambda (the convention used for
// decreasing cumulatives of negative spectra)
std::vector<double> cumulative_above(const std::vector<double>& sorted_vals,
                                     const std::vector<double>& grid);

struct Moments {
  std::vector<double> raw;   // <Lambda^k>, k = 1..order (real part)
  double abs2 = 0;           // <|Lambda|^2>
};
Moments moments(const std::vector<cplx>& eigenvalues, int order);

// Kolmogorov-Smirnov distance between an empirical sample and a model CDF.
double ks_to_cdf(std::vector<double> sample, const std::function<double(double)>& cdf);
// KS from a tabulated density (trapezoid CDF, linear interpolation), with an
// optional point mass `atom_weight` at `atom_location`.
double ks_to_density_table(std::vector<double> sample, const std::vector<double>& grid,
                           const std::vector<double>& p, double atom_weight = 0,
                           double atom_location = 0);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace erm::oracle
