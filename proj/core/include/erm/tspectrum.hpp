#pragma once

#include <erm/types.hpp>

namespace erm::herm {

// Spectrum of the deterministic operator T = rho * A-hat: eigenvalues mu with
// degeneracies, plus the kappa roots they came from where applicable.
struct TSpectrum {
  struct Mode {
    cplx mu;
    int degeneracy = 1;
    cplx kappa_over_k0 = 0;
    int l = 0, p = 0;
  };
  std::vector<Mode> modes;
  double n_points = 0;  // the N in (1/N) sum ...
  std::string ensemble;
  double k0R = 0, rho_lambda3 = 0;
  int l_max = 0;
  bool truncation_warning = false;
  std::string warning;

  cplx trace() const {
    cplx s = 0;
    for (auto& m : modes) s += double(m.degeneracy) * m.mu;
    return s;
  }
  cplx trace2() const {
    cplx s = 0;
    for (auto& m : modes) s += double(m.degeneracy) * m.mu * m.mu;
    return s;
  }
  std::vector<cplx> expanded() const {
    std::vector<cplx> out;
    for (auto& m : modes)
      for (int k = 0; k < m.degeneracy; ++k) out.push_back(m.mu);
    return out;
  }
  static TSpectrum flat(cplx mu, std::size_t m_modes, double n_points);
};

}  // namespace erm::herm
