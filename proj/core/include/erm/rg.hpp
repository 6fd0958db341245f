#pragma once

#include <erm/geometry.hpp>
#include <erm/types.hpp>

namespace erm::herm {

struct RgResult {
  std::vector<double> lambdas;        // N-1 negative estimates, ascending in |Lambda|
  std::vector<double> cluster_mass;   // merged-cluster mass at each decimation, same order
  std::size_t frequency_violations = 0;  // steps where omega increased along the flow
};

// Real-space decimation for u = 1 ERMs with positive decaying kernels: find the
// stiffest pair omega = max sqrt(A_ij (1/m_i + 1/m_j)), record Lambda = -omega^2,
// merge masses and spring constants; the all-ones zero mode is the terminal state.
RgResult rg_flow(const geometry::PointCloud& cloud, const geometry::KernelSpec& kernel);

}  // namespace erm::herm
