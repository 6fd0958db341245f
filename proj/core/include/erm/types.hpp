#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace erm {

using cplx = std::complex<double>;

struct Vec3 {
  double x = 0, y = 0, z = 0;
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Dense row-major complex matrix. Everything at desk scale (n <= 1e4) is dense.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  void transpose_inplace() {
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = i + 1; j < c_; ++j) std::swap(a_[i * c_ + j], a_[j * c_ + i]);
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<cplx> a_;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace erm
