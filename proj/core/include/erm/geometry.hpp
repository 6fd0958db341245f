#pragma once

#include <erm/types.hpp>

namespace erm::geometry {

struct Region {
  enum class Shape { cube, sphere };
  Shape shape = Shape::cube;
  double extent = 1.0;  // cube side L or sphere radius R

  static Region cube(double side);
  static Region sphere(double radius);
  double volume() const;
};

struct PointCloud {
  std::vector<Vec3> points;
  Region region;
  double density = 0;  // N / V
  std::uint64_t seed = 0;
  std::size_t size() const { return points.size(); }
};

struct KernelSpec {
  enum class Family { gaussian, exponential, sinc, cosc, green, cosc_plus_i_sinc };
  Family family = Family::gaussian;
  double scale = 1.0;  // a, xi, or k0 depending on family
  bool zero_diagonal = false;

  static KernelSpec gaussian(double a);
  static KernelSpec exponential(double xi);
  static KernelSpec sinc(double k0);
  static KernelSpec cosc(double k0);
  static KernelSpec green(double k0);
  static KernelSpec cosc_plus_i_sinc(double k0);
  bool is_real() const;
  const char* name() const;
  static KernelSpec from_name(const std::string& name, double scale);
};

// N i.i.d. uniform points; deterministic in (seed, n, region) including order.
PointCloud sample_points(const Region& region, std::size_t n, std::uint64_t seed);

// f(dr) for the kernel family; throws std::domain_error at dr = 0 when the
// family zeroes its diagonal (cosc, green, cosc_plus_i_sinc).
cplx kernel_eval(const KernelSpec& kernel, const Vec3& dr);

// Deterministic stream used everywhere randomness is needed: splitmix64-seeded
// xoshiro256++, explicit double mapping (bit-identical across platforms).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();            // [0,1)
  double normal();             // standard normal (Box-Muller, cached pair)
  cplx complex_normal();       // x + iy, x,y ~ N(0,1)

 private:
  std::uint64_t s_[4];
  bool have_cached_ = false;
  double cached_ = 0;
};

}  // namespace erm::geometry
