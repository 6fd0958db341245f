#include <erm/geometry.hpp>

#include <cmath>

namespace erm::geometry {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace


Region Region::cube(double side) {
  if (!(side > 0)) throw std::invalid_argument("Region: cube side must be > 0");
  return {Shape::cube, side};
}
Region Region::sphere(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("Region: sphere radius must be > 0");
  return {Shape::sphere, radius};
}
double Region::volume() const {
  return shape == Shape::cube ? extent * extent * extent
                              : 4.0 * kPi * extent * extent * extent / 3.0;
}

KernelSpec KernelSpec::gaussian(double a) { return {Family::gaussian, a, false}; }
KernelSpec KernelSpec::exponential(double xi) { return {Family::exponential, xi, false}; }
KernelSpec KernelSpec::sinc(double k0) { return {Family::sinc, k0, false}; }
KernelSpec KernelSpec::cosc(double k0) { return {Family::cosc, k0, true}; }
KernelSpec KernelSpec::green(double k0) { return {Family::green, k0, true}; }
KernelSpec KernelSpec::cosc_plus_i_sinc(double k0) {
  return {Family::cosc_plus_i_sinc, k0, true};
}

bool KernelSpec::is_real() const {
  return family == Family::gaussian || family == Family::exponential ||
         family == Family::sinc || family == Family::cosc;
}

const char* KernelSpec::name() const {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::exponential: return "exponential";
    case Family::sinc: return "sinc";
    case Family::cosc: return "cosc";
    case Family::green: return "green";
    case Family::cosc_plus_i_sinc: return "cosc_plus_i_sinc";
  }
  return "?";
}

KernelSpec KernelSpec::from_name(const std::string& name, double scale) {
  if (!(scale > 0)) throw std::invalid_argument("kernel scale must be > 0");
  if (name == "gaussian") return gaussian(scale);
  if (name == "exponential") return exponential(scale);
  if (name == "sinc") return sinc(scale);
  if (name == "cosc") return cosc(scale);
  if (name == "green") return green(scale);
  if (name == "cosc_plus_i_sinc") return cosc_plus_i_sinc(scale);
  throw std::invalid_argument("unknown kernel family: " + name);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& v : s_) v = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 0) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(2.0 * kPi * u2);
  have_cached_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

cplx Rng::complex_normal() {
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 0) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

PointCloud sample_points(const Region& region, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_points: n must be >= 1");
  PointCloud cloud;
  cloud.region = region;
  cloud.seed = seed;
  cloud.points.reserve(n);
  Rng rng(seed);
  if (region.shape == Region::Shape::cube) {
    const double L = region.extent;
    for (std::size_t i = 0; i < n; ++i)
      cloud.points.push_back({L * rng.uniform(), L * rng.uniform(), L * rng.uniform()});
  } else {
    // radius by inverse transform of r^3, direction uniform on the sphere
    const double R = region.extent;
    for (std::size_t i = 0; i < n; ++i) {
      double r = R * std::cbrt(rng.uniform());
      double ct = 2.0 * rng.uniform() - 1.0;
      double ph = 2.0 * kPi * rng.uniform();
      double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      cloud.points.push_back({r * st * std::cos(ph), r * st * std::sin(ph), r * ct});
    }
  }
  cloud.density = double(n) / region.volume();
  return cloud;
}

cplx kernel_eval(const KernelSpec& kernel, const Vec3& dr) {
  const double r = dr.norm();
  using F = KernelSpec::Family;
  switch (kernel.family) {
    case F::gaussian:
      return std::exp(-r * r / (2.0 * kernel.scale * kernel.scale));
    case F::exponential:
      return std::exp(-r / kernel.scale);
    case F::sinc: {
      const double x = kernel.scale * r;
      if (x < 1e-8) return 1.0 - x * x / 6.0;  // analytic limit at the diagonal
      return std::sin(x) / x;
    }
    case F::cosc: {
      const double x = kernel.scale * r;
      if (x <= 0) throw std::domain_error("cosc kernel at zero separation");
      return std::cos(x) / x;
    }
    case F::green: {
      const double x = kernel.scale * r;
      if (x <= 0) throw std::domain_error("green kernel at zero separation");
      return std::exp(cplx(0, x)) / x;
    }
    case F::cosc_plus_i_sinc:
      // the two parts act on two independent clouds; single-displacement
      // evaluation only makes sense for the cosc part
      {
        const double x = kernel.scale * r;
        if (x <= 0) throw std::domain_error("cosc_plus_i_sinc kernel at zero separation");
        return std::cos(x) / x;
      }
  }
  throw std::logic_error("kernel_eval: bad family");
}

}  // namespace erm::geometry
