#include <erm/io.hpp>

#include <json.hpp>

#include <fstream>

namespace erm::io {

using nlohmann::json;

namespace {
std::ofstream open_out(const std::filesystem::path& p, bool binary = false) {
  std::ofstream f(p, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
  f.precision(17);
  return f;
}
std::ifstream open_in(const std::filesystem::path& p, bool binary = false) {
  std::ifstream f(p, binary ? std::ios::binary : std::ios::in);
  if (!f) throw std::runtime_error("cannot open for reading: " + p.string());
  return f;
}
}  // namespace

void write_cloud_csv(const std::filesystem::path& path, const geometry::PointCloud& cloud) {
  auto f = open_out(path);
  f << kCsvHeader << " cloud\n# x,y,z\n";
  for (auto& p : cloud.points) f << p.x << ',' << p.y << ',' << p.z << '\n';
}

geometry::PointCloud read_cloud_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  geometry::PointCloud c;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    Vec3 p;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.x, &p.y, &p.z) == 3)
      c.points.push_back(p);
  }
  return c;
}

void write_matrix(const std::filesystem::path& path, const matrix::ErmMatrix& m) {
  auto f = open_out(path, true);
  json h = {{"n", m.n()},
            {"kernel", m.kernel.name()},
            {"scale", m.kernel.scale},
            {"u", m.u},
            {"hermitian", m.hermitian},
            {"dtype", "complex128-row-major"}};
  std::string hs = h.dump();
  f.write("ERMMAT01", 8);
  std::uint32_t len = std::uint32_t(hs.size());
  f.write(reinterpret_cast<const char*>(&len), 4);
  f.write(hs.data(), len);
  f.write(reinterpret_cast<const char*>(m.entries.data()),
          std::streamsize(sizeof(cplx) * m.n() * m.n()));
}

matrix::ErmMatrix read_matrix(const std::filesystem::path& path) {
  auto f = open_in(path, true);
  char magic[8];
  f.read(magic, 8);
  if (std::string(magic, 8) != "ERMMAT01") throw std::runtime_error("bad matrix container");
  std::uint32_t len = 0;
  f.read(reinterpret_cast<char*>(&len), 4);
  std::string hs(len, '\0');
  f.read(hs.data(), len);
  json h = json::parse(hs);
  matrix::ErmMatrix m;
  std::size_t n = h.at("n").get<std::size_t>();
  m.kernel = geometry::KernelSpec::from_name(h.at("kernel").get<std::string>(),
                                             h.at("scale").get<double>());
  m.u = h.at("u").get<int>();
  m.hermitian = h.at("hermitian").get<bool>();
  m.entries = CMatrix(n, n);
  f.read(reinterpret_cast<char*>(m.entries.data()), std::streamsize(sizeof(cplx) * n * n));
  if (!f) throw std::runtime_error("truncated matrix container");
  return m;
}

void write_matrix_csv(const std::filesystem::path& path, const CMatrix& m) {
  auto f = open_out(path);
  f << kCsvHeader << " matrix n=" << m.rows() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) f << ',';
      f << m(i, j).real() << (m(i, j).imag() < 0 ? "" : "+") << m(i, j).imag() << 'j';
    }
    f << '\n';
  }
}

void write_eigenvalues_csv(const std::filesystem::path& path, const std::vector<cplx>& ev,
                           const std::vector<double>* ipr) {
  auto f = open_out(path);
  f << kCsvHeader << " eigenvalues\n# re,im" << (ipr ? ",ipr" : "") << "\n";
  for (std::size_t i = 0; i < ev.size(); ++i) {
    f << ev[i].real() << ',' << ev[i].imag();
    if (ipr) f << ',' << (*ipr)[i];
    f << '\n';
  }
}

std::vector<cplx> read_eigenvalues_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  std::vector<cplx> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    double re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) >= 1) out.emplace_back(re, im);
  }
  return out;
}

void write_density_csv(const std::filesystem::path& path, const oracle::DensityEstimate& d) {
  auto f = open_out(path);
  if (d.centers_im.empty()) {
    f << kCsvHeader << " density\n# bin_center,p,stderr\n";
    for (std::size_t i = 0; i < d.centers_re.size(); ++i)
      f << d.centers_re[i] << ',' << d.p[i] << ',' << d.stderr_p[i] << '\n';
  } else {
    f << kCsvHeader << " density2d\n# bin_center,bin_center_im,p,stderr\n";
    for (std::size_t j = 0; j < d.centers_im.size(); ++j)
      for (std::size_t i = 0; i < d.centers_re.size(); ++i) {
        std::size_t id = j * d.centers_re.size() + i;
        f << d.centers_re[i] << ',' << d.centers_im[j] << ',' << d.p[id] << ','
          << d.stderr_p[id] << '\n';
      }
  }
}

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  auto f = open_out(path);
  f << kCsvHeader << "\n# ";
  for (std::size_t i = 0; i < columns.size(); ++i) f << (i ? "," : "") << columns[i];
  f << '\n';
  for (auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
    f << '\n';
  }
}

void write_borderline_json(const std::filesystem::path& path, const nonherm::Borderline& b) {
  json j;
  j["method"] = b.method;
  j["params"] = {{"gamma", b.gamma}, {"rho_lambda3", b.rho_lambda3}, {"k0R", b.k0R}};
  j["closed"] = b.closed;
  json comps = json::array();
  for (auto& c : b.components) {
    json comp = json::array();
    for (auto z : c) comp.push_back({z.real(), z.imag()});
    comps.push_back(comp);
  }
  j["components"] = comps;
  open_out(path) << j.dump(2) << '\n';
}

nonherm::Borderline read_borderline_json(const std::filesystem::path& path) {
  json j = json::parse(open_in(path));
  nonherm::Borderline b;
  b.method = j.value("method", "");
  b.closed = j.value("closed", true);
  if (j.contains("params")) {
    b.gamma = j["params"].value("gamma", 0.0);
    b.rho_lambda3 = j["params"].value("rho_lambda3", 0.0);
    b.k0R = j["params"].value("k0R", 0.0);
  }
  for (auto& comp : j.at("components")) {
    std::vector<cplx> c;
    for (auto& p : comp) c.emplace_back(p[0].get<double>(), p[1].get<double>());
    b.components.push_back(std::move(c));
  }
  return b;
}

}  // namespace erm::io
