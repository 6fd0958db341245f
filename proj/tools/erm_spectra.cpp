// erm-spectra: config-driven runner for Euclidean-random-matrix experiments.
// Subcommands: sample, build, spectrum, density, borderline, solve, rg,
// vibration, laser, compare, reference. Exit codes: 0 ok, 2 config error,
// 3 numerical failure (diagnostics written next to the outputs).

#include <CLI11.hpp>
#include <json.hpp>

#include <erm/density.hpp>
#include <erm/freeprob.hpp>
#include <erm/herm.hpp>
#include <erm/io.hpp>
#include <erm/lapack.hpp>
#include <erm/laser.hpp>
#include <erm/nonherm.hpp>
#include <erm/rg.hpp>
#include <erm/spectral_oracle.hpp>
#include <erm/vibration.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

using nlohmann::json;
using namespace erm;

namespace {

struct Common {
  std::string out = "out";
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
  std::string config_path;
  json resolved;
};

void dump_resolved(const Common& c) {
  std::ofstream f(c.out + ".config.json");
  f << c.resolved.dump(2) << '\n';
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  return json::parse(f);
}

// config key fallback: CLI flags win; absent both -> default
template <typename T>
T cfg(const json& j, const std::string& key, T def) {
  if (j.contains(key)) return j.at(key).get<T>();
  return def;
}

std::vector<double> parse_grid(const std::string& s) {
  // "lo:hi:n" or "lo:hi:n:log"
  double lo, hi;
  int n;
  char logtag[8] = {0};
  int got = std::sscanf(s.c_str(), "%lf:%lf:%d:%7s", &lo, &hi, &n, logtag);
  if (got < 3 || n < 2) throw CLI::ValidationError("--grid", "expected lo:hi:n[:log]");
  std::vector<double> g(n);
  if (got == 4 && std::string(logtag) == "log") {
    for (int i = 0; i < n; ++i)
      g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  } else {
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

geometry::Region region_from(const std::string& shape, double extent) {
  if (shape == "cube") return geometry::Region::cube(extent);
  if (shape == "sphere") return geometry::Region::sphere(extent);
  throw CLI::ValidationError("--region", "cube or sphere");
}

struct EnsembleArgs {
  std::string kernel = "green";
  double scale = 1.0;
  std::string region = "sphere";
  double extent = 0;        // explicit region size
  double rho_lambda3 = 0;   // or implied by density parameters
  double rho_scale3 = 0;    // rho a^3 / rho xi^3 for gaussian/exponential
  std::size_t n = 1000;
  int u = 0;
  std::size_t realizations = 1;
};

// resolve the region extent from whichever density parameter was given
geometry::Region resolve_region(const EnsembleArgs& e) {
  double extent = e.extent;
  if (extent <= 0) {
    if (e.rho_lambda3 > 0) {
      if (e.region == "sphere")
        extent = herm::k0r_for_rho_sphere(double(e.n), e.rho_lambda3) / e.scale;
      else
        extent = std::cbrt(8.0 * M_PI * M_PI * M_PI * double(e.n) / e.rho_lambda3) / e.scale;
    } else if (e.rho_scale3 > 0) {
      double vol = double(e.n) * std::pow(e.scale, 3) / e.rho_scale3;
      extent = e.region == "sphere" ? std::cbrt(vol * 3.0 / (4.0 * M_PI)) : std::cbrt(vol);
    } else {
      throw CLI::ValidationError("--extent", "need extent or a density parameter");
    }
  }
  return region_from(e.region, extent);
}

matrix::ErmMatrix build_one(const EnsembleArgs& e, std::uint64_t seed) {
  auto region = resolve_region(e);
  auto kernel = geometry::KernelSpec::from_name(e.kernel, e.scale);
  auto cloud = geometry::sample_points(region, e.n, seed);
  if (kernel.family == geometry::KernelSpec::Family::cosc_plus_i_sinc) {
    auto cloud2 = geometry::sample_points(region, e.n, seed + 0x9e3779b9ULL);
    return matrix::build_erm(cloud, kernel, e.u, &cloud2);
  }
  return matrix::build_erm(cloud, kernel, e.u);
}

void add_ensemble_flags(CLI::App* app, EnsembleArgs& e) {
  app->add_option("--kernel", e.kernel, "gaussian|exponential|sinc|cosc|green|cosc_plus_i_sinc");
  app->add_option("--scale", e.scale, "kernel scale: a, xi or k0");
  app->add_option("--region", e.region, "cube|sphere");
  app->add_option("--extent", e.extent, "cube side or sphere radius");
  app->add_option("--rho-lambda3", e.rho_lambda3, "points per wavelength cubed");
  app->add_option("--rho-scale3", e.rho_scale3, "rho a^3 (gaussian) or rho xi^3 (exponential)");
  app->add_option("--n", e.n, "matrix size");
  app->add_option("--u", e.u, "0 or 1 (row sums forced to zero)");
  app->add_option("--realizations", e.realizations, "independent clouds to pool");
}

// eigenvalues of `reals` realizations, realization-parallel when jobs > 1
std::vector<cplx> pooled_spectrum(const EnsembleArgs& e, std::uint64_t seed, int jobs,
                                  std::vector<double>* ipr_out = nullptr) {
  std::vector<std::vector<cplx>> per(e.realizations);
  std::vector<std::vector<double>> per_ipr(e.realizations);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t r = next.fetch_add(1);
      if (r >= e.realizations) break;
      auto m = build_one(e, seed + r);
      if (m.hermitian) {
        auto s = oracle::eig_hermitian(m, ipr_out != nullptr);
        per[r] = std::move(s.eigenvalues);
        if (ipr_out) per_ipr[r] = oracle::compute_ipr(*s.right_vectors);
      } else {
        auto s = oracle::eig_general(std::move(m.entries), ipr_out != nullptr);
        per[r] = std::move(s.eigenvalues);
        if (ipr_out && s.right_vectors) per_ipr[r] = oracle::compute_ipr(*s.right_vectors);
      }
    }
  };
  int nw = std::max(1, std::min<int>(jobs, int(e.realizations)));
  lapack::set_blas_threads(nw > 1 ? 1 : std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::vector<cplx> ev;
  for (auto& v : per) ev.insert(ev.end(), v.begin(), v.end());
  if (ipr_out)
    for (auto& v : per_ipr) ipr_out->insert(ipr_out->end(), v.begin(), v.end());
  return ev;
}

json meta_for(const EnsembleArgs& e, std::uint64_t seed) {
  json m = {{"kernel", e.kernel}, {"scale", e.scale},       {"region", e.region},
            {"n", e.n},           {"u", e.u},               {"seed", seed},
            {"realizations", e.realizations}};
  auto region = resolve_region(e);
  m["extent"] = region.extent;
  if (e.kernel == "green" || e.kernel == "sinc" || e.kernel == "cosc") {
    double x = e.scale * region.extent;
    m[e.region == "sphere" ? "k0R" : "k0L"] = x;
    if (e.region == "sphere") {
      m["gamma"] = herm::gamma_sphere(double(e.n), x);
      m["rho_lambda3"] = herm::rho_lambda3_sphere(double(e.n), x);
    } else {
      m["gamma"] = herm::gamma_box(double(e.n), x);
      m["rho_lambda3"] = 8.0 * M_PI * M_PI * M_PI * double(e.n) / (x * x * x);
    }
  }
  return m;
}

int run_compare(const std::string& analytic, const std::string& oracle_file,
                const std::string& type, const std::string& out, double ks_tol,
                double capture_tol, bool strict);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"erm-spectra: Euclidean random matrix spectra, analytic laws vs diagonalization"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--config", common.config_path, "JSON config; flags override config keys");
  app.add_option("--out", common.out, "output path prefix");
  app.add_option("--seed", common.seed, "base RNG seed");
  app.add_option("--jobs", common.jobs, "worker pool size for realizations");
  app.add_flag("--strict", common.strict, "nonzero exit on invariant violations");

  EnsembleArgs ens;

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "sample a point cloud");
  add_ensemble_flags(sample, ens);

  // ---- build ----
  auto* build = app.add_subcommand("build", "assemble an ERM and serialize it");
  add_ensemble_flags(build, ens);
  bool build_csv = false;
  build->add_flag("--csv", build_csv, "also write a CSV dump (small n)");

  // ---- spectrum ----
  auto* spectrum = app.add_subcommand("spectrum", "diagonalize realizations and pool spectra");
  add_ensemble_flags(spectrum, ens);
  bool want_ipr = false;
  std::string ref_ensemble;
  std::size_t wishart_m = 0;
  spectrum->add_flag("--ipr", want_ipr, "also compute per-mode IPR (needs eigenvectors)");
  spectrum->add_option("--reference", ref_ensemble, "goe|gue|complex_ginibre|wishart instead of an ERM");
  spectrum->add_option("--wishart-m", wishart_m, "columns M for wishart");

  // ---- density ----
  auto* density = app.add_subcommand("density", "histogram an eigenvalue file");
  std::string ev_file;
  std::size_t nbins = 200, nbins_im = 0;
  density->add_option("--eigenvalues", ev_file, "CSV from `spectrum`")->required();
  density->add_option("--bins", nbins, "bins (re axis)");
  density->add_option("--bins-im", nbins_im, "2-D histogram when nonzero");

  // ---- reference ----
  auto* reference = app.add_subcommand("reference", "closed-form reference laws");
  std::string law = "semicircle";
  double ref_c = 1.0, ref_gamma = 0.5;
  std::string ref_grid = "";
  reference->add_option("--law", law, "semicircle|mp|mp-gamma");
  reference->add_option("--c", ref_c, "Wishart aspect ratio N/M");
  reference->add_option("--gamma", ref_gamma, "variance for mp-gamma");
  reference->add_option("--grid", ref_grid, "lo:hi:n[:log]");

  // ---- borderline ----
  auto* borderline = app.add_subcommand("borderline", "non-Hermitian eigenvalue domain borderlines");
  std::string bl_method = "contour3";
  double bl_gamma = 0.5, bl_rho = 0.1, bl_n = 1e4;
  int bl_rays = 256;
  borderline->add_option("--method", bl_method, "girko|contour3|diffusion|exact|xmatrix-simple|xmatrix-refined");
  borderline->add_option("--gamma", bl_gamma, "gamma (used directly when n not given)");
  borderline->add_option("--rho-lambda3", bl_rho, "density");
  borderline->add_option("--n", bl_n, "matrix size fixing (gamma, rho) jointly");
  borderline->add_option("--rays", bl_rays, "angular resolution");
  bool bl_from_n = false;
  borderline->add_flag("--from-n", bl_from_n, "derive gamma from (n, rho-lambda3)");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "analytic densities from the self-consistent equations");
  std::string sys = "sinc";
  double so_k0r = 40, so_n = 1000, so_rho_a3 = 1.0, so_eps = 1e-3, so_rho = 1.0;
  std::string so_grid = "";
  solve->add_option("--system", sys, "sinc|cosc|gauss|mp-gamma|lowdens|surrogate-trace");
  solve->add_option("--k0r", so_k0r, "k0 R");
  solve->add_option("--n", so_n, "N");
  solve->add_option("--rho-a3", so_rho_a3, "gaussian density rho a^3");
  solve->add_option("--rho-lambda3", so_rho, "density per wavelength cubed");
  solve->add_option("--eps", so_eps, "imaginary offset (times spectral scale)");
  solve->add_option("--grid", so_grid, "lo:hi:n[:log]");

  // ---- rg ----
  auto* rg = app.add_subcommand("rg", "real-space decimation flow (u = 1 kernels)");
  add_ensemble_flags(rg, ens);

  // ---- vibration ----
  auto* vibration = app.add_subcommand("vibration", "DOS / reduced DOS / DSF of the spring model");
  double vb_rho = 1.0;
  std::string vb_omega = "0.25:10:24:log", vb_k = "";
  vibration->add_option("--rho-a3", vb_rho, "density");
  vibration->add_option("--omega", vb_omega, "omega grid lo:hi:n[:log]");
  vibration->add_option("--k", vb_k, "comma-separated k values for S(k, omega)");

  // ---- laser ----
  auto* laser = app.add_subcommand("laser", "lasing threshold of the pumped point-scatterer gas");
  double la_b0 = 40;
  std::string la_borderline;
  laser->add_option("--b0", la_b0, "on-resonance optical thickness");
  laser->add_option("--borderline", la_borderline, "JSON domain from `borderline` (optional)");

  // ---- compare ----
  auto* compare = app.add_subcommand("compare", "metrics between analytic and oracle outputs");
  std::string cm_analytic, cm_oracle, cm_type = "density1d";
  double cm_ks = 0.05, cm_capture = 0.90;
  compare->add_option("--analytic", cm_analytic)->required();
  compare->add_option("--oracle", cm_oracle)->required();
  compare->add_option("--type", cm_type, "density1d|borderline");
  compare->add_option("--ks-tol", cm_ks, "KS tolerance for --strict");
  compare->add_option("--capture-tol", cm_capture, "capture tolerance for --strict");

  CLI11_PARSE(app, argc, argv);

  try {
    json c = load_config(common.config_path);
    // config fallbacks for the ensemble block
    if (c.contains("ensemble")) {
      auto& e = c["ensemble"];
      if (!*sample->get_option("--kernel") && e.contains("kernel"))
        ens.kernel = e["kernel"].get<std::string>();
      ens.scale = cfg(e, "scale", ens.scale);
      ens.region = cfg(e, "region", ens.region);
      ens.extent = cfg(e, "extent", ens.extent);
      ens.n = cfg(e, "n", ens.n);
      ens.u = cfg(e, "u", ens.u);
      ens.realizations = cfg(e, "realizations", ens.realizations);
      common.seed = cfg(e, "seed", common.seed);
    }
    common.resolved = {{"out", common.out}, {"seed", common.seed}, {"jobs", common.jobs}};

    if (*sample) {
      auto region = resolve_region(ens);
      auto cloud = geometry::sample_points(region, ens.n, common.seed);
      io::write_cloud_csv(common.out + ".cloud.csv", cloud);
      json meta = meta_for(ens, common.seed);
      meta["density"] = cloud.density;
      std::ofstream(common.out + ".meta.json") << meta.dump(2) << '\n';
      common.resolved["sample"] = meta;
      dump_resolved(common);
      return 0;
    }

    if (*build) {
      auto m = build_one(ens, common.seed);
      io::write_matrix(common.out + ".ermmat", m);
      if (build_csv) io::write_matrix_csv(common.out + ".matrix.csv", m.entries);
      json meta = meta_for(ens, common.seed);
      meta["hermitian"] = m.hermitian;
      std::ofstream(common.out + ".meta.json") << meta.dump(2) << '\n';
      common.resolved["build"] = meta;
      dump_resolved(common);
      return 0;
    }

    if (*spectrum) {
      std::vector<cplx> ev;
      std::vector<double> ipr;
      json meta;
      if (!ref_ensemble.empty()) {
        matrix::ReferenceEnsemble spec;
        spec.n = ens.n;
        spec.seed = common.seed;
        spec.m = wishart_m ? wishart_m : ens.n;
        if (ref_ensemble == "goe") spec.family = matrix::ReferenceEnsemble::Family::goe;
        else if (ref_ensemble == "gue") spec.family = matrix::ReferenceEnsemble::Family::gue;
        else if (ref_ensemble == "complex_ginibre")
          spec.family = matrix::ReferenceEnsemble::Family::complex_ginibre;
        else if (ref_ensemble == "wishart")
          spec.family = matrix::ReferenceEnsemble::Family::wishart;
        else throw CLI::ValidationError("--reference", "unknown ensemble " + ref_ensemble);
        for (std::size_t r = 0; r < ens.realizations; ++r) {
          spec.seed = common.seed + r;
          auto A = matrix::build_reference(spec);
          if (ref_ensemble == "complex_ginibre") {
            auto s = oracle::eig_general(std::move(A));
            ev.insert(ev.end(), s.eigenvalues.begin(), s.eigenvalues.end());
          } else {
            auto s = oracle::eig_hermitian(A);
            ev.insert(ev.end(), s.eigenvalues.begin(), s.eigenvalues.end());
          }
        }
        meta = {{"reference", ref_ensemble}, {"n", ens.n}, {"m", spec.m},
                {"seed", common.seed},       {"realizations", ens.realizations}};
      } else {
        ev = pooled_spectrum(ens, common.seed, common.jobs, want_ipr ? &ipr : nullptr);
        meta = meta_for(ens, common.seed);
      }
      io::write_eigenvalues_csv(common.out + ".eigenvalues.csv", ev,
                                want_ipr ? &ipr : nullptr);
      std::ofstream(common.out + ".meta.json") << meta.dump(2) << '\n';
      common.resolved["spectrum"] = meta;
      dump_resolved(common);
      return 0;
    }

    if (*density) {
      auto ev = io::read_eigenvalues_csv(ev_file);
      if (nbins_im == 0) {
        std::vector<double> re(ev.size());
        for (std::size_t i = 0; i < ev.size(); ++i) re[i] = ev[i].real();
        auto d = oracle::histogram_1d(re, {nbins, 0, 0, 0, 0, 0});
        io::write_density_csv(common.out + ".density.csv", d);
      } else {
        oracle::Binning b;
        b.nbins = nbins;
        b.nbins_im = nbins_im;
        auto d = oracle::histogram_2d(ev, b);
        io::write_density_csv(common.out + ".density.csv", d);
      }
      dump_resolved(common);
      return 0;
    }

    if (*reference) {
      std::vector<double> grid;
      freeprob::Law l;
      if (law == "semicircle") {
        l = freeprob::semicircle_law();
        grid = ref_grid.empty() ? parse_grid("-2:2:401") : parse_grid(ref_grid);
      } else if (law == "mp") {
        l = freeprob::marchenko_pastur_law(ref_c);
        grid = ref_grid.empty()
                   ? parse_grid("0:" + std::to_string(l.hi * 1.05) + ":401")
                   : parse_grid(ref_grid);
      } else if (law == "mp-gamma") {
        l = freeprob::mp_gamma_law(ref_gamma);
        grid = ref_grid.empty()
                   ? parse_grid("0:" + std::to_string(l.hi * 1.05) + ":401")
                   : parse_grid(ref_grid);
      } else {
        throw CLI::ValidationError("--law", "semicircle|mp|mp-gamma");
      }
      std::vector<std::vector<double>> rows;
      for (double x : grid) rows.push_back({x, l.density(x)});
      io::write_table_csv(common.out + ".law.csv", {"lambda", "p"}, rows);
      json meta = {{"law", law}, {"support", {l.lo, l.hi}},
                   {"atom_weight", l.atom_weight}};
      std::ofstream(common.out + ".meta.json") << meta.dump(2) << '\n';
      dump_resolved(common);
      return 0;
    }

    if (*borderline) {
      nonherm::Borderline b;
      if (bl_from_n) bl_gamma = nonherm::GreenModel::from_n_rho(bl_n, bl_rho).gamma;
      if (bl_method == "girko") b = nonherm::girko_law(bl_gamma, bl_rays);
      else if (bl_method == "contour3") b = nonherm::borderline_low_density(bl_gamma, bl_rays);
      else if (bl_method == "diffusion") b = nonherm::borderline_diffusion(bl_gamma, bl_rays);
      else if (bl_method == "exact") {
        auto model = bl_from_n ? nonherm::GreenModel::from_n_rho(bl_n, bl_rho)
                               : nonherm::GreenModel::from_gamma_rho(bl_gamma, bl_rho);
        b = nonherm::borderline_exact(model, bl_rays);
      } else if (bl_method == "xmatrix-simple" || bl_method == "xmatrix-refined") {
        auto suite = nonherm::x_matrix_suite(bl_gamma, bl_rho,
                                             bl_method == "xmatrix-refined", bl_rays);
        b = bl_method == "xmatrix-refined" ? suite.refined : suite.simple;
      } else {
        throw CLI::ValidationError("--method", "unknown borderline method " + bl_method);
      }
      io::write_borderline_json(common.out + ".borderline.json", b);
      dump_resolved(common);
      return 0;
    }

    if (*solve) {
      if (sys == "lowdens") {
        auto model = nonherm::GreenModel::from_n_rho(so_n, so_rho);
        double r = std::sqrt(2.0 * model.gamma);
        auto f = nonherm::density_low_density(model, -1.6 * r, 1.6 * r, 161, -1.0 + 1e-3,
                                              1.8 * r, 161);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < f.z.size(); ++i)
          rows.push_back({f.z[i].real(), f.z[i].imag(), f.g[i].real(), f.g[i].imag(),
                          f.c2[i], f.p[i]});
        io::write_table_csv(common.out + ".field.csv",
                            {"z_re", "z_im", "g_re", "g_im", "c2", "p"}, rows);
        dump_resolved(common);
        return 0;
      }
      herm::ResolventField field;
      std::vector<double> grid;
      if (sys == "sinc") {
        grid = so_grid.empty() ? parse_grid("0.001:8:800") : parse_grid(so_grid);
        field = herm::sinc_density(so_k0r, so_n, grid, so_eps);
      } else if (sys == "cosc") {
        grid = so_grid.empty() ? parse_grid("-8:8:800") : parse_grid(so_grid);
        auto t = herm::cosc_t_spectrum(so_k0r, so_rho);
        field = herm::solve_sc_trace_traceless(t, grid, so_eps);
      } else if (sys == "gauss") {
        double b = std::pow(2 * M_PI, 1.5) * so_rho_a3;
        grid = so_grid.empty() ? parse_grid("0.01:" + std::to_string(b * 1.2) + ":900")
                               : parse_grid(so_grid);
        field = herm::gaussian_erm_density(so_rho_a3, grid, so_eps);
      } else if (sys == "mp-gamma") {
        auto l = freeprob::mp_gamma_law(so_rho);
        grid = so_grid.empty() ? parse_grid("0.001:" + std::to_string(l.hi * 1.1) + ":600")
                               : parse_grid(so_grid);
        std::vector<std::vector<double>> rows;
        for (double x : grid) rows.push_back({x, l.density(x)});
        io::write_table_csv(common.out + ".density.csv", {"lambda", "p"}, rows);
        dump_resolved(common);
        return 0;
      } else {
        throw CLI::ValidationError("--system", "unknown system " + sys);
      }
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < grid.size(); ++i)
        rows.push_back({grid[i], field.p[i], field.g[i].real(), field.g[i].imag(),
                        field.converged[i] ? 1.0 : 0.0});
      io::write_table_csv(common.out + ".density.csv",
                          {"lambda", "p", "g_re", "g_im", "converged"}, rows);
      dump_resolved(common);
      return 0;
    }

    if (*rg) {
      auto region = resolve_region(ens);
      auto kernel = geometry::KernelSpec::from_name(ens.kernel, ens.scale);
      std::vector<double> pooled;
      for (std::size_t r = 0; r < ens.realizations; ++r) {
        auto cloud = geometry::sample_points(region, ens.n, common.seed + r);
        auto res = herm::rg_flow(cloud, kernel);
        pooled.insert(pooled.end(), res.lambdas.begin(), res.lambdas.end());
      }
      std::vector<std::vector<double>> rows;
      for (double l : pooled) rows.push_back({l});
      io::write_table_csv(common.out + ".rg.csv", {"lambda"}, rows);
      dump_resolved(common);
      return 0;
    }

    if (*vibration) {
      auto omegas = parse_grid(vb_omega);
      std::vector<double> ks;
      if (!vb_k.empty()) {
        std::stringstream ss(vb_k);
        std::string tok;
        while (std::getline(ss, tok, ',')) ks.push_back(std::stod(tok));
      }
      auto res = herm::vibrational_solver(vb_rho, omegas, ks);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < omegas.size(); ++i) {
        std::vector<double> row = {omegas[i], res.dos[i], res.reduced_dos[i]};
        for (std::size_t k = 0; k < ks.size(); ++k) row.push_back(res.dsf[k][i]);
        rows.push_back(std::move(row));
      }
      std::vector<std::string> cols = {"omega", "nu", "nu_over_omega2"};
      for (double k : ks) cols.push_back("S_k" + std::to_string(k));
      io::write_table_csv(common.out + ".vibration.csv", cols, rows);
      json meta = {{"rho_a3", vb_rho},
                   {"gamma_exponent", res.gamma_exponent},
                   {"converged", res.converged}};
      std::ofstream(common.out + ".meta.json") << meta.dump(2) << '\n';
      dump_resolved(common);
      return 0;
    }

    if (*laser) {
      auto pol = nonherm::PumpedPolarizability::incoherent_three_level();
      json out;
      auto lowd = nonherm::lasing_threshold_low_density(la_b0, pol);
      out["low_density"] = {{"lases", lowd.lases}, {"W_c", lowd.w_c}, {"delta_L", lowd.delta_l}};
      if (!la_borderline.empty()) {
        auto dom = io::read_borderline_json(la_borderline);
        auto t = nonherm::lasing_threshold(dom, pol);
        out["domain_overlap"] = {{"lases", t.lases}, {"W_c", t.w_c}, {"delta_L", t.delta_l}};
        auto tmax = nonherm::threshold_from_max_im(dom.max_im());
        out["max_im_condition"] = {{"lases", tmax.lases}, {"W_c", tmax.w_c},
                                   {"max_im", dom.max_im()}};
      }
      std::ofstream(common.out + ".laser.json") << out.dump(2) << '\n';
      dump_resolved(common);
      return 0;
    }

    if (*compare)
      return run_compare(cm_analytic, cm_oracle, cm_type, common.out, cm_ks, cm_capture,
                         common.strict);

  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    std::ofstream(common.out + ".diag.json")
        << json{{"error", e.what()}}.dump(2) << '\n';
    return 3;
  }
  return 0;
}

namespace {

int run_compare(const std::string& analytic, const std::string& oracle_file,
                const std::string& type, const std::string& out, double ks_tol,
                double capture_tol, bool strict) {
  json report;
  bool ok = true;
  if (type == "density1d") {
    // analytic: CSV table (lambda, p); oracle: eigenvalues CSV (re used)
    std::ifstream f(analytic);
    if (!f) throw std::invalid_argument("cannot open " + analytic);
    std::vector<double> grid, p;
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty() || line[0] == '#') continue;
      double a, b;
      if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) == 2) {
        grid.push_back(a);
        p.push_back(b);
      }
    }
    auto ev = io::read_eigenvalues_csv(oracle_file);
    std::vector<double> re(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) re[i] = ev[i].real();
    double ks = oracle::ks_to_density_table(re, grid, p);
    report = {{"type", type}, {"ks", ks}, {"ks_tol", ks_tol}};
    ok = ks <= ks_tol;
  } else if (type == "borderline") {
    auto b = io::read_borderline_json(analytic);
    auto ev = io::read_eigenvalues_csv(oracle_file);
    auto mask = nonherm::spiral_mask(ev);
    double cap = nonherm::capture_fraction(b, ev, mask);
    report = {{"type", type},
              {"capture", cap},
              {"capture_tol", capture_tol},
              {"excluded_fraction",
               double(std::count(mask.begin(), mask.end(), true)) / double(ev.size())}};
    ok = cap >= capture_tol;
  } else {
    throw std::invalid_argument("compare: unknown --type " + type);
  }
  report["pass"] = ok;
  std::ofstream(out + ".report.json") << report.dump(2) << '\n';
  std::cout << report.dump(2) << '\n';
  return (strict && !ok) ? 1 : 0;
}

}  // namespace
