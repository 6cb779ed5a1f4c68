#include "helikin/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "helikin/errors.hpp"
#include "helikin/gauge_field.hpp"
#include "helikin/hopf.hpp"
#include "helikin/monopole_basis.hpp"
#include "helikin/screening.hpp"
#include "helikin/specfun.hpp"
#include "helikin/spectra.hpp"

#ifndef HELIKIN_VERSION
#define HELIKIN_VERSION "0.0.0"
#endif

namespace helikin::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct OptionSpec {
  const char* key;
  const char* fallback;
  const char* help;
};

const std::vector<OptionSpec> kGlobalOptions = {
    {"out", "csv", "output format: csv or json"},
    {"output", "", "output file (default: standard output)"},
    {"seed", "0", "64-bit seed for randomized geometry"},
};

const std::map<std::string, std::vector<OptionSpec>>& command_options() {
  static const std::map<std::string, std::vector<OptionSpec>> table = {
      {"harmonics",
       {{"mu", "0.5", "helicity: 0, 0.5 or -0.5"},
        {"lmax", "2.5", "largest l in the table"},
        {"kind", "gram", "gram (orthonormality matrix) or values (Y on a coarse grid)"},
        {"n-theta", "64", "Gauss-Legendre nodes in cos(theta)"},
        {"n-phi", "64", "azimuthal nodes"},
        {"samples", "6", "sample points per angle for kind=values"}}},
      {"flux",
       {{"e", "1", "coupling constant e"},
        {"g", "0.5", "monopole strength g"},
        {"radii", "0.5,1,7", "comma-separated sphere radii"},
        {"n-theta", "64", "Gauss-Legendre nodes in cos(theta)"},
        {"n-phi", "64", "azimuthal nodes"}}},
      {"cocycle",
       {{"eg", "0.5", "product e*g (e = 1)"},
        {"tetrahedra", "1000", "number of origin-enclosing tetrahedra"}}},
      {"chern",
       {{"n-theta", "128", "Gauss-Legendre nodes per sphere"},
        {"n-phi", "128", "azimuthal nodes"},
        {"lattice", "32", "lattice size of the plaquette cross-check"}}},
      {"formfactor",
       {{"mu", "0.5", "helicity: 0, 0.5 or -0.5"},
        {"p", "1", "|p|"},
        {"p-theta", "0.7", "polar angle of p"},
        {"p-phi", "0.3", "azimuth of p"},
        {"q", "1.5", "|q| of the scanned points"},
        {"n-theta", "12", "polar samples of q"},
        {"n-phi", "24", "azimuthal samples of q"},
        {"steps", "64", "panels of the phase integral"}}},
      {"oscillator",
       {{"mu", "0.5", "helicity: 0, 0.5 or -0.5"},
        {"lmax", "3.5", "largest l"},
        {"vmax", "5", "largest radial quantum number"},
        {"grid", "2000", "interior finite-difference nodes"},
        {"pmax", "12", "outer Dirichlet wall"},
        {"pmin", "0", "inner Dirichlet wall"},
        {"richardson", "false", "extrapolate spacings h and h/2"},
        {"tol", "1e-3", "largest accepted discretization error estimate"}}},
      {"hydrogen",
       {{"mu", "0.5", "helicity: 0, 0.5 or -0.5"},
        {"z", "1", "nuclear charge Z"},
        {"lmax", "0.5", "largest l"},
        {"grid", "100", "radial Gauss-Legendre nodes (at least 100)"},
        {"count", "3", "levels per channel"},
        {"theta-half", "12", "polar nodes per hemisphere of the patch correction"},
        {"phi", "16", "azimuthal nodes of the patch correction (even)"},
        {"refine", "1.5", "factor of the refined grid for the convergence estimate; 1 disables"},
        {"patch-correction", "true", "include the cross-patch correction"}}},
      {"selftest", {}},
  };
  return table;
}

// ---- typed access with explicit errors ----

double as_double(const RunConfig& cfg, const std::string& key) {
  const std::string& s = cfg.get(key);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
    throw ValidationError("--" + key + ": expected a finite number, got '" + s + "'");
  return x;
}

long long as_int(const RunConfig& cfg, const std::string& key, long long lo, long long hi) {
  const std::string& s = cfg.get(key);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("--" + key + ": expected an integer, got '" + s + "'");
  if (x < lo || x > hi)
    throw ValidationError("--" + key + ": must lie in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "], got " + s);
  return x;
}

int as_count(const RunConfig& cfg, const std::string& key, int lo, int hi) {
  return static_cast<int>(as_int(cfg, key, lo, hi));
}

HalfInt as_half(const RunConfig& cfg, const std::string& key) {
  try {
    return HalfInt::from_double(as_double(cfg, key));
  } catch (const ValidationError&) {
    throw ValidationError("--" + key + ": expected an integer or half-integer, got '" +
                          cfg.get(key) + "'");
  }
}

HalfInt as_mu(const RunConfig& cfg) {
  const HalfInt mu = as_half(cfg, "mu");
  require(mu.twice() >= -1 && mu.twice() <= 1, "--mu: must be 0, 0.5 or -0.5");
  return mu;
}

bool as_bool(const RunConfig& cfg, const std::string& key) {
  const std::string& s = cfg.get(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ValidationError("--" + key + ": expected true or false, got '" + s + "'");
}

std::vector<double> as_list(const RunConfig& cfg, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(cfg.get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(x))
      throw ValidationError("--" + key + ": expected comma-separated numbers, got '" +
                            cfg.get(key) + "'");
    out.push_back(x);
  }
  require(!out.empty(), "--" + key + ": list is empty");
  return out;
}

// ---- tables ----

using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return std::to_string(v);
      },
      c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

void write_table(const Table& t, const RunConfig& cfg, std::ostream& os) {
  if (cfg.get("out") == "json") {
    nlohmann::ordered_json doc;
    doc["meta"]["version"] = HELIKIN_VERSION;
    nlohmann::ordered_json config;
    config["command"] = cfg.command;
    for (const auto& [k, v] : cfg.entries) config[k] = v;
    doc["meta"]["config"] = config;
    doc["data"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
      doc["data"].push_back(obj);
    }
    os << doc.dump(2) << '\n';
    return;
  }
  auto line = [&os](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << "\r\n";
  };
  line(t.header);
  for (const auto& row : t.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(cell_text(c));
    line(fields);
  }
}

std::vector<HalfInt> l_values(HalfInt mu, HalfInt lmax) {
  require(lmax >= mu.abs() && (lmax - mu.abs()).is_integer(),
          "--lmax: must be >= |mu| and differ from |mu| by an integer");
  std::vector<HalfInt> out;
  for (HalfInt l = mu.abs(); l <= lmax; l = l + HalfInt::integer(1)) out.push_back(l);
  return out;
}

// ---- subcommands ----

Table cmd_harmonics(const RunConfig& cfg) {
  const HalfInt mu = as_mu(cfg);
  const HalfInt lmax = as_half(cfg, "lmax");
  require(lmax.value() <= 20.0, "--lmax: must not exceed 20");
  const auto ls = l_values(mu, lmax);
  const AngularGrid grid =
      AngularGrid::uniform(as_count(cfg, "n-theta", 1, 4096), as_count(cfg, "n-phi", 1, 4096));
  std::vector<MonopoleIndex> idx;
  for (HalfInt l : ls)
    for (HalfInt m = -l; m <= l; m = m + HalfInt::integer(1)) idx.push_back(MonopoleIndex::make(l, m, mu));

  Table t;
  const std::string kind = cfg.get("kind");
  if (kind == "gram") {
    t.header = {"l1", "m1", "l2", "m2", "mu", "re", "im", "deviation"};
    for (const auto& a : idx) {
      for (const auto& b : idx) {
        const cplx v = angular_inner_product(a, b, grid);
        const double expected = a == b ? 1.0 : 0.0;
        t.rows.push_back({a.l.str(), a.m.str(), b.l.str(), b.m.str(), mu.str(), v.real(), v.imag(),
                          std::abs(v - expected)});
      }
    }
  } else if (kind == "values") {
    const int samples = as_count(cfg, "samples", 1, 1000);
    t.header = {"l", "m", "mu", "theta", "phi", "re", "im"};
    for (const auto& a : idx) {
      for (int i = 0; i < samples; ++i) {
        const double theta = kPi * (i + 0.5) / samples;
        for (int j = 0; j < samples; ++j) {
          const double phi = 2.0 * kPi * j / samples;
          const cplx y = monopole_harmonic(a, theta, phi);
          t.rows.push_back({a.l.str(), a.m.str(), mu.str(), theta, phi, y.real(), y.imag()});
        }
      }
    }
  } else {
    throw ValidationError("--kind: expected gram or values, got '" + kind + "'");
  }
  return t;
}

Table cmd_flux(const RunConfig& cfg) {
  const Coupling c{as_double(cfg, "e"), as_double(cfg, "g")};
  const AngularGrid grid =
      AngularGrid::uniform(as_count(cfg, "n-theta", 1, 4096), as_count(cfg, "n-phi", 1, 4096));
  Table t;
  t.header = {"radius", "flux", "expected", "abs_error"};
  for (double r : as_list(cfg, "radii")) {
    require(r > 0.0, "--radii: radii must be positive");
    const double flux = sphere_flux(r, c, grid);
    const double expected = 4.0 * kPi * c.g;
    t.rows.push_back({r, flux, expected, std::abs(flux - expected)});
  }
  return t;
}

bool origin_inside(const std::array<Vec3, 4>& v) {
  auto side = [&](int a, int b, int c, int d) {
    const Vec3 n = (v[b] - v[a]).cross(v[c] - v[a]);
    return std::signbit(n.dot(v[d] - v[a])) == std::signbit(n.dot(-v[a]));
  };
  return side(0, 1, 2, 3) && side(0, 1, 3, 2) && side(0, 2, 3, 1) && side(1, 2, 3, 0);
}

Table cmd_cocycle(const RunConfig& cfg) {
  const double eg = as_double(cfg, "eg");
  const int wanted = as_count(cfg, "tetrahedra", 1, 10'000'000);
  const auto seed = static_cast<std::uint64_t>(as_int(cfg, "seed", 0, INT64_MAX));
  const Coupling c{1.0, eg};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  int enclosing = 0, quantized = 0, excluded = 0;
  double max_residual = 0.0, max_excluded = 0.0, sum_omega = 0.0;
  while (enclosing < wanted) {
    std::array<Vec3, 4> v;
    for (auto& x : v) x = Vec3(coord(rng), coord(rng), coord(rng));
    const Vec3 v1 = v[1] - v[0], v2 = v[2] - v[1], v3 = v[3] - v[2];
    const double w3 = tetrahedron_cocycle(v[0], v1, v2, v3, c);
    if (origin_inside(v)) {
      ++enclosing;
      const double r = residual_mod_2pi(w3);
      max_residual = std::max(max_residual, r);
      if (r < 1e-8) ++quantized;
      sum_omega += w3;
    } else {
      ++excluded;
      max_excluded = std::max(max_excluded, std::abs(w3));
    }
  }
  Table t;
  t.header = {"eg", "tetrahedra", "quantized_fraction", "max_residual_mod_2pi", "mean_omega3",
              "excluded", "excluded_max_abs_omega3"};
  t.rows.push_back({eg, static_cast<long long>(enclosing), double(quantized) / enclosing,
                    max_residual, sum_omega / enclosing, static_cast<long long>(excluded),
                    max_excluded});
  return t;
}

Table cmd_chern(const RunConfig& cfg) {
  const AngularGrid grid =
      AngularGrid::hemispheric((as_count(cfg, "n-theta", 2, 4096) + 1) / 2, as_count(cfg, "n-phi", 1, 4096));
  const int lattice = as_count(cfg, "lattice", 2, 2048);
  Table t;
  t.header = {"mu_sign", "c1_spin_flux", "c1_lattice", "equator_holonomy_over_2pi"};
  for (int s : {1, -1}) {
    const double hol = patch_holonomy(0.5 * kPi, 1.0, Coupling{1.0, 0.5 * s}, 64) / (2.0 * kPi);
    t.rows.push_back({static_cast<long long>(s), chern_number(s, grid),
                      chern_number_lattice(s, lattice, 2 * lattice), hol});
  }
  return t;
}

Table cmd_formfactor(const RunConfig& cfg) {
  const HalfInt mu = as_mu(cfg);
  const double pmag = as_double(cfg, "p"), qmag = as_double(cfg, "q");
  require(pmag > 0.0, "--p: must be positive");
  require(qmag > 0.0, "--q: must be positive");
  const MomentumPoint p =
      MomentumPoint::spherical(pmag, as_double(cfg, "p-theta"), as_double(cfg, "p-phi"));
  const int nt = as_count(cfg, "n-theta", 1, 4096), np = as_count(cfg, "n-phi", 1, 4096);
  const int steps = as_count(cfg, "steps", 8, 1'000'000);
  Table t;
  t.header = {"theta_q", "phi_q", "patch_p", "patch_q", "kind", "re", "im", "abs",
              "phase_integral_re", "phase_integral_im"};
  const Patch pp = hemisphere_of(p.theta());
  for (int i = 0; i < nt; ++i) {
    const double theta = kPi * (i + 0.5) / nt;
    for (int j = 0; j < np; ++j) {
      const MomentumPoint q = MomentumPoint::spherical(qmag, theta, 2.0 * kPi * j / np);
      const Patch pq = hemisphere_of(q.theta());
      const FormFactor f = patched_form_factor(p, q, mu);
      double bre = std::nan(""), bim = std::nan("");
      if (pp == pq) {
        const cplx b = berry_phase_form_factor(PatchTag{pp, kDefaultOverlap}, p, q, steps, mu).value;
        bre = b.real();
        bim = b.imag();
      }
      t.rows.push_back({theta, q.phi(), std::string(to_string(pp)), std::string(to_string(pq)),
                        std::string(to_string(f.kind)), f.value.real(), f.value.imag(),
                        std::abs(f.value), bre, bim});
    }
  }
  return t;
}

Table cmd_oscillator(const RunConfig& cfg) {
  const HalfInt mu = as_mu(cfg);
  const auto ls = l_values(mu, as_half(cfg, "lmax"));
  const int vmax = as_count(cfg, "vmax", 0, 200);
  const RadialGrid grid = RadialGrid::linear(as_double(cfg, "pmax"), as_count(cfg, "grid", 1, 10'000'000),
                                             as_double(cfg, "pmin"));
  OscillatorOptions opt;
  opt.richardson = as_bool(cfg, "richardson");
  const double tol = as_double(cfg, "tol");
  require(tol > 0.0, "--tol: must be positive");
  Table t;
  t.header = {"v", "l", "mu", "E_analytic", "E_numeric", "abs_diff", "nodes"};
  for (HalfInt l : ls) {
    const SpectrumResult r = solve_radial_oscillator(l, mu, grid, vmax + 1, opt);
    if (r.meta.tolerance > tol)
      throw ConvergenceError("oscillator: error estimate " + format_double(r.meta.tolerance) +
                             " for l = " + l.str() + " exceeds --tol " + cfg.get("tol"));
    for (int v = 0; v <= vmax; ++v) {
      const double exact = oscillator_energy(v, l, mu);
      const double e = r.channels[v].energy;
      t.rows.push_back({static_cast<long long>(v), l.str(), mu.str(), exact, e, std::abs(e - exact),
                        static_cast<long long>(r.channels[v].v)});
    }
  }
  return t;
}

Table cmd_hydrogen(const RunConfig& cfg) {
  const HalfInt mu = as_mu(cfg);
  const double z = as_double(cfg, "z");
  require(z > 0.0, "--z: must be positive");
  const auto ls = l_values(mu, as_half(cfg, "lmax"));
  const int n = as_count(cfg, "grid", 100, 5000);
  const int count = as_count(cfg, "count", 1, 50);
  const double refine = as_double(cfg, "refine");
  require(refine >= 1.0, "--refine: must be at least 1");
  const int phi = as_count(cfg, "phi", 2, 4096);
  require(phi % 2 == 0, "--phi: must be even");
  const AngularGrid ang = AngularGrid::hemispheric(as_count(cfg, "theta-half", 1, 1024), phi);
  HydrogenOptions opt;
  opt.patch_correction = as_bool(cfg, "patch-correction");

  Table t;
  if (mu.twice() == 0) {
    t.header = {"l", "k", "n", "energy", "rydberg", "rel_error", "nodes"};
    const RadialGrid grid = RadialGrid::rational(z, n);
    for (HalfInt l : ls) {
      const SpectrumResult r = solve_hydrogen(mu, z, l, grid, ang, count, opt);
      for (int k = 0; k < count; ++k) {
        const int pn = k + l.as_int() + 1;
        const double ryd = -z * z / (2.0 * pn * pn);
        const double e = r.channels[k].energy;
        t.rows.push_back({l.str(), static_cast<long long>(k), static_cast<long long>(pn), e, ryd,
                          std::abs(e - ryd) / std::abs(ryd), static_cast<long long>(r.channels[k].v)});
      }
    }
    return t;
  }
  t.header = {"l0", "l", "k", "E_mu0", "E_screened", "delta", "convergence", "spurious"};
  const int n_fine = static_cast<int>(std::lround(n * refine));
  for (HalfInt l : ls) {
    const HalfInt l0 = l - mu.abs();
    std::vector<SpectrumResult> results;
    std::vector<int> sizes{n};
    if (n_fine != n) sizes.push_back(n_fine);
    for (int size : sizes) {
      const RadialGrid grid = RadialGrid::rational(z, size);
      results.push_back(solve_hydrogen(HalfInt{}, z, l0, grid, ang, count, opt));
      results.push_back(solve_hydrogen(mu, z, l, grid, ang, count, opt));
    }
    const auto rows = splitting_report(results);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      t.rows.push_back({l0.str(), l.str(), static_cast<long long>(k), rows[k].reference_energy,
                        rows[k].screened_energy, rows[k].delta, rows[k].convergence,
                        results[1].channels[k].spurious});
    }
  }
  return t;
}

struct Check {
  std::string name;
  double value;
  double tolerance;
};

Table cmd_selftest(const RunConfig& cfg) {
  std::vector<Check> checks;
  const auto seed = static_cast<std::uint64_t>(as_int(cfg, "seed", 0, INT64_MAX));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {
    const AngularGrid grid = AngularGrid::uniform(24, 24);
    double worst = 0.0;
    for (int mu2 : {-1, 0, 1}) {
      const HalfInt mu = HalfInt::from_twice(mu2);
      std::vector<MonopoleIndex> idx;
      for (HalfInt l = mu.abs(); l.value() <= 3.0; l = l + HalfInt::integer(1))
        for (HalfInt m = -l; m <= l; m = m + HalfInt::integer(1)) idx.push_back(MonopoleIndex::make(l, m, mu));
      for (const auto& a : idx)
        for (const auto& b : idx)
          worst = std::max(worst, std::abs(angular_inner_product(a, b, grid) - (a == b ? 1.0 : 0.0)));
    }
    checks.push_back({"orthonormality_l_le_3", worst, 1e-10});
  }
  {
    const AngularGrid grid = AngularGrid::uniform(32, 32);
    double worst = 0.0;
    for (double r : {0.5, 1.0, 7.0})
      worst = std::max(worst, std::abs(sphere_flux(r, Coupling{1.0, 0.5}, grid) - 2.0 * kPi));
    checks.push_back({"sphere_flux", worst, 1e-8});
  }
  {
    const Coupling c{1.0, 0.5};
    const std::array<Vec3, 4> v{Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
    const double w3 = tetrahedron_cocycle(v[0], v[1] - v[0], v[2] - v[1], v[3] - v[2], c);
    checks.push_back({"tetrahedron_cocycle_2pi", std::abs(w3 - 2.0 * kPi), 1e-10});
  }
  {
    const AngularGrid grid = AngularGrid::hemispheric(32, 64);
    checks.push_back({"chern_plus", std::abs(chern_number(1, grid) - 1.0), 1e-8});
    checks.push_back({"chern_minus", std::abs(chern_number(-1, grid) + 1.0), 1e-8});
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double theta = std::acos(1.0 - 2.0 * unit(rng)), phi = 2.0 * kPi * unit(rng);
      const PatchTag patch{hemisphere_of(theta), kDefaultOverlap};
      worst = std::max({worst, helicity_residual(patch, theta, phi, 1),
                        helicity_residual(patch, theta, phi, -1)});
    }
    checks.push_back({"helicity_residual", worst, 1e-12});
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const MomentumPoint p = MomentumPoint::spherical(0.5 + unit(rng), 0.5 * kPi * unit(rng), 2 * kPi * unit(rng));
      const MomentumPoint q =
          MomentumPoint::spherical(0.5 + unit(rng), 0.5 * kPi * (1.0 + unit(rng)), 2 * kPi * unit(rng));
      const cplx sn = cross_patch_form_factor_sn(q, p).value;
      const cplx ns = cross_patch_form_factor(p, q).value;
      worst = std::max(worst, std::abs(sn - std::conj(ns)));
    }
    checks.push_back({"cross_patch_symmetry", worst, 0.0});
  }
  {
    const RadialGrid grid = RadialGrid::linear(12.0, 8000);
    const SpectrumResult r = solve_radial_oscillator(HalfInt::from_twice(1), HalfInt::from_twice(1), grid, 3);
    double worst = 0.0;
    for (int v = 0; v < 3; ++v)
      worst = std::max(worst, std::abs(r.channels[v].energy -
                                       oscillator_energy(v, HalfInt::from_twice(1), HalfInt::from_twice(1))));
    checks.push_back({"oscillator_half", worst, 1e-4});
  }
  {
    const RadialGrid grid = RadialGrid::rational(1.0, 100);
    const SpectrumResult r = solve_hydrogen(HalfInt{}, 1.0, HalfInt{}, grid, AngularGrid::hemispheric(4, 4), 3);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double ryd = -0.5 / ((k + 1.0) * (k + 1.0));
      worst = std::max(worst, std::abs(r.channels[k].energy - ryd) / std::abs(ryd));
    }
    checks.push_back({"hydrogen_rydberg", worst, 1e-3});
  }
  Table t;
  t.header = {"check", "value", "tolerance", "pass"};
  for (const auto& c : checks) t.rows.push_back({c.name, c.value, c.tolerance, c.value <= c.tolerance});
  return t;
}

bool all_pass(const Table& t) {
  for (const auto& row : t.rows)
    if (!std::get<bool>(row.back())) return false;
  return true;
}

RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "--config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return RunConfig::from_text(ss.str());
}

}  // namespace

const std::string& RunConfig::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  throw ValidationError("unknown option '" + key + "' for command '" + command + "'");
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  throw ValidationError("unknown option '" + key + "' for command '" + command + "'");
}

std::string RunConfig::to_text() const {
  std::string out = "command=" + command + "\n";
  for (const auto& [k, v] : entries) out += k + "=" + v + "\n";
  return out;
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), "config line " + std::to_string(lineno) + ": empty key");
    if (key == "command") {
      cfg.command = value;
    } else {
      cfg.entries.emplace_back(key, value);
    }
  }
  return cfg;
}

RunConfig default_config(const std::string& command) {
  const auto& table = command_options();
  const auto it = table.find(command);
  require(it != table.end(), "unknown command '" + command + "'");
  RunConfig cfg;
  cfg.command = command;
  for (const auto& o : kGlobalOptions) cfg.entries.emplace_back(o.key, o.fallback);
  for (const auto& o : it->second) cfg.entries.emplace_back(o.key, o.fallback);
  return cfg;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"helikin: momentum-space monopole kinematics and screened spectra"};
  app.set_version_flag("--version", HELIKIN_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::map<std::string, std::string> global_values;
  std::map<std::string, CLI::Option*> global_opts;
  app.add_option("--config", config_path, "plain-text key=value file with option values");
  for (const auto& o : kGlobalOptions) {
    global_opts[o.key] = app.add_option("--" + std::string(o.key), global_values[o.key],
                                        std::string(o.help) + " (default: " + o.fallback + ")");
  }
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, specs] : command_options()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    subs[name] = sub;
    for (const auto& o : specs) {
      opts[name][o.key] = sub->add_option("--" + std::string(o.key), values[name][o.key],
                                          std::string(o.help) + " (default: " + o.fallback + ")");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << HELIKIN_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    RunConfig cfg = default_config(command);
    if (!config_path.empty()) {
      const RunConfig file = read_config_file(config_path);
      require(file.command.empty() || file.command == command,
              "--config: file is for command '" + file.command + "', not '" + command + "'");
      for (const auto& [k, v] : file.entries) cfg.set(k, v);
    }
    for (const auto& [k, opt] : global_opts)
      if (opt->count() > 0) cfg.set(k, global_values[k]);
    for (const auto& [k, opt] : opts[command])
      if (opt->count() > 0) cfg.set(k, values[command][k]);

    const std::string format = cfg.get("out");
    require(format == "csv" || format == "json", "--out: expected csv or json, got '" + format + "'");
    as_int(cfg, "seed", 0, INT64_MAX);

    Table table;
    if (command == "harmonics") table = cmd_harmonics(cfg);
    else if (command == "flux") table = cmd_flux(cfg);
    else if (command == "cocycle") table = cmd_cocycle(cfg);
    else if (command == "chern") table = cmd_chern(cfg);
    else if (command == "formfactor") table = cmd_formfactor(cfg);
    else if (command == "oscillator") table = cmd_oscillator(cfg);
    else if (command == "hydrogen") table = cmd_hydrogen(cfg);
    else table = cmd_selftest(cfg);

    const std::string path = cfg.get("output");
    if (path.empty()) {
      write_table(table, cfg, out);
    } else {
      std::ofstream file(path, std::ios::binary);
      require(static_cast<bool>(file), "--output: cannot open '" + path + "' for writing");
      write_table(table, cfg, file);
    }
    if (command == "selftest" && !all_pass(table)) {
      err << "selftest: at least one check failed\n";
      return 3;
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace helikin::cli
