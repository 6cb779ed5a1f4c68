#include "helikin/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "helikin/errors.hpp"
#include "helikin/parallel.hpp"
#include "helikin/screening.hpp"
#include "helikin/specfun.hpp"

namespace helikin {

namespace {

constexpr double kPi = std::numbers::pi;

void require_channel(HalfInt l, HalfInt mu) {
  require(mu.twice() >= -1 && mu.twice() <= 1, "mu must be 0 or +-1/2");
  require(l >= mu.abs() && (l - mu.abs()).is_integer(),
          "l must satisfy l >= |mu| with l - |mu| integral");
}

int sign_changes(const std::vector<double>& u) {
  double peak = 0.0;
  for (double x : u) peak = std::max(peak, std::abs(x));
  const double floor = 1e-8 * peak;
  int changes = 0;
  int last = 0;
  for (double x : u) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

// Lowest `count` eigenpairs of the oscillator finite-difference matrix.
TridiagonalEigen oscillator_fd(double barrier, double p_min, double h, int n, int count,
                               bool want_vectors) {
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 1);
  for (int i = 0; i < n; ++i) {
    const double p = p_min + (i + 1) * h;
    diag[i] = 1.0 / (h * h) + barrier / (2.0 * p * p) + 0.5 * p * p;
  }
  std::fill(off.begin(), off.end(), -0.5 / (h * h));
  lapack_int found = 0;
  std::vector<double> w(n);
  std::vector<double> z(want_vectors ? static_cast<std::size_t>(n) * count : 1);
  std::vector<lapack_int> ifail(n);
  const lapack_int info =
      LAPACKE_dstevx(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, diag.data(), off.data(),
                     0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(), n, ifail.data());
  if (info != 0 || found != count)
    throw ConvergenceError("tridiagonal eigensolver failed (info " + std::to_string(info) + ")");
  TridiagonalEigen out;
  out.values.assign(w.begin(), w.begin() + count);
  if (want_vectors) {
    for (int k = 0; k < count; ++k)
      out.vectors.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(k) * n,
                               z.begin() + static_cast<std::ptrdiff_t>(k + 1) * n);
  }
  return out;
}

double averaged_harmonic(HalfInt l, HalfInt mu) {
  if (mu.twice() == 0) return specfun::harmonic_number(l.as_int());
  const int lo = (l - HalfInt::from_twice(1)).as_int();
  return 0.5 * (specfun::harmonic_number(lo) + specfun::harmonic_number(lo + 1));
}

// Rotation-invariant Coulomb partial wave without the -Z/(pi p q) prefactor.
double global_kernel(HalfInt l, HalfInt mu, double y) {
  if (mu.twice() == 0) return specfun::legendre_q(l.as_int(), y);
  const int lo = (l - HalfInt::from_twice(1)).as_int();
  const auto table = specfun::legendre_q_table(lo + 1, y);
  return 0.5 * (table[lo] + table[lo + 1]);
}

}  // namespace

const char* to_string(GridMapping m) {
  return m == GridMapping::linear ? "linear" : "rational_map";
}

RadialGrid RadialGrid::linear(double p_max, int n, double p_min) {
  require(n >= 1, "RadialGrid: need at least one node");
  require(std::isfinite(p_max) && std::isfinite(p_min) && p_min >= 0.0 && p_max > p_min,
          "RadialGrid: need 0 <= p_min < p_max");
  RadialGrid g;
  g.mapping = GridMapping::linear;
  g.p_min = p_min;
  g.p_max = p_max;
  const double h = (p_max - p_min) / (n + 1);
  for (int i = 1; i <= n; ++i) {
    g.points.push_back(p_min + i * h);
    g.weights.push_back(h);
  }
  return g;
}

RadialGrid RadialGrid::rational(double c, int n) {
  require(std::isfinite(c) && c > 0.0, "RadialGrid: map scale must be positive");
  require(n >= 1, "RadialGrid: need at least one node");
  RadialGrid g;
  g.mapping = GridMapping::rational_map;
  g.scale = c;
  const auto rule = specfun::gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    g.points.push_back(c * (1.0 + x) / (1.0 - x));
    g.weights.push_back(2.0 * c / ((1.0 - x) * (1.0 - x)) * rule.weights[i]);
  }
  g.p_max = std::numeric_limits<double>::infinity();
  return g;
}

double RadialGrid::spacing() const {
  require(mapping == GridMapping::linear, "RadialGrid: only linear grids have a spacing");
  return (p_max - p_min) / (size() + 1);
}

double effective_l(HalfInt l) {
  const double x = l.value();
  return std::sqrt(x * (x + 1.0)) - 0.5;
}

double oscillator_energy(int v, HalfInt l, HalfInt mu) {
  require(v >= 0, "oscillator_energy: v must be non-negative");
  require_channel(l, mu);
  if (mu.twice() == 0) return 2.0 * v + l.value() + 1.5;
  const double x = l.value();
  return 2.0 * v + std::sqrt(x * (x + 1.0)) + 1.0;
}

double oscillator_wavefunction(int v, HalfInt l, double p) {
  require(v >= 0, "oscillator_wavefunction: v must be non-negative");
  require(l >= HalfInt{}, "oscillator_wavefunction: l must be non-negative");
  require(p >= 0.0, "oscillator_wavefunction: p must be non-negative");
  const double a = l.is_integer() ? l.value() : effective_l(l);
  return std::pow(p, a) * std::exp(-0.5 * p * p) * specfun::laguerre_poly(v, a + 0.5, p * p);
}

SpectrumResult solve_radial_oscillator(HalfInt l, HalfInt mu, const RadialGrid& grid, int count,
                                       const OscillatorOptions& options) {
  require_channel(l, mu);
  require(count >= 1, "solve_radial_oscillator: count must be positive");
  require(grid.mapping == GridMapping::linear,
          "solve_radial_oscillator: finite differences need a linear grid");
  const int n = grid.size();
  require(n >= 20 && n >= 10 * count, "solve_radial_oscillator: grid too small for the requested levels");
  require(grid.p_min <= 0.01, "solve_radial_oscillator: p_min too large (must be <= 0.01)");
  const double e_top = oscillator_energy(count - 1, l, mu);
  require(0.5 * grid.p_max * grid.p_max - e_top >= 15.0,
          "solve_radial_oscillator: p_max too small for the requested levels");

  const double barrier = l.value() * (l.value() + 1.0) - mu.value() * mu.value();
  const double h = grid.spacing();
  const auto coarse = oscillator_fd(barrier, grid.p_min, h, n, count, true);
  const auto fine = oscillator_fd(barrier, grid.p_min, 0.5 * h, 2 * n + 1, count, false);

  SpectrumResult out;
  out.meta.method = options.richardson ? "finite_difference_richardson" : "finite_difference";
  out.meta.grid_size = n;
  out.grid_points = grid.points;
  double tol = 0.0;
  for (int k = 0; k < count; ++k) {
    const double extrapolated = (4.0 * fine.values[k] - coarse.values[k]) / 3.0;
    double e = coarse.values[k];
    if (options.richardson) {
      e = extrapolated;
      tol = std::max(tol, std::abs(extrapolated - fine.values[k]));
    } else {
      tol = std::max(tol, std::abs(extrapolated - coarse.values[k]));
    }
    SpectrumLevel level;
    level.l = l;
    level.m = l;
    level.mu = mu;
    level.energy = e;
    level.v = sign_changes(coarse.vectors[k]);
    out.channels.push_back(level);
    out.vectors.push_back(coarse.vectors[k]);
  }
  out.meta.tolerance = tol;
  return out;
}

int degeneracy_count(int n) {
  require(n >= 0, "degeneracy_count: N must be non-negative");
  int count = 0;
  for (int l = n % 2; l <= n; l += 2) count += 2 * l + 1;
  return count;
}

std::vector<LevelMultiplicity> level_multiplicities(HalfInt mu, double e_max, double tol) {
  require(mu.twice() >= -1 && mu.twice() <= 1, "level_multiplicities: mu must be 0 or +-1/2");
  std::vector<std::tuple<double, int, HalfInt>> states;
  for (HalfInt l = mu.abs(); oscillator_energy(0, l, mu) <= e_max; l = l + HalfInt::integer(1)) {
    for (int v = 0; oscillator_energy(v, l, mu) <= e_max; ++v)
      states.emplace_back(oscillator_energy(v, l, mu), v, l);
  }
  std::sort(states.begin(), states.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  std::vector<LevelMultiplicity> out;
  for (const auto& [e, v, l] : states) {
    if (out.empty() || e - out.back().energy > tol) out.push_back({e, 0, {}});
    out.back().multiplicity += l.twice() + 1;
    out.back().members.emplace_back(v, l);
  }
  return out;
}

Eigen::MatrixXcd hydrogen_hamiltonian(HalfInt mu, double z, HalfInt l, const RadialGrid& grid,
                                      const AngularGrid& grid_ang, const HydrogenOptions& options) {
  require_channel(l, mu);
  require(std::isfinite(z) && z > 0.0, "solve_hydrogen: Z must be positive");
  const int n = grid.size();
  require(n >= 2, "solve_hydrogen: radial grid too small");
  const MonopoleIndex idx = MonopoleIndex::make(l, options.m.value_or(mu), mu);
  const auto& p = grid.points;
  const auto& w = grid.weights;
  const double hbar = averaged_harmonic(l, mu);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    double subtraction = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double y = (p[i] * p[i] + p[j] * p[j]) / (2.0 * p[i] * p[j]);
      h(i, j) = -(z / kPi) * std::sqrt(w[i] * w[j]) * global_kernel(l, mu, y);
      subtraction += w[j] * (p[i] / p[j]) * specfun::legendre_q(0, y);
    }
    h(i, i) = 0.5 * p[i] * p[i] -
              (z / kPi) * (-w[i] * hbar - subtraction + 0.5 * kPi * kPi * p[i]);
  });

  if (options.patch_correction && mu.twice() != 0) {
    const int n_half = std::max(1, grid_ang.n_theta() / 2);
    const int n_phi = grid_ang.n_phi() + grid_ang.n_phi() % 2;
    const CoulombPatchCorrection correction(idx, n_half, n_phi);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
      const int i = static_cast<int>(row);
      for (int j = 0; j < n; ++j)
        h(i, j) += std::sqrt(w[i] * w[j]) * p[i] * p[j] * correction(p[i], p[j], z);
    });
  }
  return h;
}

SpectrumResult solve_hydrogen(HalfInt mu, double z, HalfInt l, const RadialGrid& grid,
                              const AngularGrid& grid_ang, int count,
                              const HydrogenOptions& options) {
  require(grid.size() >= 100, "solve_hydrogen: the radial grid needs at least 100 points");
  require(count >= 1 && count <= grid.size(), "solve_hydrogen: invalid level count");
  const Eigen::MatrixXcd h = hydrogen_hamiltonian(mu, z, l, grid, grid_ang, options);
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym < 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff())))
    throw ConvergenceError("solve_hydrogen: discretized Hamiltonian is not Hermitian");

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw ConvergenceError("solve_hydrogen: eigensolver failed");

  SpectrumResult out;
  out.meta.method = options.patch_correction ? "nystrom_lande_patched" : "nystrom_lande";
  out.meta.grid_size = grid.size();
  out.meta.z = z;
  out.meta.angular_nodes = grid_ang.n_theta() * grid_ang.n_phi();
  out.grid_points = grid.points;
  const HalfInt m = options.m.value_or(mu);
  for (int k = 0; k < count; ++k) {
    const Eigen::VectorXcd vec = solver.eigenvectors().col(k);
    // undo the symmetrizing scale and fix the phase on the largest entry
    Eigen::Index peak = 0;
    vec.cwiseAbs().maxCoeff(&peak);
    const cplx phase = std::conj(vec(peak)) / std::abs(vec(peak));
    std::vector<double> psi(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i)
      psi[i] = (phase * vec(i)).real() / (std::sqrt(grid.weights[i]) * grid.points[i]);
    SpectrumLevel level;
    level.l = l;
    level.m = m;
    level.mu = mu;
    level.energy = solver.eigenvalues()(k);
    level.spurious = level.energy >= 0.0;
    level.v = sign_changes(psi);
    out.channels.push_back(level);
    out.vectors.push_back(std::move(psi));
  }
  return out;
}

std::vector<SplittingRow> splitting_report(std::span<const SpectrumResult> results) {
  require(results.size() == 2 || results.size() == 4,
          "splitting_report: expects one or two (reference, screened) pairs");
  auto check_pair = [](const SpectrumResult& ref, const SpectrumResult& scr) {
    require(ref.meta.z == scr.meta.z, "splitting_report: results differ in Z");
    require(ref.meta.grid_size == scr.meta.grid_size,
            "splitting_report: reference and screened results use different grids");
  };
  check_pair(results[0], results[1]);
  const bool refined = results.size() == 4;
  if (refined) {
    check_pair(results[2], results[3]);
    require(results[2].meta.z == results[0].meta.z, "splitting_report: refined pair differs in Z");
  }
  std::size_t rows = std::min(results[0].channels.size(), results[1].channels.size());
  if (refined)
    rows = std::min({rows, results[2].channels.size(), results[3].channels.size()});
  std::vector<SplittingRow> out;
  for (std::size_t k = 0; k < rows; ++k) {
    const SpectrumLevel& a = results[0].channels[k];
    const SpectrumLevel& b = results[1].channels[k];
    SplittingRow row;
    row.label = "k=" + std::to_string(k) + " l0=" + a.l.str() + " l=" + b.l.str() +
                " mu=" + b.mu.str();
    row.reference_energy = a.energy;
    row.screened_energy = b.energy;
    row.delta = b.energy - a.energy;
    if (refined) {
      const double delta2 = results[3].channels[k].energy - results[2].channels[k].energy;
      row.convergence = row.delta == 0.0 ? std::abs(delta2)
                                         : std::abs(delta2 - row.delta) / std::abs(row.delta);
    } else {
      row.convergence = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace helikin
