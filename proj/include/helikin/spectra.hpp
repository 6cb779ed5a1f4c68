#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "helikin/half_integer.hpp"
#include "helikin/monopole_basis.hpp"

namespace helikin {

enum class GridMapping { linear, rational_map };

const char* to_string(GridMapping m);

/// Radial momentum nodes with quadrature weights for integrals over dp.
struct RadialGrid {
  std::vector<double> points;
  std::vector<double> weights;
  GridMapping mapping = GridMapping::linear;
  /// Walls of a linear grid; the nodes are strictly inside (p_min, p_max).
  double p_min = 0.0;
  double p_max = 0.0;
  /// Scale c of the rational map.
  double scale = 0.0;

  /// n interior nodes with spacing (p_max - p_min) / (n + 1), trapezoid
  /// weights (the integrand is taken to vanish at the walls).
  static RadialGrid linear(double p_max, int n, double p_min = 0.0);
  /// p = c (1 + x) / (1 - x) over n Gauss-Legendre nodes x.
  static RadialGrid rational(double c, int n);

  int size() const { return static_cast<int>(points.size()); }
  double spacing() const;
};

struct SpectrumLevel {
  /// Radial quantum number: interior sign changes of the eigenvector.
  int v = 0;
  HalfInt l;
  HalfInt m;
  HalfInt mu;
  double energy = 0.0;
  /// Set for "bound" states that came out at E >= 0.
  bool spurious = false;
};

struct SolverMeta {
  std::string method;
  int grid_size = 0;
  /// Estimated discretization error of the reported energies.
  double tolerance = 0.0;
  double z = 0.0;
  int angular_nodes = 0;
};

/// Levels of one (l, m, mu) channel, ascending, with their radial vectors
/// sampled on `grid_points`.
struct SpectrumResult {
  std::vector<SpectrumLevel> channels;
  SolverMeta meta;
  std::vector<double> grid_points;
  std::vector<std::vector<double>> vectors;
};

/// l* = sqrt(l(l+1)) - 1/2.
double effective_l(HalfInt l);

/// 2v + l + 3/2 for mu = 0 and 2v + sqrt(l(l+1)) + 1 for |mu| = 1/2.
double oscillator_energy(int v, HalfInt l, HalfInt mu);

/// Unnormalized F(p) = p^{a} e^{-p^2/2} L_v^{a+1/2}(p^2) with a = l for
/// integer l (mu = 0) and a = l* for half-integer l (|mu| = 1/2).
double oscillator_wavefunction(int v, HalfInt l, double p);

struct OscillatorOptions {
  /// Combine spacings h and h/2 as (4 E_{h/2} - E_h) / 3.
  bool richardson = false;
};

/// Lowest `count` levels of -u''/2 + [(l(l+1) - mu^2)/(2p^2) + p^2/2] u = E u
/// with u = pF, second-order central differences and Dirichlet walls.
SpectrumResult solve_radial_oscillator(HalfInt l, HalfInt mu, const RadialGrid& grid, int count,
                                       const OscillatorOptions& options = {});

/// Number of spinless states (v, l, m) with 2v + l = N.
int degeneracy_count(int n);

struct LevelMultiplicity {
  double energy = 0.0;
  int multiplicity = 0;
  /// (v, l) pairs at this energy.
  std::vector<std::pair<int, HalfInt>> members;
};

/// Distinct oscillator energies up to e_max with their (2l+1)-weighted
/// multiplicities; energies closer than `tol` are merged.
std::vector<LevelMultiplicity> level_multiplicities(HalfInt mu, double e_max, double tol = 1e-6);

struct HydrogenOptions {
  /// Azimuthal quantum number of the channel; defaults to mu.
  std::optional<HalfInt> m;
  /// Include the cross-patch correction to the Coulomb partial wave.
  bool patch_correction = true;
};

/// Hermitian Nystrom matrix sqrt(w_i) p_i [p_i^2/2 delta_ij + V(p_i, q_j)]
/// q_j sqrt(w_j) of the screened Coulomb problem in one (l, m, mu) block,
/// with Lande subtraction on the diagonal. The angular grid fixes the
/// theta (n_theta / 2 per hemisphere) and azimuth nodes of the cross-patch
/// correction.
Eigen::MatrixXcd hydrogen_hamiltonian(HalfInt mu, double z, HalfInt l, const RadialGrid& grid,
                                      const AngularGrid& grid_ang,
                                      const HydrogenOptions& options = {});

/// Lowest `count` levels of the screened momentum-space hydrogen problem.
SpectrumResult solve_hydrogen(HalfInt mu, double z, HalfInt l, const RadialGrid& grid,
                              const AngularGrid& grid_ang, int count,
                              const HydrogenOptions& options = {});

struct SplittingRow {
  std::string label;
  double reference_energy = 0.0;
  double screened_energy = 0.0;
  double delta = 0.0;
  /// |delta_refined - delta| / |delta|; NaN without a refined result.
  double convergence = 0.0;
};

/// Level-by-level comparison of (reference, screened) pairs: results[0]
/// is the mu = 0 reference and results[1] the screened channel on the same
/// grid and Z. An optional second pair, results[2] and results[3], repeats
/// both on a refined grid and supplies the convergence estimate.
std::vector<SplittingRow> splitting_report(std::span<const SpectrumResult> results);

}  // namespace helikin
