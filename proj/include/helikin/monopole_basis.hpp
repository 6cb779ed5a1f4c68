#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "helikin/half_integer.hpp"
#include "helikin/momentum.hpp"

namespace helikin {

using cplx = std::complex<double>;

/// Quantum numbers (l, m, mu) of a monopole harmonic; mu is the helicity e*g.
struct MonopoleIndex {
  HalfInt l;
  HalfInt m;
  HalfInt mu;

  /// Builds and validates: l >= |mu|, |m| <= l, l - |mu| and m - mu integral,
  /// mu in {0, +1/2, -1/2}.
  static MonopoleIndex make(HalfInt l, HalfInt m, HalfInt mu);
  static MonopoleIndex make(double l, double m, double mu);

  void validate() const;
  bool operator==(const MonopoleIndex&) const = default;
};

/// Product grid on the unit sphere: Gauss-Legendre in cos(theta) times a
/// uniform azimuthal grid.
class AngularGrid {
 public:
  /// Gauss-Legendre over the whole of cos(theta) in [-1, 1].
  static AngularGrid uniform(int n_theta, int n_phi);
  /// Separate Gauss-Legendre rules on each hemisphere (n_per_half nodes each),
  /// so integrands that jump at the equator still converge spectrally.
  static AngularGrid hemispheric(int n_per_half, int n_phi);

  int n_theta() const { return static_cast<int>(theta_.size()); }
  int n_phi() const { return static_cast<int>(phi_.size()); }
  const std::vector<double>& theta() const { return theta_; }
  /// Weight of each theta node with respect to d(cos theta).
  const std::vector<double>& theta_weight() const { return theta_weight_; }
  const std::vector<double>& phi() const { return phi_; }
  double phi_weight() const { return phi_weight_; }

  bool is_hemispheric() const { return hemispheric_; }

  /// Same kind of grid with every size scaled by `factor` (rounded up).
  AngularGrid refined(double factor) const;

  /// Quadrature of f(theta, phi) dOmega.
  cplx integrate(const std::function<cplx(double, double)>& f) const;

 private:
  std::vector<double> theta_;
  std::vector<double> theta_weight_;
  std::vector<double> phi_;
  double phi_weight_ = 0.0;
  bool hemispheric_ = false;
};

/// Monopole harmonic Y_{l m mu} in the northern-patch gauge,
///   Y = sqrt((2l+1)/4pi) e^{i(m-mu)phi} d^l_{m mu}(theta).
/// Regular at theta = 0; it reduces to the Condon-Shortley Y_lm when mu = 0.
cplx monopole_harmonic(const MonopoleIndex& idx, double theta, double phi);

/// The same state in the gauge of the requested patch. The southern form is
/// e^{2 i mu phi} times the northern one.
cplx monopole_harmonic(const MonopoleIndex& idx, double theta, double phi, Patch patch);

/// Quadrature value of <Y_1|Y_2> over the grid. Both indices must share mu.
cplx angular_inner_product(const MonopoleIndex& a, const MonopoleIndex& b, const AngularGrid& grid);

/// Relative residual ||(L^2 - l(l+1)) Y|| / ||Y|| with the northern-patch
/// operator
///   L^2 = -[ sin(t) d_t(sin(t) d_t) + (d_phi + i mu (1 - cos t))^2 ] / sin^2(t) + mu^2
/// applied by central differences at every grid node.
double l2_residual(const MonopoleIndex& idx, const AngularGrid& grid);

/// Relative residual of L_z Y = m Y with L_z = -i d_phi + mu.
double lz_residual(const MonopoleIndex& idx, const AngularGrid& grid);

/// Outcome of evaluating the Jacobi-polynomial closed form as printed,
///   e^{i(mu+m)phi} (1-z)^{-(mu+m)/2} (1+z)^{-(mu-m)/2} P_{l+m}^{(-mu-m, -mu+m)}(z),
/// against the Wigner-d definition.
struct PrintedFormulaCheck {
  /// ||W - c Y|| / ||W|| for the best complex scale c (0 means proportional).
  double proportionality_residual = 0.0;
  /// l2_residual-style eigen residual of the printed function.
  double l2_residual = 0.0;
  /// Mismatch of -i d_phi + mu acting on it, relative to m.
  double lz_residual = 0.0;
  bool finite = true;
};

PrintedFormulaCheck check_printed_formula(const MonopoleIndex& idx, const AngularGrid& grid);

}  // namespace helikin
