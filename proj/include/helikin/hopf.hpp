#pragma once

#include <complex>

#include "helikin/momentum.hpp"

namespace helikin {

class AngularGrid;

/// Point z = (z1, z2) on the unit three-sphere, grouped as a spinor.
class SectionSpinor {
 public:
  /// Validates |z1|^2 + |z2|^2 = 1 within 1e-13.
  SectionSpinor(std::complex<double> z1, std::complex<double> z2);

  std::complex<double> z1() const { return z1_; }
  std::complex<double> z2() const { return z2_; }

  /// Polar angle of the projected direction, 2 atan2(|z2|, |z1|).
  double theta() const;
  /// Phase of z1 (zero when z1 vanishes).
  double alpha() const;
  /// Phase of z2, xi = phi + alpha (zero when z2 vanishes).
  double xi() const;

  /// Dual spinor (-z2*, z1*), the opposite-helicity partner.
  SectionSpinor dual() const;

  /// <this|other>.
  std::complex<double> inner(const SectionSpinor& other) const;

 private:
  std::complex<double> z1_;
  std::complex<double> z2_;
};

/// z = (cos(theta/2) e^{i alpha}, sin(theta/2) e^{i(phi+alpha)}).
SectionSpinor spinor_from_angles(double theta, double phi, double alpha);

/// n = z^dagger sigma z, a unit vector independent of the fiber phase.
Vec3 hopf_project(const SectionSpinor& z);

/// Spin vector s = z^dagger (sigma/2) z.
Vec3 spin_vector(const SectionSpinor& z);

struct ConnectionComponents {
  double omega_theta = 0.0;
  double omega_alpha = 0.0;
  double omega_xi = 0.0;
};

/// Components (0, cos(theta/2), sin(theta/2)) of the globally regular
/// connection in the (theta, alpha, xi) coordinates.
ConnectionComponents connection_components(double theta);

/// -i z^dagger dz for an infinitesimal displacement dz. Real for any dz
/// tangent to the sphere.
double connection_form(const SectionSpinor& z, std::complex<double> dz1, std::complex<double> dz2);

/// Local section: alpha = 0 on the north patch, alpha = -phi on the south.
/// Rejects points outside the patch.
SectionSpinor section(const PatchTag& patch, double theta, double phi);

/// ||(sigma . p_hat) z - mu_sign z|| for the section (mu_sign = +1) or its
/// dual (mu_sign = -1).
double helicity_residual(const PatchTag& patch, double theta, double phi, int mu_sign);

/// First Chern number from the flux of the spin field,
///   c1 = (1/2pi) * integral of p_hat . s dOmega,
/// with s built from the section (mu_sign = +1) or its dual (-1). The
/// northern section is used on theta <= pi/2 and the southern elsewhere;
/// the spin field itself is gauge invariant.
double chern_number(int mu_sign, const AngularGrid& grid);

/// Lattice Chern number from plaquette products of section overlaps on an
/// n_theta x n_phi grid (a gauge-independent cross-check).
double chern_number_lattice(int mu_sign, int n_theta, int n_phi);

/// U z with U = exp(i omega n . sigma) = cos(omega) + i sin(omega) n . sigma.
SectionSpinor su2_apply(const SectionSpinor& z, double omega, const Vec3& axis);

/// Rodrigues rotation of v by angle about the (normalized) axis.
Vec3 rotate(const Vec3& v, const Vec3& axis, double angle);

}  // namespace helikin
