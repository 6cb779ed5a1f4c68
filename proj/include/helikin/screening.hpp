#pragma once

#include <complex>
#include <string>

#include "helikin/half_integer.hpp"
#include "helikin/hopf.hpp"
#include "helikin/momentum.hpp"
#include "helikin/monopole_basis.hpp"

namespace helikin {

enum class FormFactorKind { overlap, phase_integral, cross_patch };

const char* to_string(FormFactorKind kind);

/// Screening weight of one Fourier component, tagged with how it was built.
struct FormFactor {
  cplx value;
  FormFactorKind kind = FormFactorKind::overlap;
};

inline constexpr HalfInt kRightHanded = HalfInt::from_twice(1);

enum class PotentialKind { harmonic_oscillator, coulomb, constant, gaussian };

const char* to_string(PotentialKind kind);

/// External potential described by its Fourier transform U(q), a real even
/// function of |q|.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::coulomb;
  /// Z for Coulomb, the amplitude otherwise.
  double strength = 1.0;

  /// Attractive Coulomb tail -Z/r, U(q) = -Z / (2 pi^2 q^2).
  static PotentialSpec coulomb(double z);
  /// p^2/2 in position space; its transform is a distribution, so kernels
  /// built from it are rejected and the oscillator is solved as an ODE.
  static PotentialSpec harmonic_oscillator();
  static PotentialSpec constant(double value);
  /// U(q) = strength * exp(-q^2 / 2).
  static PotentialSpec gaussian(double strength);

  double fourier(double q) const;
  bool singular_at_zero() const { return kind == PotentialKind::coulomb; }
};

/// Section spinor of helicity mu on the patch: the section itself for
/// mu = +1/2 and its dual for mu = -1/2. mu = 0 is rejected (no spinor).
SectionSpinor helicity_section(const PatchTag& patch, const MomentumPoint& k, HalfInt mu);

/// <z(p)|z(q)> from the patch sections. Identically 1 when mu = 0.
FormFactor overlap_form_factor(const PatchTag& patch, const MomentumPoint& p, const MomentumPoint& q,
                               HalfInt mu = kRightHanded);

/// exp(i * integral from q to p of the section connection) along the
/// straight segment. The section connection i<z|grad z> is minus the patch
/// potential with e = 1, g = mu, so this is exp(-i line_integral(q -> p)).
FormFactor berry_phase_form_factor(const PatchTag& patch, const MomentumPoint& p,
                                   const MomentumPoint& q, int steps, HalfInt mu = kRightHanded);

/// Point where the segment [q, p] crosses the equatorial plane,
///   k_E = (q p_z - p q_z) / (p_z - q_z).
MomentumPoint equator_crossing(const MomentumPoint& p, const MomentumPoint& q);
Vec3 equator_crossing(const Vec3& p, const Vec3& q);

/// Azimuth atan2(k_y, k_x) of the equator crossing.
double transition_phase(const MomentumPoint& p, const MomentumPoint& q);

/// F_NS(p, q) = F_N(p, k_E) <z_N(k_E)|z_S(k_E)> F_S(k_E, q) for p above
/// and q below the equator. The middle factor is e^{-2i mu phi_NS}.
FormFactor cross_patch_form_factor(const MomentumPoint& p, const MomentumPoint& q,
                                   HalfInt mu = kRightHanded);

/// F_SN(p, q) = conj(F_NS(q, p)) for p below and q above the equator.
FormFactor cross_patch_form_factor_sn(const MomentumPoint& p, const MomentumPoint& q,
                                      HalfInt mu = kRightHanded);

/// Form factor between p and q with patches assigned by hemisphere
/// (equator to N): overlap within a patch, cross-patch otherwise.
FormFactor patched_form_factor(const MomentumPoint& p, const MomentumPoint& q,
                               HalfInt mu = kRightHanded);

/// U(|p - q|) times the patched form factor.
cplx screened_kernel(const MomentumPoint& p, const MomentumPoint& q, const PotentialSpec& pot,
                     HalfInt mu = kRightHanded);

struct MatrixElement {
  cplx value;
  /// |value(grid) - value(refined grid)|.
  double refinement_change = 0.0;
  bool converged = true;
};

/// Double angular quadrature of conj(Y_row(p_hat)) K(p p_hat, q q_hat)
/// Y_col(q_hat), with harmonics and kernel in the gauge of the hemisphere
/// each node falls in. The grid is refined by 1.5x to estimate the error;
/// a relative change above 1e-6 (absolute 1e-12 near zero) clears
/// `converged`.
MatrixElement partial_wave_matrix_element(const MonopoleIndex& row, const MonopoleIndex& col,
                                          double p, double q, const PotentialSpec& pot,
                                          const AngularGrid& grid);

/// Rotation-invariant part of the Coulomb partial wave for channel l:
///   mu = 0:        -Z Q_l(y) / (pi p q)
///   |mu| = 1/2:    -Z [Q_{l-1/2}(y) + Q_{l+1/2}(y)] / (2 pi p q)
/// with y = (p^2 + q^2) / (2 p q). This is the partial wave obtained when the
/// northern overlap F_N(p, q) is used for every pair of directions.
double coulomb_global_partial_wave(HalfInt l, HalfInt mu, double p, double q, double z);

/// Correction to the Coulomb partial wave from pairs on opposite
/// hemispheres, where the patched kernel replaces F_N(p, q) by
/// F_N(p, k_E) F_N(k_E, q). Azimuthally reduced: theta_p and theta_q on
/// hemispheric Gauss-Legendre nodes (n_half per side), the relative
/// azimuth on n_phi midpoint nodes.
class CoulombPatchCorrection {
 public:
  CoulombPatchCorrection(const MonopoleIndex& idx, int n_half, int n_phi);

  cplx operator()(double p, double q, double z) const;

 private:
  struct Node {
    double cos_tp, cos_tq;
    double cos_gamma, sin_gamma, half_cos_gamma;
    cplx weight_times_fn;  // angular weight * Y* Y * F_N(p_hat, q_hat)
  };
  std::vector<Node> nodes_;
};

}  // namespace helikin
