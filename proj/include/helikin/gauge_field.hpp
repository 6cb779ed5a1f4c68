#pragma once

#include <complex>
#include <cstdint>

#include "helikin/momentum.hpp"

namespace helikin {

class AngularGrid;

/// Coupling constant e and monopole strength g; the helicity is e*g.
struct Coupling {
  double e = 1.0;
  double g = 0.5;

  double helicity() const { return e * g; }
};

/// Wu-Yang potential of the requested patch, in Cartesian components:
///   A_N = (g/p) tan(theta/2) phi_hat,  A_S = -(g/p) cot(theta/2) phi_hat.
/// Throws when the point is outside the patch (including its overlap band).
Vec3 gauge_potential(const PatchTag& patch, const MomentumPoint& point, const Coupling& c);

/// Monopole field B = g p_hat / p^2.
Vec3 field_strength(const MomentumPoint& point, const Coupling& c);
Vec3 field_strength(const Vec3& k, const Coupling& c);

/// Integral of A . dk along the straight segment from -> to, using `steps`
/// equal panels with three-point Gauss-Legendre each (order 6).
///
/// The segment must stay inside the patch; segments that cross the equator
/// have to be split by the caller (see equator_crossing).
double line_integral(const PatchTag& patch, const Vec3& from, const Vec3& to, const Coupling& c,
                     int steps);
double line_integral(const PatchTag& patch, const MomentumPoint& from, const MomentumPoint& to,
                     const Coupling& c, int steps);

/// Signed solid angle subtended at the origin by the triangle (a, b, c),
/// positive when (b-a) x (c-a) points away from the origin.
double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c);

/// Two-cocycle: e times the flux of B through the triangle
/// (p, p+v1, p+v1+v2), evaluated with the exact planar solid angle.
double triangle_cocycle(const Vec3& p, const Vec3& v1, const Vec3& v2, const Coupling& c);

/// Three-cocycle: e times the outward flux of B through the tetrahedron
/// (p, p+v1, p+v1+v2, p+v1+v2+v3). It equals 4 pi e g when the origin is
/// inside and zero otherwise.
double tetrahedron_cocycle(const Vec3& p, const Vec3& v1, const Vec3& v2, const Vec3& v3,
                           const Coupling& c);

/// Distance of an angle from the nearest multiple of 2 pi.
double residual_mod_2pi(double angle);

struct DiracCheck {
  bool quantized = false;
  long n = 0;
  double deviation = 0.0;
};

/// Checks 2 e g against the nearest integer (tolerance 1e-12).
DiracCheck dirac_check(const Coupling& c);

/// e^{i n phi}: glues southern to northern wave-functions on the overlap.
std::complex<double> transition_function(double phi, long n);

/// Flux of B through the sphere of the given radius by angular quadrature.
double sphere_flux(double radius, const Coupling& c, const AngularGrid& grid);

/// e times the integral of (A_N - A_S) . dk around the latitude circle at
/// polar angle theta inside the overlap band; equals 2 pi (2 e g).
double patch_holonomy(double theta, double radius, const Coupling& c, int steps);

}  // namespace helikin
