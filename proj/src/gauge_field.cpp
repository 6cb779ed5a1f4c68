#include "helikin/gauge_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "helikin/errors.hpp"
#include "helikin/monopole_basis.hpp"

namespace helikin {

namespace {

constexpr double kPi = std::numbers::pi;

// three-point Gauss-Legendre on [0, 1]
constexpr std::array<double, 3> kPanelNodes{0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
constexpr std::array<double, 3> kPanelWeights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

// True when the origin lies in the closed triangle (a, b, c), up to a
// relative tolerance.
bool origin_in_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double scale = a.norm() * b.norm() * c.norm();
  if (std::abs(det3(a, b, c)) > 1e-12 * scale) return false;
  const Vec3 n = (b - a).cross(c - a);
  const double nn = n.squaredNorm();
  if (nn == 0.0) return false;
  // barycentric coordinates of the origin
  const double wa = (b.cross(c)).dot(n) / nn;
  const double wb = (c.cross(a)).dot(n) / nn;
  const double wc = (a.cross(b)).dot(n) / nn;
  constexpr double tol = -1e-12;
  return wa >= tol && wb >= tol && wc >= tol;
}

double segment_distance_to_origin(const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double dd = d.squaredNorm();
  if (dd == 0.0) return a.norm();
  const double t = std::clamp(-a.dot(d) / dd, 0.0, 1.0);
  return (a + t * d).norm();
}

}  // namespace

Vec3 gauge_potential(const PatchTag& patch, const MomentumPoint& point, const Coupling& c) {
  require(patch.covers(point), std::string("gauge_potential: point outside patch ") +
                                   to_string(patch.patch));
  const double half = 0.5 * point.theta();
  double profile = 0.0;
  if (patch.patch == Patch::north) {
    profile = std::tan(half);
  } else {
    require(point.theta() > 0.0, "gauge_potential: south potential is singular at theta = 0");
    profile = -1.0 / std::tan(half);
  }
  return (c.g / point.p()) * profile * point.phi_hat();
}

Vec3 field_strength(const Vec3& k, const Coupling& c) {
  const double p = k.norm();
  require(p > 0.0, "field_strength: the monopole sits at p = 0");
  return (c.g / (p * p * p)) * k;
}

Vec3 field_strength(const MomentumPoint& point, const Coupling& c) {
  return field_strength(point.cartesian(), c);
}

double line_integral(const PatchTag& patch, const Vec3& from, const Vec3& to, const Coupling& c,
                     int steps) {
  require(steps >= 8, "line_integral: at least 8 panels are required");
  const Vec3 d = to - from;
  if (d.squaredNorm() == 0.0) return 0.0;
  const double scale = std::max(from.norm(), to.norm());
  require(segment_distance_to_origin(from, to) > 1e-12 * scale,
          "line_integral: segment passes through the origin");
  for (const Vec3& end : {from, to}) {
    require(patch.covers(MomentumPoint::cartesian(end)),
            "line_integral: segment leaves the patch; split it at the equator");
  }
  double sum = 0.0;
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    for (int q = 0; q < 3; ++q) {
      const double t = (k + kPanelNodes[q]) * h;
      const MomentumPoint pt = MomentumPoint::cartesian(from + t * d);
      if (!patch.covers(pt))
        throw ValidationError("line_integral: segment leaves the patch; split it at the equator");
      sum += kPanelWeights[q] * h * gauge_potential(patch, pt, c).dot(d);
    }
  }
  return sum;
}

double line_integral(const PatchTag& patch, const MomentumPoint& from, const MomentumPoint& to,
                     const Coupling& c, int steps) {
  return line_integral(patch, from.cartesian(), to.cartesian(), c, steps);
}

double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = a.norm(), lb = b.norm(), lc = c.norm();
  const double num = det3(a, b, c);
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(num, den);
}

double triangle_cocycle(const Vec3& p, const Vec3& v1, const Vec3& v2, const Coupling& c) {
  const Vec3 a = p, b = p + v1, d = p + v1 + v2;
  const double scale = std::max({a.norm(), b.norm(), d.norm()});
  if ((b - a).cross(d - a).norm() <= 1e-14 * scale * scale) return 0.0;
  require(!origin_in_triangle(a, b, d), "triangle_cocycle: origin lies on the triangle");
  return c.e * c.g * solid_angle(a, b, d);
}

double tetrahedron_cocycle(const Vec3& p, const Vec3& v1, const Vec3& v2, const Vec3& v3,
                           const Coupling& c) {
  const std::array<Vec3, 4> v{p, p + v1, p + v1 + v2, p + v1 + v2 + v3};
  const double scale = std::max({v[0].norm(), v[1].norm(), v[2].norm(), v[3].norm()});
  const double vol6 = det3(v[1] - v[0], v[2] - v[0], v[3] - v[0]);
  if (std::abs(vol6) <= 1e-14 * scale * scale * scale) return 0.0;
  // outward orientation when vol6 > 0
  const std::array<std::array<int, 3>, 4> facets{{{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}};
  double total = 0.0;
  for (const auto& f : facets) {
    require(!origin_in_triangle(v[f[0]], v[f[1]], v[f[2]]),
            "tetrahedron_cocycle: origin lies on a facet");
    total += solid_angle(v[f[0]], v[f[1]], v[f[2]]);
  }
  if (vol6 < 0.0) total = -total;
  return c.e * c.g * total;
}

double residual_mod_2pi(double angle) {
  const double r = std::remainder(angle, 2.0 * kPi);
  return std::abs(r);
}

DiracCheck dirac_check(const Coupling& c) {
  const double twice = 2.0 * c.e * c.g;
  DiracCheck out;
  const double nearest = std::round(twice);
  out.n = static_cast<long>(nearest);
  out.deviation = std::abs(twice - nearest);
  out.quantized = out.deviation < 1e-12;
  return out;
}

std::complex<double> transition_function(double phi, long n) {
  return std::polar(1.0, static_cast<double>(n) * phi);
}

double sphere_flux(double radius, const Coupling& c, const AngularGrid& grid) {
  require(radius > 0.0, "sphere_flux: radius must be positive");
  const cplx flux = grid.integrate([&](double t, double p) -> cplx {
    const MomentumPoint pt = MomentumPoint::spherical(radius, t, p);
    return field_strength(pt, c).dot(pt.direction()) * radius * radius;
  });
  return flux.real();
}

double patch_holonomy(double theta, double radius, const Coupling& c, int steps) {
  require(north().covers(theta) && south().covers(theta),
          "patch_holonomy: latitude must lie in the overlap band");
  require(steps >= 8, "patch_holonomy: at least 8 steps are required");
  // The integrand is constant on the circle, so the trapezoid rule is exact.
  double sum = 0.0;
  const double dphi = 2.0 * kPi / steps;
  for (int k = 0; k < steps; ++k) {
    const MomentumPoint pt = MomentumPoint::spherical(radius, theta, k * dphi);
    const Vec3 diff = gauge_potential(north(), pt, c) - gauge_potential(south(), pt, c);
    const Vec3 tangent = radius * std::sin(theta) * pt.phi_hat();
    sum += diff.dot(tangent) * dphi;
  }
  return c.e * sum;
}

}  // namespace helikin
