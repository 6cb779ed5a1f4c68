#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helikin/errors.hpp"

namespace helikin {

using Vec3 = Eigen::Vector3d;

/// Point in momentum space, stored in spherical coordinates with the
/// Cartesian view derived on demand. Atomic units.
class MomentumPoint {
 public:
  static MomentumPoint spherical(double p, double theta, double phi) {
    require(std::isfinite(p) && p > 0.0, "MomentumPoint: p must be positive");
    require(theta >= 0.0 && theta <= std::numbers::pi, "MomentumPoint: theta must lie in [0, pi]");
    require(std::isfinite(phi), "MomentumPoint: phi must be finite");
    MomentumPoint pt;
    pt.p_ = p;
    pt.theta_ = theta;
    pt.phi_ = wrap(phi);
    return pt;
  }

  static MomentumPoint cartesian(const Vec3& v) {
    const double p = v.norm();
    require(std::isfinite(p) && p > 0.0, "MomentumPoint: the origin has no direction");
    const double theta = std::acos(std::clamp(v.z() / p, -1.0, 1.0));
    return spherical(p, theta, std::atan2(v.y(), v.x()));
  }

  double p() const { return p_; }
  double theta() const { return theta_; }
  /// Azimuth in [0, 2 pi).
  double phi() const { return phi_; }

  Vec3 direction() const {
    const double s = std::sin(theta_);
    return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
  }
  Vec3 cartesian() const { return p_ * direction(); }

  /// Unit vector along increasing phi.
  Vec3 phi_hat() const { return {-std::sin(phi_), std::cos(phi_), 0.0}; }

 private:
  static double wrap(double phi) {
    double w = std::fmod(phi, 2.0 * std::numbers::pi);
    if (w < 0.0) w += 2.0 * std::numbers::pi;
    if (w >= 2.0 * std::numbers::pi) w = 0.0;
    return w;
  }

  double p_ = 1.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

enum class Patch { north, south };

/// Default half-width of the overlap band around the equator (5 degrees).
inline constexpr double kDefaultOverlap = std::numbers::pi / 36.0;

/// Gauge patch with its overlap band: the north patch covers
/// theta < pi/2 + eps, the south patch theta > pi/2 - eps.
struct PatchTag {
  Patch patch = Patch::north;
  double overlap = kDefaultOverlap;

  bool covers(double theta) const {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    return patch == Patch::north ? theta < half_pi + overlap : theta > half_pi - overlap;
  }
  bool covers(const MomentumPoint& pt) const { return covers(pt.theta()); }
};

inline PatchTag north(double overlap = kDefaultOverlap) { return {Patch::north, overlap}; }
inline PatchTag south(double overlap = kDefaultOverlap) { return {Patch::south, overlap}; }

/// Deterministic assignment used by kernels: the equator belongs to N.
inline Patch hemisphere_of(double theta) {
  return theta <= 0.5 * std::numbers::pi ? Patch::north : Patch::south;
}

inline const char* to_string(Patch p) { return p == Patch::north ? "N" : "S"; }

}  // namespace helikin
