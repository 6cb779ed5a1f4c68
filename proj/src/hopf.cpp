#include "helikin/hopf.hpp"

#include <cmath>
#include <numbers>

#include "helikin/errors.hpp"
#include "helikin/monopole_basis.hpp"

namespace helikin {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

int checked_sign(int mu_sign) {
  require(mu_sign == 1 || mu_sign == -1, "mu_sign must be +1 or -1");
  return mu_sign;
}

SectionSpinor helicity_spinor(const PatchTag& patch, double theta, double phi, int mu_sign) {
  const SectionSpinor z = section(patch, theta, phi);
  return mu_sign > 0 ? z : z.dual();
}

}  // namespace

SectionSpinor::SectionSpinor(cplx z1, cplx z2) : z1_(z1), z2_(z2) {
  const double norm2 = std::norm(z1) + std::norm(z2);
  require(std::isfinite(norm2) && std::abs(norm2 - 1.0) < 1e-13,
          "SectionSpinor: |z1|^2 + |z2|^2 must equal 1");
}

double SectionSpinor::theta() const { return 2.0 * std::atan2(std::abs(z2_), std::abs(z1_)); }
double SectionSpinor::alpha() const { return z1_ == 0.0 ? 0.0 : std::arg(z1_); }
double SectionSpinor::xi() const { return z2_ == 0.0 ? 0.0 : std::arg(z2_); }

SectionSpinor SectionSpinor::dual() const { return {-std::conj(z2_), std::conj(z1_)}; }

cplx SectionSpinor::inner(const SectionSpinor& other) const {
  return std::conj(z1_) * other.z1_ + std::conj(z2_) * other.z2_;
}

SectionSpinor spinor_from_angles(double theta, double phi, double alpha) {
  require(theta >= 0.0 && theta <= kPi, "spinor_from_angles: theta must lie in [0, pi]");
  return {std::polar(std::cos(0.5 * theta), alpha), std::polar(std::sin(0.5 * theta), phi + alpha)};
}

Vec3 hopf_project(const SectionSpinor& z) {
  const cplx cross = std::conj(z.z1()) * z.z2();
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(z.z1()) - std::norm(z.z2())};
}

Vec3 spin_vector(const SectionSpinor& z) { return 0.5 * hopf_project(z); }

ConnectionComponents connection_components(double theta) {
  require(theta >= 0.0 && theta <= kPi, "connection_components: theta must lie in [0, pi]");
  return {0.0, std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

double connection_form(const SectionSpinor& z, cplx dz1, cplx dz2) {
  const cplx w = -cplx(0.0, 1.0) * (std::conj(z.z1()) * dz1 + std::conj(z.z2()) * dz2);
  return w.real();
}

SectionSpinor section(const PatchTag& patch, double theta, double phi) {
  require(theta >= 0.0 && theta <= kPi, "section: theta must lie in [0, pi]");
  require(patch.covers(theta), std::string("section: theta outside patch ") + to_string(patch.patch));
  const double alpha = patch.patch == Patch::north ? 0.0 : -phi;
  return spinor_from_angles(theta, phi, alpha);
}

double helicity_residual(const PatchTag& patch, double theta, double phi, int mu_sign) {
  const int s = checked_sign(mu_sign);
  const SectionSpinor z = helicity_spinor(patch, theta, phi, s);
  const Vec3 n = MomentumPoint::spherical(1.0, theta, phi).direction();
  // (sigma . n) z
  const cplx nm(n.x(), -n.y()), np(n.x(), n.y());
  const cplx w1 = n.z() * z.z1() + nm * z.z2();
  const cplx w2 = np * z.z1() - n.z() * z.z2();
  return std::sqrt(std::norm(w1 - double(s) * z.z1()) + std::norm(w2 - double(s) * z.z2()));
}

double chern_number(int mu_sign, const AngularGrid& grid) {
  const int s = checked_sign(mu_sign);
  const cplx flux = grid.integrate([s](double theta, double phi) -> cplx {
    const PatchTag patch{hemisphere_of(theta), kDefaultOverlap};
    const SectionSpinor z = helicity_spinor(patch, theta, phi, s);
    const Vec3 n = MomentumPoint::spherical(1.0, theta, phi).direction();
    return n.dot(spin_vector(z));
  });
  return flux.real() / (2.0 * kPi);
}

double chern_number_lattice(int mu_sign, int n_theta, int n_phi) {
  const int s = checked_sign(mu_sign);
  require(n_theta >= 2 && n_phi >= 3, "chern_number_lattice: grid too coarse");
  // A single global (singular) frame is fine here: plaquette phases only see
  // the link products, which are gauge independent modulo 2 pi.
  auto state = [&](int i, int j) {
    const double theta = kPi * i / n_theta;
    const double phi = 2.0 * kPi * j / n_phi;
    const SectionSpinor z = spinor_from_angles(theta, phi, 0.0);
    return s > 0 ? z : z.dual();
  };
  double total = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const int jn = (j + 1) % n_phi;
      const SectionSpinor a = state(i, j), b = state(i + 1, j), c = state(i + 1, jn),
                          d = state(i, jn);
      const cplx loop = a.inner(b) * b.inner(c) * c.inner(d) * d.inner(a);
      total += std::arg(loop);
    }
  }
  // arg(<a|b><b|c><c|d><d|a>) is minus the Berry flux through the plaquette
  // traversed a -> b -> c -> d, which runs clockwise seen from outside.
  return total / (2.0 * kPi);
}

SectionSpinor su2_apply(const SectionSpinor& z, double omega, const Vec3& axis) {
  const double len = axis.norm();
  require(len > 0.0, "su2_apply: axis must be non-zero");
  const Vec3 n = axis / len;
  const double c = std::cos(omega), s = std::sin(omega);
  const cplx i(0.0, 1.0);
  // (n . sigma) z
  const cplx w1 = n.z() * z.z1() + cplx(n.x(), -n.y()) * z.z2();
  const cplx w2 = cplx(n.x(), n.y()) * z.z1() - n.z() * z.z2();
  cplx u1 = c * z.z1() + i * s * w1;
  cplx u2 = c * z.z2() + i * s * w2;
  const double norm = std::sqrt(std::norm(u1) + std::norm(u2));
  return {u1 / norm, u2 / norm};
}

Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
  const double len = axis.norm();
  require(len > 0.0, "rotate: axis must be non-zero");
  const Vec3 k = axis / len;
  return v * std::cos(angle) + k.cross(v) * std::sin(angle) + k * k.dot(v) * (1.0 - std::cos(angle));
}

}  // namespace helikin
