#include "helikin/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helikin/errors.hpp"
#include "helikin/gauge_field.hpp"
#include "helikin/specfun.hpp"

namespace helikin {

namespace {

constexpr double kPi = std::numbers::pi;

int helicity_sign(HalfInt mu) {
  require(mu.twice() >= -1 && mu.twice() <= 1, "helicity must be 0 or +-1/2");
  return mu.twice();
}

SectionSpinor spinor_with_sign(const SectionSpinor& z, int sign) { return sign > 0 ? z : z.dual(); }

cplx cross_value(const MomentumPoint& p, const MomentumPoint& q, int sign) {
  const MomentumPoint k = equator_crossing(p, q);
  const SectionSpinor zp = spinor_with_sign(section(north(), p.theta(), p.phi()), sign);
  const SectionSpinor zkn = spinor_with_sign(section(north(), k.theta(), k.phi()), sign);
  const SectionSpinor zks = spinor_with_sign(section(south(), k.theta(), k.phi()), sign);
  const SectionSpinor zq = spinor_with_sign(section(south(), q.theta(), q.phi()), sign);
  return zp.inner(zkn) * zkn.inner(zks) * zks.inner(zq);
}

void require_north_south(const MomentumPoint& p, const MomentumPoint& q) {
  require(hemisphere_of(p.theta()) == Patch::north && hemisphere_of(q.theta()) == Patch::south,
          "cross-patch form factor: first point must lie in the north and second in the south");
}

// One evaluation of the double angular quadrature on a fixed grid.
cplx matrix_element_on(const MonopoleIndex& row, const MonopoleIndex& col, double p, double q,
                       const PotentialSpec& pot, const AngularGrid& grid) {
  struct NodeValue {
    MomentumPoint point;
    cplx y_row, y_col;
    double weight;
  };
  // The q nodes are shifted by half an azimuthal step so that no pair of
  // nodes is antipodal (the straight segment would hit the origin).
  auto nodes_at = [&](double radius, double shift) {
    std::vector<NodeValue> out;
    out.reserve(static_cast<std::size_t>(grid.n_theta() * grid.n_phi()));
    for (int i = 0; i < grid.n_theta(); ++i) {
      const double t = grid.theta()[i];
      const Patch patch = hemisphere_of(t);
      for (int j = 0; j < grid.n_phi(); ++j) {
        const double f = grid.phi()[j] + shift;
        out.push_back({MomentumPoint::spherical(radius, t, f), monopole_harmonic(row, t, f, patch),
                       monopole_harmonic(col, t, f, patch),
                       grid.theta_weight()[i] * grid.phi_weight()});
      }
    }
    return out;
  };
  const auto np = nodes_at(p, 0.0);
  const auto nq = nodes_at(q, 0.5 * grid.phi_weight());
  cplx total = 0.0;
  for (const auto& a : np) {
    cplx inner = 0.0;
    for (const auto& b : nq) {
      inner += b.weight * screened_kernel(a.point, b.point, pot, row.mu) * b.y_col;
    }
    total += a.weight * std::conj(a.y_row) * inner;
  }
  return total;
}

}  // namespace

const char* to_string(FormFactorKind kind) {
  switch (kind) {
    case FormFactorKind::overlap: return "overlap";
    case FormFactorKind::phase_integral: return "phase_integral";
    case FormFactorKind::cross_patch: return "cross_patch";
  }
  return "?";
}

const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::harmonic_oscillator: return "harmonic_oscillator";
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::constant: return "constant";
    case PotentialKind::gaussian: return "gaussian";
  }
  return "?";
}

PotentialSpec PotentialSpec::coulomb(double z) {
  require(std::isfinite(z) && z > 0.0, "Coulomb charge Z must be positive");
  return {PotentialKind::coulomb, z};
}
PotentialSpec PotentialSpec::harmonic_oscillator() { return {PotentialKind::harmonic_oscillator, 1.0}; }
PotentialSpec PotentialSpec::constant(double value) {
  require(std::isfinite(value), "constant potential must be finite");
  return {PotentialKind::constant, value};
}
PotentialSpec PotentialSpec::gaussian(double strength) {
  require(std::isfinite(strength), "gaussian strength must be finite");
  return {PotentialKind::gaussian, strength};
}

double PotentialSpec::fourier(double q) const {
  require(std::isfinite(q) && q >= 0.0, "U(q) needs a finite |q| >= 0");
  switch (kind) {
    case PotentialKind::coulomb:
      require(q > 0.0, "Coulomb U(q) is singular at q = 0");
      return -strength / (2.0 * kPi * kPi * q * q);
    case PotentialKind::harmonic_oscillator:
      throw ValidationError("the oscillator potential has no pointwise Fourier transform");
    case PotentialKind::constant:
      return strength;
    case PotentialKind::gaussian:
      return strength * std::exp(-0.5 * q * q);
  }
  return 0.0;
}

SectionSpinor helicity_section(const PatchTag& patch, const MomentumPoint& k, HalfInt mu) {
  const int sign = helicity_sign(mu);
  require(sign != 0, "helicity_section: mu = 0 carries no spinor");
  return spinor_with_sign(section(patch, k.theta(), k.phi()), sign);
}

FormFactor overlap_form_factor(const PatchTag& patch, const MomentumPoint& p, const MomentumPoint& q,
                               HalfInt mu) {
  const int sign = helicity_sign(mu);
  require(patch.covers(p) && patch.covers(q), "overlap_form_factor: point outside the patch");
  if (sign == 0) return {1.0, FormFactorKind::overlap};
  return {helicity_section(patch, p, mu).inner(helicity_section(patch, q, mu)),
          FormFactorKind::overlap};
}

FormFactor berry_phase_form_factor(const PatchTag& patch, const MomentumPoint& p,
                                   const MomentumPoint& q, int steps, HalfInt mu) {
  helicity_sign(mu);
  const double phase = line_integral(patch, q, p, Coupling{1.0, mu.value()}, steps);
  return {std::polar(1.0, -phase), FormFactorKind::phase_integral};
}

Vec3 equator_crossing(const Vec3& p, const Vec3& q) {
  require(p.z() * q.z() <= 0.0 && p.z() != q.z(),
          "equator_crossing: endpoints must lie on opposite sides of the equator");
  Vec3 k = (q * p.z() - p * q.z()) / (p.z() - q.z());
  k.z() = 0.0;
  const double scale = std::max(p.norm(), q.norm());
  require(k.norm() > 1e-12 * scale, "equator_crossing: segment passes through the origin");
  return k;
}

MomentumPoint equator_crossing(const MomentumPoint& p, const MomentumPoint& q) {
  const Vec3 k = equator_crossing(p.cartesian(), q.cartesian());
  return MomentumPoint::spherical(k.norm(), 0.5 * kPi, std::atan2(k.y(), k.x()));
}

double transition_phase(const MomentumPoint& p, const MomentumPoint& q) {
  const Vec3 k = equator_crossing(p.cartesian(), q.cartesian());
  return std::atan2(k.y(), k.x());
}

FormFactor cross_patch_form_factor(const MomentumPoint& p, const MomentumPoint& q, HalfInt mu) {
  const int sign = helicity_sign(mu);
  require_north_south(p, q);
  if (sign == 0) return {1.0, FormFactorKind::cross_patch};
  return {cross_value(p, q, sign), FormFactorKind::cross_patch};
}

FormFactor cross_patch_form_factor_sn(const MomentumPoint& p, const MomentumPoint& q, HalfInt mu) {
  const FormFactor ns = cross_patch_form_factor(q, p, mu);
  return {std::conj(ns.value), FormFactorKind::cross_patch};
}

FormFactor patched_form_factor(const MomentumPoint& p, const MomentumPoint& q, HalfInt mu) {
  const Patch pp = hemisphere_of(p.theta());
  const Patch pq = hemisphere_of(q.theta());
  if (pp == pq) return overlap_form_factor(PatchTag{pp, kDefaultOverlap}, p, q, mu);
  if (pp == Patch::north) return cross_patch_form_factor(p, q, mu);
  return cross_patch_form_factor_sn(p, q, mu);
}

cplx screened_kernel(const MomentumPoint& p, const MomentumPoint& q, const PotentialSpec& pot,
                     HalfInt mu) {
  const double u = pot.fourier((p.cartesian() - q.cartesian()).norm());
  return u * patched_form_factor(p, q, mu).value;
}

MatrixElement partial_wave_matrix_element(const MonopoleIndex& row, const MonopoleIndex& col,
                                          double p, double q, const PotentialSpec& pot,
                                          const AngularGrid& grid) {
  row.validate();
  col.validate();
  require(row.mu == col.mu, "partial_wave_matrix_element: row and column must share mu");
  require(p > 0.0 && q > 0.0, "partial_wave_matrix_element: radii must be positive");
  const cplx coarse = matrix_element_on(row, col, p, q, pot, grid);
  const cplx fine = matrix_element_on(row, col, p, q, pot, grid.refined(1.5));
  MatrixElement out;
  out.value = fine;
  out.refinement_change = std::abs(fine - coarse);
  out.converged = out.refinement_change <= 1e-6 * std::abs(fine) || out.refinement_change <= 1e-12;
  return out;
}

double coulomb_global_partial_wave(HalfInt l, HalfInt mu, double p, double q, double z) {
  const int sign = helicity_sign(mu);
  require(l >= mu.abs() && (l - mu.abs()).is_integer(), "coulomb_global_partial_wave: invalid l");
  require(p > 0.0 && q > 0.0 && p != q, "coulomb_global_partial_wave: need distinct positive p, q");
  const double y = (p * p + q * q) / (2.0 * p * q);
  const double scale = -z / (kPi * p * q);
  if (sign == 0) return scale * specfun::legendre_q(l.as_int(), y);
  const int lo = (l - HalfInt::from_twice(1)).as_int();
  const auto table = specfun::legendre_q_table(lo + 1, y);
  return scale * 0.5 * (table[lo] + table[lo + 1]);
}

CoulombPatchCorrection::CoulombPatchCorrection(const MonopoleIndex& idx, int n_half, int n_phi) {
  idx.validate();
  require(n_half >= 1, "CoulombPatchCorrection: need at least one node per hemisphere");
  require(n_phi >= 2 && n_phi % 2 == 0,
          "CoulombPatchCorrection: the azimuthal node count must be even");
  const int sign = helicity_sign(idx.mu);
  if (sign == 0) return;  // the form factor is identically 1
  const AngularGrid grid = AngularGrid::hemispheric(n_half, 2);
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < grid.n_theta(); ++i) {
    const double tp = grid.theta()[i];
    for (int j = 0; j < grid.n_theta(); ++j) {
      const double tq = grid.theta()[j];
      if (hemisphere_of(tp) == hemisphere_of(tq)) continue;
      const cplx yq = monopole_harmonic(idx, tq, 0.0);
      const SectionSpinor zq = spinor_with_sign(spinor_from_angles(tq, 0.0, 0.0), sign);
      for (int k = 0; k < n_phi; ++k) {
        const double delta = (k + 0.5) * dphi;
        const cplx yp = monopole_harmonic(idx, tp, delta);
        const SectionSpinor zp = spinor_with_sign(spinor_from_angles(tp, delta, 0.0), sign);
        Node node;
        node.cos_tp = std::cos(tp);
        node.cos_tq = std::cos(tq);
        node.cos_gamma = std::clamp(
            node.cos_tp * node.cos_tq + std::sin(tp) * std::sin(tq) * std::cos(delta), -1.0, 1.0);
        node.sin_gamma = std::sqrt(1.0 - node.cos_gamma * node.cos_gamma);
        node.half_cos_gamma = std::sqrt(0.5 * (1.0 + node.cos_gamma));
        const double w = 2.0 * kPi * grid.theta_weight()[i] * grid.theta_weight()[j] * dphi;
        node.weight_times_fn = w * std::conj(yp) * yq * zp.inner(zq);
        nodes_.push_back(node);
      }
    }
  }
}

cplx CoulombPatchCorrection::operator()(double p, double q, double z) const {
  require(p > 0.0 && q > 0.0, "CoulombPatchCorrection: radii must be positive");
  const double pref = -z / (2.0 * kPi * kPi);
  cplx total = 0.0;
  for (const Node& n : nodes_) {
    const double pz = p * n.cos_tp, qz = q * n.cos_tq;
    const double t = pz / (pz - qz);
    // angle from p_hat to the crossing, and from the crossing to q_hat
    const double a = std::atan2(t * q * n.sin_gamma, p * (1.0 - t) + t * q * n.cos_gamma);
    const double b = std::atan2(n.sin_gamma, n.cos_gamma) - a;
    const double ratio = std::cos(0.5 * a) * std::cos(0.5 * b) / n.half_cos_gamma;
    const double dist2 = p * p + q * q - 2.0 * p * q * n.cos_gamma;
    total += n.weight_times_fn * ((ratio - 1.0) * pref / dist2);
  }
  return total;
}

}  // namespace helikin
