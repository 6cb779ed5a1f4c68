#include "helikin/monopole_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "helikin/specfun.hpp"

namespace helikin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
// Central-difference step for the operator residuals: truncation ~h^2,
// round-off ~eps/h^2, both well below 1e-6.
constexpr double kFdStep = 1e-3;

using AngularFn = std::function<cplx(double, double)>;

cplx apply_l2(const AngularFn& f, double mu, double t, double p) {
  const double h = kFdStep;
  const double s = std::sin(t), c = std::cos(t);
  const cplx f0 = f(t, p);
  const cplx ftp = f(t + h, p), ftm = f(t - h, p);
  const cplx fpp = f(t, p + h), fpm = f(t, p - h);
  const cplx d_tt = (ftp - 2.0 * f0 + ftm) / (h * h);
  const cplx d_t = (ftp - ftm) / (2.0 * h);
  const cplx d_pp = (fpp - 2.0 * f0 + fpm) / (h * h);
  const cplx d_p = (fpp - fpm) / (2.0 * h);
  const double gauge = mu * (1.0 - c);
  const cplx covariant_sq = d_pp + 2.0 * kI * gauge * d_p - gauge * gauge * f0;
  return -(d_tt + (c / s) * d_t) - covariant_sq / (s * s) + mu * mu * f0;
}

cplx apply_lz(const AngularFn& f, double mu, double t, double p) {
  const double h = kFdStep;
  const cplx d_p = (f(t, p + h) - f(t, p - h)) / (2.0 * h);
  return -kI * d_p + mu * f(t, p);
}

// sqrt(sum w |a - b|^2) / sqrt(sum w |b|^2) over the grid.
template <class Residual, class Value>
double relative_norm(const AngularGrid& grid, Residual&& residual, Value&& value) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const double w = grid.theta_weight()[i] * grid.phi_weight();
      const double t = grid.theta()[i], p = grid.phi()[j];
      num += w * std::norm(residual(t, p));
      den += w * std::norm(value(t, p));
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void require_grid_for(const MonopoleIndex& idx, const AngularGrid& grid) {
  require(grid.n_phi() >= idx.l.twice() + 2,
          "AngularGrid: need at least 2*l_max+2 azimuthal nodes for l = " + idx.l.str());
}

}  // namespace

MonopoleIndex MonopoleIndex::make(HalfInt l, HalfInt m, HalfInt mu) {
  MonopoleIndex idx{l, m, mu};
  idx.validate();
  return idx;
}

MonopoleIndex MonopoleIndex::make(double l, double m, double mu) {
  return make(HalfInt::from_double(l), HalfInt::from_double(m), HalfInt::from_double(mu));
}

void MonopoleIndex::validate() const {
  require(mu.abs().twice() <= 1, "MonopoleIndex: helicity must be 0 or +-1/2, got " + mu.str());
  require(l >= mu.abs(), "MonopoleIndex: l must be >= |mu|");
  require((l - mu.abs()).is_integer(), "MonopoleIndex: l - |mu| must be an integer");
  require(m.abs() <= l, "MonopoleIndex: |m| must not exceed l");
  require((m - mu).is_integer(), "MonopoleIndex: m - mu must be an integer");
}

AngularGrid AngularGrid::uniform(int n_theta, int n_phi) {
  require(n_theta >= 1 && n_phi >= 1, "AngularGrid: sizes must be positive");
  AngularGrid g;
  const auto rule = specfun::gauss_legendre(n_theta);
  // descending cos(theta) gives ascending theta
  for (int i = n_theta - 1; i >= 0; --i) {
    g.theta_.push_back(std::acos(rule.nodes[i]));
    g.theta_weight_.push_back(rule.weights[i]);
  }
  g.phi_weight_ = 2.0 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) g.phi_.push_back(j * g.phi_weight_);
  return g;
}

AngularGrid AngularGrid::hemispheric(int n_per_half, int n_phi) {
  require(n_per_half >= 1 && n_phi >= 1, "AngularGrid: sizes must be positive");
  AngularGrid g;
  g.hemispheric_ = true;
  const auto upper = specfun::gauss_legendre(n_per_half, 0.0, 1.0);
  const auto lower = specfun::gauss_legendre(n_per_half, -1.0, 0.0);
  for (int i = n_per_half - 1; i >= 0; --i) {
    g.theta_.push_back(std::acos(upper.nodes[i]));
    g.theta_weight_.push_back(upper.weights[i]);
  }
  for (int i = n_per_half - 1; i >= 0; --i) {
    g.theta_.push_back(std::acos(lower.nodes[i]));
    g.theta_weight_.push_back(lower.weights[i]);
  }
  g.phi_weight_ = 2.0 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) g.phi_.push_back(j * g.phi_weight_);
  return g;
}

AngularGrid AngularGrid::refined(double factor) const {
  require(factor >= 1.0, "AngularGrid::refined: factor must be at least 1");
  auto scale = [factor](int n) { return static_cast<int>(std::ceil(n * factor)); };
  if (hemispheric_) return hemispheric(scale(n_theta() / 2), scale(n_phi()));
  return uniform(scale(n_theta()), scale(n_phi()));
}

cplx AngularGrid::integrate(const std::function<cplx(double, double)>& f) const {
  cplx sum = 0.0;
  for (int i = 0; i < n_theta(); ++i) {
    cplx ring = 0.0;
    for (int j = 0; j < n_phi(); ++j) ring += f(theta_[i], phi_[j]);
    sum += theta_weight_[i] * ring;
  }
  return sum * phi_weight_;
}

cplx monopole_harmonic(const MonopoleIndex& idx, double theta, double phi) {
  idx.validate();
  require(theta >= 0.0 && theta <= kPi, "monopole_harmonic: theta must lie in [0, pi]");
  const double norm = std::sqrt((idx.l.twice() + 1.0) / (4.0 * kPi));
  const double k = (idx.m - idx.mu).value();
  return norm * std::polar(1.0, k * phi) * specfun::wigner_d(idx.l, idx.m, idx.mu, theta);
}

cplx monopole_harmonic(const MonopoleIndex& idx, double theta, double phi, Patch patch) {
  const cplx y = monopole_harmonic(idx, theta, phi);
  if (patch == Patch::north) return y;
  return std::polar(1.0, idx.mu.twice() * phi) * y;
}

cplx angular_inner_product(const MonopoleIndex& a, const MonopoleIndex& b, const AngularGrid& grid) {
  a.validate();
  b.validate();
  require(a.mu == b.mu, "angular_inner_product: harmonics from different helicity sectors");
  require_grid_for(a.l > b.l ? a : b, grid);
  return grid.integrate([&](double t, double p) {
    return std::conj(monopole_harmonic(a, t, p)) * monopole_harmonic(b, t, p);
  });
}

double l2_residual(const MonopoleIndex& idx, const AngularGrid& grid) {
  idx.validate();
  require(grid.n_theta() >= 2 * idx.l.twice() + 8,
          "l2_residual: grid too coarse, need at least 4l+8 polar nodes");
  const double mu = idx.mu.value();
  const double ll = idx.l.value() * (idx.l.value() + 1.0);
  const AngularFn y = [&](double t, double p) { return monopole_harmonic(idx, std::clamp(t, 0.0, kPi), p); };
  return relative_norm(
      grid, [&](double t, double p) { return apply_l2(y, mu, t, p) - ll * y(t, p); }, y);
}

double lz_residual(const MonopoleIndex& idx, const AngularGrid& grid) {
  idx.validate();
  const double mu = idx.mu.value();
  const double m = idx.m.value();
  const AngularFn y = [&](double t, double p) { return monopole_harmonic(idx, t, p); };
  return relative_norm(
      grid, [&](double t, double p) { return apply_lz(y, mu, t, p) - m * y(t, p); }, y);
}

PrintedFormulaCheck check_printed_formula(const MonopoleIndex& idx, const AngularGrid& grid) {
  idx.validate();
  const double mu = idx.mu.value(), m = idx.m.value(), l = idx.l.value();
  const double degree = l + m;
  PrintedFormulaCheck out;
  const AngularFn printed = [&](double t, double p) -> cplx {
    const double z = std::cos(t);
    const double radial = std::pow(1.0 - z, -(mu + m) / 2.0) * std::pow(1.0 + z, -(mu - m) / 2.0) *
                          specfun::jacobi_poly(degree, -mu - m, -mu + m, z);
    return std::polar(1.0, (mu + m) * p) * radial;
  };
  const AngularFn y = [&](double t, double p) { return monopole_harmonic(idx, t, p); };

  cplx overlap = 0.0;
  double yy = 0.0, ww = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const double w = grid.theta_weight()[i] * grid.phi_weight();
      const double t = grid.theta()[i], p = grid.phi()[j];
      const cplx wv = printed(t, p), yv = y(t, p);
      if (!std::isfinite(wv.real()) || !std::isfinite(wv.imag())) out.finite = false;
      overlap += w * std::conj(yv) * wv;
      yy += w * std::norm(yv);
      ww += w * std::norm(wv);
    }
  }
  if (!out.finite || ww == 0.0) {
    out.finite = out.finite && ww > 0.0;
    out.proportionality_residual = 1.0;
    out.l2_residual = out.lz_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const cplx scale = overlap / yy;
  out.proportionality_residual = relative_norm(
      grid, [&](double t, double p) { return printed(t, p) - scale * y(t, p); }, printed);
  const double ll = l * (l + 1.0);
  out.l2_residual = relative_norm(
      grid, [&](double t, double p) { return apply_l2(printed, mu, t, p) - ll * printed(t, p); },
      printed);
  out.lz_residual = relative_norm(
      grid, [&](double t, double p) { return apply_lz(printed, mu, t, p) - m * printed(t, p); },
      printed);
  return out;
}

}  // namespace helikin
