// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "helikin/gauge_field.hpp"
#include "helikin/hopf.hpp"
#include "helikin/monopole_basis.hpp"
#include "helikin/screening.hpp"
#include "helikin/spectra.hpp"

using namespace helikin;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool origin_inside(const std::array<Vec3, 4>& v) {
  // Same orientation sign for the origin and each opposite vertex.
  auto side = [](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x) {
    return (b - a).cross(c - a).dot(x - a);
  };
  const int faces[4][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}};
  for (const auto& f : faces) {
    const double s_vertex = side(v[f[0]], v[f[1]], v[f[2]], v[f[3]]);
    const double s_origin = side(v[f[0]], v[f[1]], v[f[2]], Vec3::Zero());
    if (s_vertex * s_origin <= 0.0) return false;
  }
  return true;
}

std::vector<HalfInt> l_range(HalfInt mu, HalfInt lmax) {
  std::vector<HalfInt> out;
  for (HalfInt l = mu.abs(); l <= lmax; l = l + HalfInt::integer(1)) out.push_back(l);
  return out;
}

Verdict basis_fidelity() {
  const AngularGrid grid = AngularGrid::uniform(24, 24);
  const HalfInt lmax = HalfInt::from_twice(9);
  double gram = 0.0;
  for (int t : {-1, 0, 1}) {
    const HalfInt mu = HalfInt::from_twice(t);
    std::vector<MonopoleIndex> idx;
    for (HalfInt l : l_range(mu, lmax))
      for (HalfInt m = -l; m <= l; m = m + HalfInt::integer(1)) idx.push_back(MonopoleIndex::make(l, m, mu));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) {
        const cplx g = angular_inner_product(idx[a], idx[b], grid);
        gram = std::max(gram, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
  }
  double ylm = 0.0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double th = pi * u(rng), ph = 2 * pi * u(rng);
    for (int l = 0; l <= 4; ++l)
      for (int m = -l; m <= l; ++m) {
        const double cs = (m < 0 && (m % 2)) ? -1.0 : 1.0;  // Y_{l,-m} = (-1)^m conj Y_{lm}
        const double leg = cs * std::sph_legendre(l, std::abs(m), th);
        const cplx expected = leg * std::polar(1.0, m * ph);
        const cplx got = monopole_harmonic(MonopoleIndex::make(l, m, 0.0), th, ph);
        ylm = std::max(ylm, std::abs(got - expected));
      }
  }
  return {gram < 1e-10 && ylm < 1e-12, fmt("max|G-I| = %.2e, max|Y - Y_std| = %.2e", gram, ylm)};
}

Verdict flux_quantization() {
  const Coupling c{1.0, 0.5};
  const AngularGrid grid = AngularGrid::uniform(64, 64);
  double flux_err = 0.0;
  for (double r : {0.5, 1.0, 7.0}) flux_err = std::max(flux_err, std::abs(sphere_flux(r, c, grid) - 4 * pi * c.g));

  auto cocycle_residuals = [](double eg) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double lo = 1e300, hi = 0.0;
    int found = 0;
    while (found < 1000) {
      std::array<Vec3, 4> v;
      for (auto& x : v) x = Vec3(coord(rng), coord(rng), coord(rng));
      if (!origin_inside(v)) continue;
      ++found;
      const double w = tetrahedron_cocycle(v[0], v[1] - v[0], v[2] - v[1], v[3] - v[2], Coupling{1.0, eg});
      const double r = std::abs(std::remainder(w, 2 * pi));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::pair{lo, hi};
  };
  const auto [lo_half, hi_half] = cocycle_residuals(0.5);
  const auto [lo_off, hi_off] = cocycle_residuals(0.3);
  (void)lo_half;
  (void)hi_off;
  return {flux_err < 1e-8 && hi_half < 1e-8 && lo_off > 0.1,
          fmt("flux err %.2e; eg=1/2 max residual %.2e; eg=0.3 min residual %.3f", flux_err, hi_half, lo_off)};
}

Verdict chern_numbers() {
  const AngularGrid grid = AngularGrid::hemispheric(64, 128);
  const double cp = chern_number(1, grid), cm = chern_number(-1, grid);
  return {std::abs(cp - 1.0) < 1e-8 && std::abs(cm + 1.0) < 1e-8, fmt("c1 = %.12f and %.12f", cp, cm)};
}

Verdict helicity_eigenstates() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double th = std::acos(1.0 - 2.0 * u(rng)), ph = 2 * pi * u(rng);
    const PatchTag patch = th < pi / 2 ? north() : south();
    for (int s : {1, -1}) worst = std::max(worst, helicity_residual(patch, th, ph, s));
  }
  return {worst < 1e-12, fmt("max residual %.2e over 10^4 points, both patches and signs", worst)};
}

Verdict form_factor_consistency() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](bool upper) {
    const double c = upper ? 1e-3 + (1.0 - 1e-3) * u(rng) : -1e-3 - (1.0 - 1e-3) * u(rng);
    return MomentumPoint::spherical(0.2 + 3.0 * u(rng), std::acos(c), 2 * pi * u(rng));
  };
  bool exact = true;
  double kz = 0.0, collinear = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const MomentumPoint p = draw(true), q = draw(false);
    exact = exact && cross_patch_form_factor_sn(q, p).value == std::conj(cross_patch_form_factor(p, q).value);
    const Vec3 k = equator_crossing(p.cartesian(), q.cartesian());
    kz = std::max(kz, std::abs(k.z()));
    const Vec3 d = q.cartesian() - p.cartesian();
    collinear = std::max(collinear, (k - p.cartesian()).cross(d).norm() / d.squaredNorm());
    const double t = (k - p.cartesian()).dot(d) / d.squaredNorm();
    if (t < -1e-12 || t > 1 + 1e-12) collinear = 1.0;
  }
  const MomentumPoint p0 = MomentumPoint::spherical(1.0, 0.9, 0.5);
  const Vec3 dir = Vec3(0.3, -0.5, 0.2).normalized();
  auto diff = [&](double h) {
    const auto q = MomentumPoint::cartesian(p0.cartesian() + h * dir);
    return std::abs(overlap_form_factor(north(), p0, q).value - berry_phase_form_factor(north(), p0, q, 32).value);
  };
  double order = 1e300;
  for (double h : {0.04, 0.02, 0.01}) order = std::min(order, std::log2(diff(h) / diff(h / 2)));
  return {exact && kz < 1e-14 && collinear < 1e-12 && order >= 1.9,
          fmt("F_SN = conj F_NS exact; min observed order %.3f; max |k_E.z| %.1e", order, kz) +
              (exact ? "" : " (conjugation mismatch)") + fmt("; on-segment residual %.1e", collinear)};
}

Verdict oscillator_spectrum() {
  const RadialGrid grid = RadialGrid::linear(12.0, 2000);
  double worst = 0.0;
  for (int l = 0; l <= 3; ++l) {
    const SpectrumResult r = solve_radial_oscillator(HalfInt::integer(l), HalfInt{}, grid, 6, {true});
    for (int v = 0; v <= 5; ++v) worst = std::max(worst, std::abs(r.channels[v].energy - (2.0 * v + l + 1.5)));
  }
  std::vector<double> half_levels;
  for (int t = 1; t <= 7; t += 2) {
    const double l = 0.5 * t;
    for (int s : {1, -1}) {
      const SpectrumResult r =
          solve_radial_oscillator(HalfInt::from_twice(t), HalfInt::from_twice(s), grid, 6, {true});
      for (int v = 0; v <= 5; ++v) {
        const double exact = 2.0 * v + std::sqrt(l * (l + 1)) + 1.0;
        worst = std::max(worst, std::abs(r.channels[v].energy - exact));
        if (s == 1) half_levels.push_back(exact);
      }
    }
  }
  double min_gap = 1e300;
  for (std::size_t i = 0; i < half_levels.size(); ++i)
    for (std::size_t j = i + 1; j < half_levels.size(); ++j)
      min_gap = std::min(min_gap, std::abs(half_levels[i] - half_levels[j]));
  const int deg = degeneracy_count(2);
  return {worst < 1e-4 && deg == 6 && min_gap > 1e-6,
          fmt("max |E_num - E| = %.2e; degeneracy(N=2) = %.0f; min mu=1/2 gap %.4f", worst, deg, min_gap)};
}

Verdict hydrogen_validation() {
  const AngularGrid ang = AngularGrid::hemispheric(12, 16);
  double worst = 0.0;
  for (double z : {1.0, 2.0}) {
    const SpectrumResult r = solve_hydrogen(HalfInt{}, z, HalfInt{}, RadialGrid::rational(z, 200), ang, 3);
    for (int n = 1; n <= 3; ++n) {
      const double exact = -z * z / (2.0 * n * n);
      worst = std::max(worst, std::abs(r.channels[n - 1].energy / exact - 1.0));
    }
  }
  const Eigen::MatrixXcd h =
      hydrogen_hamiltonian(HalfInt::from_twice(1), 1.0, HalfInt::from_twice(1), RadialGrid::rational(1.0, 200), ang);
  const double herm = (h - h.adjoint()).cwiseAbs().maxCoeff();
  return {worst < 1e-3 && herm < 1e-10, fmt("max relative error %.2e; Hermiticity residual %.2e", worst, herm)};
}

Verdict screening_prediction() {
  const AngularGrid ang = AngularGrid::hemispheric(12, 16);
  const std::array<int, 3> sizes{100, 150, 225};
  const int count = 3;
  double worst = 0.0;
  std::string detail;
  bool finite = true;
  for (int s : {1, -1}) {
    const HalfInt mu = HalfInt::from_twice(s), l = HalfInt::from_twice(1);
    std::vector<std::vector<double>> deltas;
    for (int n : sizes) {
      const RadialGrid grid = RadialGrid::rational(1.0, n);
      const std::vector<SpectrumResult> pair{solve_hydrogen(HalfInt{}, 1.0, HalfInt{}, grid, ang, count),
                                             solve_hydrogen(mu, 1.0, l, grid, ang, count)};
      std::vector<double> d;
      for (const auto& row : splitting_report(pair)) {
        finite = finite && std::isfinite(row.delta);
        d.push_back(row.delta);
      }
      deltas.push_back(d);
    }
    for (std::size_t g = 1; g < deltas.size(); ++g)
      for (int k = 0; k < count; ++k)
        worst = std::max(worst, std::abs(deltas[g][k] - deltas[g - 1][k]) / std::abs(deltas[g - 1][k]));
    detail += fmt("mu=%+.1f ", 0.5 * s) +
              fmt("delta = %.6f, %.6f, %.6f; ", deltas.back()[0], deltas.back()[1], deltas.back()[2]);
  }
  return {finite && worst < 0.1, detail + fmt("max relative change between refinements %.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"basis fidelity", basis_fidelity},
      {"flux quantization", flux_quantization},
      {"Chern numbers", chern_numbers},
      {"helicity eigenstates", helicity_eigenstates},
      {"form-factor consistency", form_factor_consistency},
      {"oscillator spectrum", oscillator_spectrum},
      {"hydrogen validation", hydrogen_validation},
      {"screening prediction", screening_prediction},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%zu] %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
