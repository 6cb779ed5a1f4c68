#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "helikin/errors.hpp"
#include "helikin/monopole_basis.hpp"

using namespace helikin;
using std::numbers::pi;

namespace {

std::vector<MonopoleIndex> all_indices(int mu2, double lmax) {
  std::vector<MonopoleIndex> out;
  const HalfInt mu = HalfInt::from_twice(mu2);
  for (HalfInt l = mu.abs(); l.value() <= lmax + 1e-9; l = l + HalfInt::integer(1))
    for (HalfInt m = -l; m <= l; m = m + HalfInt::integer(1)) out.push_back(MonopoleIndex::make(l, m, mu));
  return out;
}

// Condon-Shortley Y_lm from the standard library's associated Legendre
// implementation (an independent code path).
cplx standard_ylm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const cplx pos = std::sph_legendre(l, am, theta) * std::polar(1.0, am * phi);
  if (m >= 0) return pos;
  return (am % 2 ? -1.0 : 1.0) * std::conj(pos);
}

}  // namespace

TEST_CASE("MonopoleIndex validation") {
  CHECK_NOTHROW(MonopoleIndex::make(0.5, -0.5, 0.5));
  CHECK_THROWS_AS(MonopoleIndex::make(0.0, 0.0, 0.5), ValidationError);   // l < |mu|
  CHECK_THROWS_AS(MonopoleIndex::make(1.5, 2.5, 0.5), ValidationError);   // |m| > l
  CHECK_THROWS_AS(MonopoleIndex::make(1.0, 0.5, 0.0), ValidationError);   // m - mu not integral
  CHECK_THROWS_AS(MonopoleIndex::make(1.0, 1.0, 1.0), ValidationError);   // |mu| > 1/2
  CHECK_THROWS_AS(MonopoleIndex::make(1.5, 0.5, 0.0), ValidationError);   // l - |mu| not integral
  CHECK_THROWS_AS(MonopoleIndex::make(0.3, 0.0, 0.0), ValidationError);
}

TEST_CASE("monopole_harmonic examples") {
  const auto y000 = MonopoleIndex::make(0.0, 0.0, 0.0);
  CHECK(std::abs(monopole_harmonic(y000, 1.2, 4.0) - 1.0 / std::sqrt(4 * pi)) < 1e-15);
  CHECK(std::abs(monopole_harmonic(y000, 1.2, 4.0) - 0.2820948) < 1e-7);
  const auto y100 = MonopoleIndex::make(1.0, 0.0, 0.0);
  CHECK(std::abs(monopole_harmonic(y100, 0.0, 0.0) - std::sqrt(3.0 / (4 * pi))) < 1e-15);
  CHECK(std::abs(monopole_harmonic(y100, 0.0, 0.0) - 0.4886025) < 1e-7);
  const auto yh = MonopoleIndex::make(0.5, 0.5, 0.5);
  CHECK(std::abs(monopole_harmonic(yh, 0.0, 0.0) - std::sqrt(2.0 / (4 * pi))) < 1e-15);
  CHECK(std::abs(monopole_harmonic(yh, 0.0, 0.0) - 0.3989423) < 1e-7);
}

TEST_CASE("lowest helicity harmonics in closed form") {
  const double c = std::sqrt(2.0 / (4 * pi));
  const auto up = MonopoleIndex::make(0.5, 0.5, 0.5);
  const auto down = MonopoleIndex::make(0.5, -0.5, 0.5);
  for (double t : {0.2, 1.0, 2.5})
    for (double f : {0.0, 1.3, 5.0}) {
      CHECK(std::abs(monopole_harmonic(up, t, f) - c * std::cos(t / 2)) < 1e-14);
      CHECK(std::abs(monopole_harmonic(down, t, f) - c * std::sin(t / 2) * std::polar(1.0, -f)) < 1e-14);
    }
}

TEST_CASE("southern gauge differs by e^{2 i mu phi}") {
  for (const auto& idx : all_indices(1, 2.5))
    for (double f : {0.4, 2.0, 4.4}) {
      const cplx n = monopole_harmonic(idx, 2.0, f, Patch::north);
      const cplx s = monopole_harmonic(idx, 2.0, f, Patch::south);
      CHECK(std::abs(s - std::polar(1.0, 2 * idx.mu.value() * f) * n) < 1e-14);
    }
}

TEST_CASE("AngularGrid integrates 1 to 4 pi") {
  for (auto g : {AngularGrid::uniform(8, 5), AngularGrid::hemispheric(7, 9), AngularGrid::uniform(64, 64)}) {
    const cplx total = g.integrate([](double, double) { return cplx(1.0); });
    CHECK(std::abs(total - 4 * pi) < 1e-12);
  }
  const auto r = AngularGrid::hemispheric(4, 6).refined(1.5);
  CHECK(r.is_hemispheric());
  CHECK(r.n_theta() == 12);
  CHECK(r.n_phi() == 9);
}

TEST_CASE("angular_inner_product examples") {
  const auto grid = AngularGrid::uniform(32, 32);
  const auto a = MonopoleIndex::make(0.5, 0.5, 0.5);
  const auto b = MonopoleIndex::make(1.5, 0.5, 0.5);
  CHECK(std::abs(angular_inner_product(a, a, grid) - 1.0) < 1e-10);
  CHECK(std::abs(angular_inner_product(a, b, grid)) < 1e-10);
  const auto z = MonopoleIndex::make(0.0, 0.0, 0.0);
  CHECK(std::abs(angular_inner_product(z, z, grid) - 1.0) < 1e-12);
  CHECK_THROWS_AS(angular_inner_product(a, MonopoleIndex::make(0.5, 0.5, -0.5), grid), ValidationError);
}

TEST_CASE("orthonormality for l <= 9/2 in every helicity sector") {
  const auto grid = AngularGrid::uniform(32, 32);
  for (int mu2 : {-1, 0, 1}) {
    const auto idx = all_indices(mu2, 4.5);
    double worst = 0.0;
    for (const auto& a : idx)
      for (const auto& b : idx)
        worst = std::max(worst, std::abs(angular_inner_product(a, b, grid) - (a == b ? 1.0 : 0.0)));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("sum rule sum_m |Y|^2 = (2l+1)/4pi at random angles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double t = pi * u(rng), f = 2 * pi * u(rng);
    for (int mu2 : {-1, 0, 1})
      for (double l : {0.5, 1.0, 1.5, 2.0, 3.5, 4.0}) {
        const HalfInt L = HalfInt::from_double(l), mu = HalfInt::from_twice(mu2);
        if (L < mu.abs() || !(L - mu.abs()).is_integer()) continue;
        double sum = 0.0;
        for (HalfInt m = -L; m <= L; m = m + HalfInt::integer(1))
          sum += std::norm(monopole_harmonic(MonopoleIndex::make(L, m, mu), t, f));
        CHECK(std::abs(sum - (2 * l + 1) / (4 * pi)) < 1e-10);
      }
  }
}

TEST_CASE("mu = 0 reduces to Condon-Shortley spherical harmonics") {
  const auto grid = AngularGrid::uniform(24, 24);
  double worst = 0.0;
  for (const auto& idx : all_indices(0, 6.0))
    for (double t : grid.theta())
      for (double f : grid.phi())
        worst = std::max(worst, std::abs(monopole_harmonic(idx, t, f) -
                                         standard_ylm(idx.l.as_int(), idx.m.as_int(), t, f)));
  CHECK(worst < 1e-12);
}

TEST_CASE("L^2 eigen-residual examples") {
  const auto grid = AngularGrid::uniform(256, 256);
  CHECK(l2_residual(MonopoleIndex::make(0.0, 0.0, 0.0), grid) < 1e-6);
  CHECK(l2_residual(MonopoleIndex::make(0.5, 0.5, 0.5), grid) < 1e-4);
  CHECK(l2_residual(MonopoleIndex::make(1.0, 1.0, 0.0), grid) < 1e-4);
}

TEST_CASE("L^2 and L_z residuals across indices") {
  const auto grid = AngularGrid::uniform(64, 64);
  for (int mu2 : {-1, 0, 1})
    for (const auto& idx : all_indices(mu2, 3.5)) {
      CHECK(l2_residual(idx, grid) < 1e-4);
      CHECK(lz_residual(idx, grid) < 1e-4);
    }
}

TEST_CASE("coarse grids are rejected") {
  CHECK_THROWS_AS(l2_residual(MonopoleIndex::make(4.5, 0.5, 0.5), AngularGrid::uniform(10, 64)),
                  ValidationError);
  CHECK_THROWS_AS(angular_inner_product(MonopoleIndex::make(4.5, 0.5, 0.5),
                                        MonopoleIndex::make(4.5, 0.5, 0.5), AngularGrid::uniform(32, 4)),
                  ValidationError);
}

TEST_CASE("printed Jacobi closed form: agreement only at m = mu = 0") {
  const auto grid = AngularGrid::uniform(48, 48);
  for (double l : {0.0, 1.0, 2.0, 3.0}) {
    const auto r = check_printed_formula(MonopoleIndex::make(l, 0.0, 0.0), grid);
    CHECK(r.finite);
    CHECK(r.proportionality_residual < 1e-12);
  }
  // With helicity the printed exponents give the wrong L_z eigenvalue.
  for (int mu2 : {-1, 1})
    for (const auto& idx : all_indices(mu2, 2.5)) {
      const auto r = check_printed_formula(idx, grid);
      CHECK(r.proportionality_residual > 0.5);
      CHECK(r.lz_residual > 0.5);
    }
}
