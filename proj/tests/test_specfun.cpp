#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helikin/errors.hpp"
#include "helikin/specfun.hpp"

using namespace helikin;
using namespace helikin::specfun;

namespace {

// Independent oracles: explicit finite sums in quad precision, so the
// cancellation between large alternating terms stays far below the tolerances.
using quad = __float128;

quad binom_q(quad x, int k) {
  quad r = 1;
  for (int i = 0; i < k; ++i) r *= (x - i) / (i + 1);
  return r;
}

quad ipow(quad x, int k) {
  quad r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double jacobi_sum(int n, double a, double b, double z) {
  quad s = 0;
  for (int k = 0; k <= n; ++k) {
    s += binom_q(quad(n) + a, n - k) * binom_q(quad(n) + b, k) * ipow((quad(z) - 1) / 2, k) *
         ipow((quad(z) + 1) / 2, n - k);
  }
  return static_cast<double>(s);
}

double laguerre_sum(int v, double a, double x) {
  quad s = 0;
  quad fact = 1;
  for (int k = 0; k <= v; ++k) {
    if (k > 0) fact *= k;
    s += ((k % 2) ? -1 : 1) * binom_q(quad(v) + a, v - k) * ipow(quad(x), k) / fact;
  }
  return static_cast<double>(s);
}

// Q_l(y) = 1/2 * integral_{-1}^{1} P_l(x) / (y - x) dx, by brute-force
// composite Simpson in a variable that clusters points near x = 1.
double legendre_q_quadrature(int l, double y) {
  auto legendre = [](int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  // x = 1 - 2 s^2, s in [0, 1]
  const int n = 200000;
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = i * h;
    const double x = 1.0 - 2.0 * s * s;
    const double f = legendre(l, x) / (y - x) * 4.0 * s;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  return 0.5 * sum * h / 3.0;
}

double fact(int n) { return std::tgamma(n + 1.0); }

// Wigner d^j_{m1 m2}(beta) by the explicit Wigner sum (arguments doubled).
double wigner_sum(int tj, int tm1, int tm2, double beta) {
  const int jp1 = (tj + tm1) / 2, jm1 = (tj - tm1) / 2, jp2 = (tj + tm2) / 2, jm2 = (tj - tm2) / 2;
  const int dm = (tm1 - tm2) / 2;
  const double pref = std::sqrt(fact(jp1) * fact(jm1) * fact(jp2) * fact(jm2));
  double s = 0.0;
  for (int k = 0; k <= tj; ++k) {
    if (jp2 - k < 0 || dm + k < 0 || jm1 - k < 0) continue;
    const double sign = (dm + k) % 2 ? -1.0 : 1.0;
    s += sign * std::pow(std::cos(beta / 2), tj - dm - 2 * k) * std::pow(std::sin(beta / 2), dm + 2 * k) /
         (fact(jp2 - k) * fact(k) * fact(dm + k) * fact(jm1 - k));
  }
  return pref * s;
}

}  // namespace

TEST_CASE("jacobi_poly examples") {
  CHECK(jacobi_poly(0, 0.3, -0.2, 0.7) == 1.0);
  CHECK(jacobi_poly(1, 0.0, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(jacobi_poly(1, 0.0, 0.0, 0.5) == doctest::Approx(jacobi_sum(1, 0.0, 0.0, 0.5)));
  CHECK(jacobi_poly(2, 1.0, 1.0, 0.0) == doctest::Approx(jacobi_sum(2, 1.0, 1.0, 0.0)).epsilon(1e-14));
  CHECK_THROWS_AS(jacobi_poly(1.5, 0.0, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(jacobi_poly(-1, 0.0, 0.0, 0.1), ValidationError);
}

TEST_CASE("jacobi_poly matches explicit sum for n <= 20") {
  const std::vector<double> params{0.0, 0.5, -0.5, 1.0, 2.5, -0.75};
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (double a : params)
      for (double b : params)
        for (double z = -1.0; z <= 1.0 + 1e-12; z += 0.125) {
          const double ref = jacobi_sum(n, a, b, z);
          const double got = jacobi_poly(n, a, b, z);
          const double scale = std::max(1.0, std::abs(ref));
          worst = std::max(worst, std::abs(got - ref) / scale);
        }
  CHECK(worst < 1e-10);
}

TEST_CASE("jacobi_poly with parameters below -1 (diagnostic range)") {
  // degenerate recurrence denominators fall back to the explicit sum
  for (int n = 0; n <= 6; ++n)
    for (double a : {-1.0, -2.0, -1.5})
      for (double b : {-1.0, 0.0, 1.0, -2.0}) {
        const double ref = jacobi_sum(n, a, b, 0.3);
        CHECK(jacobi_poly(n, a, b, 0.3) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
      }
}

TEST_CASE("Jacobi parity P^(a,b)_n(-z) = (-1)^n P^(b,a)_n(z)") {
  for (int n = 0; n <= 10; ++n)
    for (double a : {0.0, 0.5, -0.5, 1.0})
      for (double b : {0.0, 0.5, -0.5, 1.0})
        for (double z : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
          const double lhs = jacobi_poly(n, a, b, -z);
          const double rhs = (n % 2 ? -1.0 : 1.0) * jacobi_poly(n, b, a, z);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("laguerre_poly examples") {
  CHECK(laguerre_poly(0, 0.7, 3.0) == 1.0);
  CHECK(laguerre_poly(1, 0.5, 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(laguerre_poly(3, 1.0, 1.0) == doctest::Approx(laguerre_sum(3, 1.0, 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(laguerre_poly(-1, 0.0, 1.0), ValidationError);
}

TEST_CASE("laguerre_poly matches explicit sum for v <= 20, x <= 50") {
  double worst = 0.0;
  for (int v = 0; v <= 20; ++v)
    for (double a : {-0.5, 0.0, 0.5, 1.0, 1.3660254037844386, 3.5})
      for (double x = 0.0; x <= 50.0; x += 2.5) {
        const double ref = laguerre_sum(v, a, x);
        worst = std::max(worst, std::abs(laguerre_poly(v, a, x) - ref) / std::max(1.0, std::abs(ref)));
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("gauss_legendre rules") {
  const auto r1 = gauss_legendre(1);
  REQUIRE(r1.nodes.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  const auto r3 = gauss_legendre(3);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += r3.weights[i] * std::pow(r3.nodes[i], 4);
  CHECK(std::abs(s - 0.4) < 1e-14);

  CHECK_THROWS_AS(gauss_legendre(0), ValidationError);
}

TEST_CASE("gauss_legendre invariants: weight sum and polynomial exactness") {
  for (int order : {1, 2, 3, 5, 8, 16, 33, 64, 128}) {
    const auto r = gauss_legendre(order);
    double sum = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 2.0) < 1e-13);
    for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (int deg = 0; deg <= std::min(2 * order - 1, 60); ++deg) {
      double q = 0.0;
      for (int i = 0; i < order; ++i) q += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(q - exact) < 1e-12);
    }
  }
}

TEST_CASE("gauss_legendre on an interval") {
  const auto r = gauss_legendre(6, 1.0, 3.0);
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += r.weights[i] * std::exp(r.nodes[i]);
  CHECK(s == doctest::Approx(std::exp(3.0) - std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("legendre_p closed forms") {
  for (double x : {-0.7, 0.0, 0.3, 1.0}) {
    CHECK(legendre_p(2, x) == doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-15).scale(1.0));
    CHECK(legendre_p(3, x) == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-15).scale(1.0));
  }
}

TEST_CASE("legendre_q against quadrature of the defining integral") {
  for (double y : {1.001, 1.05, 1.1, 1.25, 2.0, 5.0, 40.0}) {
    const auto table = legendre_q_table(8, y);
    for (int l = 0; l <= 8; ++l) {
      const double ref = legendre_q_quadrature(l, y);
      CHECK(table[l] == doctest::Approx(ref).epsilon(1e-8));
      CHECK(legendre_q(l, y) == doctest::Approx(table[l]).epsilon(1e-14));
    }
  }
  CHECK(legendre_q(0, 3.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(legendre_q(0, 1.0), ValidationError);
}

TEST_CASE("Q_l - Q_0 tends to -H_l as y -> 1") {
  for (int l = 0; l <= 6; ++l) {
    const double y = 1.0 + 1e-9;
    CHECK(legendre_q(l, y) - legendre_q(0, y) == doctest::Approx(-harmonic_number(l)).epsilon(1e-6));
  }
}

TEST_CASE("harmonic numbers, log gamma, binomial") {
  CHECK(harmonic_number(0) == 0.0);
  CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(3.5) == doctest::Approx(std::log(15.0 / 8.0 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
  CHECK(binomial(5.0, 2) == doctest::Approx(10.0));
  CHECK(binomial(0.5, 2) == doctest::Approx(-0.125));
}

TEST_CASE("wigner_d matches the explicit Wigner sum") {
  double worst = 0.0;
  for (int tj = 0; tj <= 9; ++tj)
    for (int tm1 = -tj; tm1 <= tj; tm1 += 2)
      for (int tm2 = -tj; tm2 <= tj; tm2 += 2)
        for (double beta : {0.0, 0.3, 1.1, 1.5707963267948966, 2.4, 3.141592653589793}) {
          const double ref = wigner_sum(tj, tm1, tm2, beta);
          const double got = wigner_d(HalfInt::from_twice(tj), HalfInt::from_twice(tm1),
                                      HalfInt::from_twice(tm2), beta);
          worst = std::max(worst, std::abs(got - ref));
        }
  CHECK(worst < 1e-12);
  CHECK(wigner_d(HalfInt::from_twice(1), HalfInt::from_twice(1), HalfInt::from_twice(1), 0.8) ==
        doctest::Approx(std::cos(0.4)).epsilon(1e-15));
}
