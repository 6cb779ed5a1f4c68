#include "helikin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "helikin/errors.hpp"

namespace helikin::specfun {

namespace {

// P_n(x) and P_n'(x) for |x| < 1.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) return {x, 1.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  require(order >= 1, "gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  QuadratureRule rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

namespace {

double jacobi_binomial_sum(int n, double alpha, double beta, double z) {
  const double lo = 0.5 * (z - 1.0);
  const double hi = 0.5 * (z + 1.0);
  double sum = 0.0;
  for (int s = 0; s <= n; ++s) {
    sum += binomial(n + alpha, n - s) * binomial(n + beta, s) * std::pow(lo, s) *
           std::pow(hi, n - s);
  }
  return sum;
}

}  // namespace

double jacobi_poly(int n, double alpha, double beta, double z) {
  require(n >= 0, "jacobi_poly: degree must be non-negative");
  require(std::isfinite(alpha) && std::isfinite(beta), "jacobi_poly: parameters must be finite");
  if (n == 0) return 1.0;
  const double ab = alpha + beta;
  double prev = 1.0;
  double cur = (alpha + 1.0) + 0.5 * (ab + 2.0) * (z - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
    if (a1 == 0.0) return jacobi_binomial_sum(n, alpha, beta, z);
    const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
    const double next = ((a2 + a3 * z) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_poly(double n, double alpha, double beta, double z) {
  require(std::isfinite(n) && n >= 0.0 && std::floor(n) == n,
          "jacobi_poly: degree must be a non-negative integer");
  return jacobi_poly(static_cast<int>(n), alpha, beta, z);
}

double laguerre_poly(int v, double a, double x) {
  require(v >= 0, "laguerre_poly: degree must be non-negative");
  if (v == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int k = 1; k < v; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_p(int l, double x) {
  require(l >= 0, "legendre_p: degree must be non-negative");
  if (l == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < l; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Q_l(y) from its hypergeometric series in 1/y^2; used for y > 1.1.
double legendre_q_series(int l, double y) {
  const double z = 1.0 / (y * y);
  const double a = 0.5 * (l + 1.0);
  const double b = 0.5 * (l + 2.0);
  const double c = l + 1.5;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 5000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  const double log_pref = 0.5 * std::log(std::numbers::pi) + log_gamma(l + 1.0) -
                          log_gamma(l + 1.5) - (l + 1.0) * std::log(2.0 * y);
  return std::exp(log_pref) * sum;
}

}  // namespace

std::vector<double> legendre_q_table(int lmax, double y) {
  require(lmax >= 0, "legendre_q_table: lmax must be non-negative");
  require(y > 1.0, "legendre_q_table: argument must exceed 1");
  std::vector<double> q(lmax + 1);
  const double q0 = 0.5 * std::log1p(2.0 / (y - 1.0));
  if (y <= 1.1) {
    // Upward recurrence loses at most a few digits this close to the cut.
    q[0] = q0;
    if (lmax >= 1) q[1] = y * q0 - 1.0;
    for (int k = 1; k < lmax; ++k) q[k + 1] = ((2.0 * k + 1.0) * y * q[k] - k * q[k - 1]) / (k + 1.0);
    return q;
  }
  // Q_l is the minimal solution for y > 1: seed at the top and recur down.
  double upper = legendre_q_series(lmax + 1, y);
  double cur = legendre_q_series(lmax, y);
  q[lmax] = cur;
  for (int k = lmax; k >= 1; --k) {
    const double lower = ((2.0 * k + 1.0) * y * cur - (k + 1.0) * upper) / k;
    q[k - 1] = lower;
    upper = cur;
    cur = lower;
  }
  q[0] = q0;
  return q;
}

double legendre_q(int l, double y) { return legendre_q_table(l, y)[l]; }

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

double log_gamma(double x) {
  require(x > 0.0, "log_gamma: argument must be positive");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double binomial(double x, int k) {
  require(k >= 0, "binomial: k must be non-negative");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (x - i) / (i + 1.0);
  return r;
}

double wigner_d(HalfInt j, HalfInt m1, HalfInt m2, double beta) {
  require(j.twice() >= 0, "wigner_d: j must be non-negative");
  require(m1.abs() <= j && m2.abs() <= j, "wigner_d: |m| must not exceed j");
  require(((j - m1).twice() % 2 == 0) && ((j - m2).twice() % 2 == 0),
          "wigner_d: j - m must be an integer");
  // All quantities below are integers.
  const int jpm = (j + m2).twice() / 2;   // j + m
  const int jmm = (j - m2).twice() / 2;   // j - m
  const int jpm1 = (j + m1).twice() / 2;  // j + m'
  const int jmm1 = (j - m1).twice() / 2;  // j - m'
  const int diff = (m1 - m2).twice() / 2; // m' - m
  const int k = std::min({jpm, jmm, jpm1, jmm1});
  int a = 0, lambda = 0;
  if (k == jpm) {
    a = diff;
    lambda = diff;
  } else if (k == jmm) {
    a = -diff;
  } else if (k == jpm1) {
    a = -diff;
  } else {
    a = diff;
    lambda = diff;
  }
  const int b = j.twice() - 2 * k - a;
  const double log_ratio = log_gamma(j.twice() - k + 1.0) - log_gamma(k + a + 1.0) -
                           log_gamma(j.twice() - 2.0 * k - a + 1.0) -
                           (log_gamma(k + b + 1.0) - log_gamma(b + 1.0) - log_gamma(k + 1.0));
  const double sign = (lambda % 2 == 0) ? 1.0 : -1.0;
  const double s = std::sin(0.5 * beta);
  const double c = std::cos(0.5 * beta);
  return sign * std::exp(0.5 * log_ratio) * std::pow(s, a) * std::pow(c, b) *
         jacobi_poly(k, static_cast<double>(a), static_cast<double>(b), std::cos(beta));
}

}  // namespace helikin::specfun
