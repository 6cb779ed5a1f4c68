#pragma once

#include <vector>

#include "helikin/half_integer.hpp"

/// Special functions and quadrature shared by the rest of the library.
///
/// Everything here is pure and reentrant. Polynomials are evaluated by
/// ascending three-term recurrence, which is stable for the degrees this
/// library needs (n up to ~50).
namespace helikin::specfun {

/// Gauss-Legendre rule. Nodes ascend; weights are positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureRule gauss_legendre(int order);
/// Gauss-Legendre rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// Jacobi polynomial P_n^(alpha,beta)(z).
///
/// Uses the three-term recurrence; when a recurrence denominator vanishes
/// (possible for negative alpha, beta) it falls back to the explicit
/// binomial sum, which is well defined for every real alpha and beta.
double jacobi_poly(int n, double alpha, double beta, double z);
/// Same, but validates that n is a non-negative integer.
double jacobi_poly(double n, double alpha, double beta, double z);

/// Generalized Laguerre polynomial L_v^a(x).
double laguerre_poly(int v, double a, double x);

/// Legendre polynomial P_l(x).
double legendre_p(int l, double x);

/// Legendre functions of the second kind Q_0(y) .. Q_lmax(y) for y > 1.
std::vector<double> legendre_q_table(int lmax, double y);
double legendre_q(int l, double y);

/// Sum_{k=1}^{n} 1/k, with H_0 = 0.
double harmonic_number(int n);

/// log Gamma(x) for x > 0 (integer and half-integer arguments included).
double log_gamma(double x);

/// Generalized binomial coefficient x (x-1) ... (x-k+1) / k! for real x.
double binomial(double x, int k);

/// Wigner small-d matrix element d^j_{m1 m2}(beta), evaluated through a
/// Jacobi polynomial with non-negative integer parameters.
double wigner_d(HalfInt j, HalfInt m1, HalfInt m2, double beta);

}  // namespace helikin::specfun
