#pragma once

#include "relaylab/types.hpp"

namespace relaylab::specfun {

// Gaussian Q-function, the upper tail of the standard normal.
// Throws std::domain_error for non-finite x.
Probability gaussian_q(double x);

// Two-exponential approximation Q(x) ~= (1/4)((1/3)e^{-x^2/2} + e^{-2x^2/3}),
// defined for x >= 0; value lies in (0, 1/3].
double gaussian_q_approx(double x);

// Exponential integral E1(x) = Gamma(0,x) = int_x^inf e^{-t}/t dt, x > 0.
// Absolute error <= 1e-12 over [1e-8, 700].
double exp_integral_e1(double x);

// e^x * E1(x), evaluated without forming e^x (stable for large x).
double exp_integral_e1_scaled(double x);

// ln C(n,k). Exact-integer arithmetic for n <= 64, log-Gamma beyond.
double log_binomial(int n, int k);

}  // namespace relaylab::specfun
