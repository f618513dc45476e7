#include "relaylab/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace relaylab::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// E1 power series, good for 0 < x < 1:
//   E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;  // x^k / k!
    for (int k = 1; k <= 64; ++k) {
        term *= x / k;
        const double contrib = (k % 2 == 1 ? term : -term) / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Continued fraction for x >= 1 via modified Lentz; returns e^x * E1(x):
//   E1(x) = e^{-x} * 1/(x+1- 1^2/(x+3- 2^2/(x+5- ...)))
double e1_cf_scaled(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    throw NumericalError("exp_integral_e1: continued fraction failed to converge");
}

}  // namespace

Probability gaussian_q(double x) {
    if (!std::isfinite(x)) throw std::domain_error("gaussian_q: non-finite argument");
    return Probability(0.5 * std::erfc(x / std::numbers::sqrt2));
}

double gaussian_q_approx(double x) {
    if (!(x >= 0.0)) throw std::domain_error("gaussian_q_approx: requires x >= 0");
    const double x2 = x * x;
    return 0.25 * ((1.0 / 3.0) * std::exp(-0.5 * x2) + std::exp(-x2 * (2.0 / 3.0)));
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: requires x > 0");
    if (x < 1.0) return e1_series(x);
    return std::exp(-x) * e1_cf_scaled(x);
}

double exp_integral_e1_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1_scaled: requires x > 0");
    if (x < 1.0) return std::exp(x) * e1_series(x);
    return e1_cf_scaled(x);
}

double log_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n)
        throw std::domain_error("log_binomial: requires 0 <= k <= n");
    if (k == 0 || k == n) return 0.0;
    if (k > n - k) k = n - k;
    if (n <= 64) {
        // r stays integral after each division: r = C(n-k+i, i).
        unsigned __int128 r = 1;
        for (int i = 1; i <= k; ++i) {
            r *= static_cast<unsigned>(n - k + i);
            r /= static_cast<unsigned>(i);
        }
        return std::log(static_cast<double>(r));
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace relaylab::specfun
