#include "relaylab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

namespace relaylab::analytic {

namespace {

constexpr double kAbsTol = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// All half-line integrals run through the substitution x = u^2:
// PER_exact(gamma) ~ Q(sqrt(2 gamma)) has a sqrt cusp at gamma = 0 that
// defeats high-order rules, while f(u^2) * 2u is smooth there.
template <class F>
double integrate_half_line(F&& f, const char* what, int max_depth = 12) {
    double err = 0.0;
    auto g = [&f](double u) { return 2.0 * u * f(u * u); };
    const double value = GK::integrate(g, 0.0, kInf, max_depth, 1e-10, &err);
    if (!(err <= kAbsTol * std::max(1.0, std::abs(value))))
        throw NumericalError(std::string("quadrature did not converge in ") + what +
                             ": estimate " + std::to_string(value) + ", error bound " +
                             std::to_string(err));
    return value;
}

// Inner levels of nested integrals: no convergence check (the outer level's
// error estimate absorbs theirs), tighter depth.
template <class F>
double integrate_inner(F&& f) {
    auto g = [&f](double u) { return 2.0 * u * f(u * u); };
    return GK::integrate(g, 0.0, kInf, 10, 1e-11);
}

double pex(double gamma, int packet_len) { return per_conditional_exact(gamma, packet_len); }

}  // namespace

double ordered_snr_pdf(double x, int i, int n, double gamma_bar) {
    if (i < 1 || i > n) throw std::domain_error("ordered_snr_pdf: requires 1 <= i <= n");
    if (!(gamma_bar > 0.0)) throw std::domain_error("ordered_snr_pdf: requires gamma_bar > 0");
    if (x < 0.0) return 0.0;
    // n!/((i-1)!(n-i)!) * (1/g) e^{-(n-i+1)x/g} (1 - e^{-x/g})^{i-1}
    const double log_c =
        std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(i)) - std::lgamma(n - i + 1.0);
    const double u = -std::expm1(-x / gamma_bar);
    double log_pdf = log_c - std::log(gamma_bar) - (n - i + 1) * x / gamma_bar;
    if (i > 1) {
        if (u <= 0.0) return 0.0;
        log_pdf += (i - 1) * std::log(u);
    }
    return std::exp(log_pdf);
}

double per_quadrature_rayleigh(int packet_len, double gamma_bar) {
    if (!(gamma_bar > 0.0))
        throw std::domain_error("per_quadrature_rayleigh: requires gamma_bar > 0");
    return integrate_half_line(
        [=](double x) { return pex(x, packet_len) * std::exp(-x / gamma_bar) / gamma_bar; },
        "per_quadrature_rayleigh");
}

double per_quadrature_rayleigh_approx(int packet_len, double gamma_bar) {
    if (!(gamma_bar > 0.0))
        throw std::domain_error("per_quadrature_rayleigh_approx: requires gamma_bar > 0");
    return integrate_half_line(
        [=](double x) {
            return per_conditional_approx_product(x, packet_len).value() *
                   std::exp(-x / gamma_bar) / gamma_bar;
        },
        "per_quadrature_rayleigh_approx");
}

double per_quadrature_ordered(int i, const FrameConfig& cfg, double gamma_sd) {
    cfg.validate();
    const int n = cfg.n_packets;
    const int k = cfg.packet_len;
    return integrate_half_line(
        [=](double x) { return pex(x, k) * ordered_snr_pdf(x, i, n, gamma_sd); },
        "per_quadrature_ordered");
}

double per_quadrature_af(int i, const FrameConfig& cfg, const LinkBudget& budget) {
    cfg.validate();
    budget.validate();
    const int n = cfg.n_packets;
    const int k = cfg.packet_len;
    const double c1 = af_c1(budget);
    // E over gamma_rd (outer), gamma_sr, gamma_(i) (inner); the relayed SNR is
    // gamma_sr * w with w = v/(v+c1) once gamma_rd = v is fixed.
    return integrate_half_line(
        [&](double v) {
            const double w = v / (v + c1);
            const double inner = integrate_inner([&](double u) {
                const double boost_snr = u * w;
                const double innermost = integrate_inner([&](double x) {
                    return pex(x + boost_snr, k) * ordered_snr_pdf(x, i, n, budget.gamma_sd);
                });
                return innermost * std::exp(-u / budget.gamma_sr) / budget.gamma_sr;
            });
            return inner * std::exp(-v / budget.gamma_rd) / budget.gamma_rd;
        },
        "per_quadrature_af", 8);
}

double per_quadrature_df(int i, const FrameConfig& cfg, const LinkBudget& budget) {
    cfg.validate();
    budget.validate();
    const int n = cfg.n_packets;
    const int k = cfg.packet_len;
    const double p_sr = per_quadrature_rayleigh(k, budget.gamma_sr);
    const double p_direct = per_quadrature_ordered(i, cfg, budget.gamma_sd);
    const double p_mrc = integrate_half_line(
        [&](double v) {
            const double inner = integrate_inner([&](double x) {
                return pex(x + v, k) * ordered_snr_pdf(x, i, n, budget.gamma_sd);
            });
            return inner * std::exp(-v / budget.gamma_rd) / budget.gamma_rd;
        },
        "per_quadrature_df", 10);
    return p_sr * p_direct + (1.0 - p_sr) * p_mrc;
}

double per_total_quadrature(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                            SumBound bound) {
    cfg.validate();
    budget.validate();
    const int n = cfg.n_packets;
    const int m = cfg.n_relayed;
    const int last_direct = bound == SumBound::full ? n : n - 1;
    double total = 0.0;
    for (int i = 1; i <= m; ++i)
        total += mode == RelayMode::af_fixed_gain ? per_quadrature_af(i, cfg, budget)
                                                  : per_quadrature_df(i, cfg, budget);
    for (int j = m + 1; j <= last_direct; ++j)
        total += per_quadrature_ordered(j, cfg, budget.gamma_sd);
    return total / n;
}

}  // namespace relaylab::analytic
