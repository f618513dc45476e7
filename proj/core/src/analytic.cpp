#include "relaylab/analytic.hpp"

#include <cmath>
#include <string>

#include "relaylab/specfun.hpp"

namespace relaylab::analytic {

double mgf_exponential(double s, double gamma_bar) {
    if (!(s >= 0.0)) throw std::domain_error("mgf_exponential: requires s >= 0");
    if (!(gamma_bar > 0.0)) throw std::domain_error("mgf_exponential: requires gamma_bar > 0");
    return 1.0 / (1.0 + s * gamma_bar);
}

double mgf_ordered(int i, int n, double gamma_bar, double s) {
    if (i < 1 || i > n) throw std::domain_error("mgf_ordered: requires 1 <= i <= n");
    if (!(s >= 0.0)) throw std::domain_error("mgf_ordered: requires s >= 0");
    if (!(gamma_bar > 0.0)) throw std::domain_error("mgf_ordered: requires gamma_bar > 0");
    double value = 1.0;
    for (int m = 1; m <= i; ++m) {
        const double remaining = n - m + 1;
        value *= remaining / (s * gamma_bar + remaining);
    }
    return value;
}

double af_c1(const LinkBudget& budget) {
    budget.validate();
    return 1.0 + budget.gamma_sr;
}

double mgf_af_combined(double s, const LinkBudget& budget) {
    if (!(s >= 0.0)) throw std::domain_error("mgf_af_combined: requires s >= 0");
    budget.validate();
    const double c1 = af_c1(budget);
    const double c2 = 1.0 / (1.0 + s * budget.gamma_sr);
    if (s == 0.0) return 1.0;
    const double x = c1 * c2 / budget.gamma_rd;
    return c2 * (1.0 + (c1 - c1 * c2) / budget.gamma_rd * specfun::exp_integral_e1_scaled(x));
}

Probability per_conditional_exact(double gamma, int packet_len) {
    if (!(gamma >= 0.0)) throw std::domain_error("per_conditional_exact: requires gamma >= 0");
    if (packet_len < 1) throw std::domain_error("per_conditional_exact: requires packet_len >= 1");
    const double q = specfun::gaussian_q(std::sqrt(2.0 * gamma));
    return Probability(-std::expm1(packet_len * std::log1p(-q)));
}

Probability per_conditional_approx(double gamma, int packet_len) {
    if (!(gamma >= 0.0)) throw std::domain_error("per_conditional_approx: requires gamma >= 0");
    const PerExpansion& ex = expansion_for(packet_len);
    return Probability(ex.average([gamma](double rate) { return std::exp(-rate * gamma); }));
}

Probability per_conditional_approx_product(double gamma, int packet_len) {
    if (!(gamma >= 0.0))
        throw std::domain_error("per_conditional_approx_product: requires gamma >= 0");
    if (packet_len < 1)
        throw std::domain_error("per_conditional_approx_product: requires packet_len >= 1");
    const double q = specfun::gaussian_q_approx(std::sqrt(2.0 * gamma));
    return Probability(-std::expm1(packet_len * std::log1p(-q)));
}

Probability per_rayleigh(int packet_len, double gamma_bar) {
    const PerExpansion& ex = expansion_for(packet_len);
    return Probability(ex.average([gamma_bar](double s) { return mgf_exponential(s, gamma_bar); }));
}

Probability per_direct_ordered(int i, const FrameConfig& cfg, const LinkBudget& budget) {
    cfg.validate();
    budget.validate();
    if (i < 1 || i > cfg.n_packets)
        throw std::domain_error("per_direct_ordered: requires 1 <= i <= N");
    const PerExpansion& ex = expansion_for(cfg.packet_len);
    const int n = cfg.n_packets;
    const double g = budget.gamma_sd;
    return Probability(ex.average([&](double s) { return mgf_ordered(i, n, g, s); }));
}

Probability per_sr(int packet_len, double gamma_sr) {
    if (!(gamma_sr > 0.0)) throw std::domain_error("per_sr: requires gamma_sr > 0");
    const PerExpansion& ex = expansion_for(packet_len);
    return Probability(ex.average([gamma_sr](double s) { return mgf_exponential(s, gamma_sr); }));
}

Probability per_combined_af(int i, const FrameConfig& cfg, const LinkBudget& budget) {
    cfg.validate();
    budget.validate();
    if (i < 1 || i > cfg.n_packets)
        throw std::domain_error("per_combined_af: requires 1 <= i <= N");
    const PerExpansion& ex = expansion_for(cfg.packet_len);
    const int n = cfg.n_packets;
    return Probability(ex.average([&](double s) {
        return mgf_af_combined(s, budget) * mgf_ordered(i, n, budget.gamma_sd, s);
    }));
}

Probability per_combined_df(int i, const FrameConfig& cfg, const LinkBudget& budget) {
    cfg.validate();
    budget.validate();
    if (i < 1 || i > cfg.n_packets)
        throw std::domain_error("per_combined_df: requires 1 <= i <= N");
    const PerExpansion& ex = expansion_for(cfg.packet_len);
    const int n = cfg.n_packets;
    const double p_sr = per_sr(cfg.packet_len, budget.gamma_sr);
    const double p_direct = per_direct_ordered(i, cfg, budget);
    // Relay decoded: destination combines the direct copy with a fresh R->D copy.
    const double p_mrc = ex.average([&](double s) {
        return mgf_ordered(i, n, budget.gamma_sd, s) * mgf_exponential(s, budget.gamma_rd);
    });
    return Probability(p_sr * p_direct + (1.0 - p_sr) * p_mrc);
}

Probability per_total(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                      SumBound bound) {
    cfg.validate();
    budget.validate();
    const int n = cfg.n_packets;
    const int m = cfg.n_relayed;
    const int last_direct = bound == SumBound::full ? n : n - 1;
    double total = 0.0;
    for (int i = 1; i <= m; ++i)
        total += mode == RelayMode::af_fixed_gain ? per_combined_af(i, cfg, budget)
                                                  : per_combined_df(i, cfg, budget);
    for (int j = m + 1; j <= last_direct; ++j) total += per_direct_ordered(j, cfg, budget);
    return Probability(total / n);
}

Efficiency efficiency(int n_relayed, int n_packets) {
    if (n_packets < 1 || n_relayed < 0 || n_relayed > n_packets)
        throw std::domain_error("efficiency: requires 0 <= M <= N, N >= 1");
    const double fr = static_cast<double>(n_relayed) / n_packets;
    return {fr, static_cast<double>(n_packets) / (n_packets + n_relayed)};
}

double diversity_slope(std::span<const std::pair<double, double>> curve) {
    if (curve.size() < 2) throw std::domain_error("diversity_slope: need at least 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [snr_db, per] : curve) {
        if (!(per > 0.0)) throw std::domain_error("diversity_slope: PER values must be positive");
        const double x = snr_db / 10.0;
        const double y = -std::log10(per);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(curve.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::domain_error("diversity_slope: degenerate SNR grid");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace relaylab::analytic
