#pragma once

#include <span>
#include <utility>

#include "relaylab/coefficients.hpp"
#include "relaylab/types.hpp"

namespace relaylab::analytic {

// Which packets the frame-average PER sums over. `full` covers all N packets
// (so M=0 reduces to the plain Rayleigh PER); `truncated` drops the strongest
// packet, reproducing the literal upper bound of the published total.
enum class SumBound { full, truncated };

// --- MGFs -----------------------------------------------------------------

// E[e^{-s gamma}] of an exponential SNR with mean gamma_bar.
double mgf_exponential(double s, double gamma_bar);

// MGF of the i-th smallest of n i.i.d. exponential SNRs with mean gamma_bar:
//   prod_{m=1}^{i} (n-m+1) / (s*gamma_bar + n-m+1)
double mgf_ordered(int i, int n, double gamma_bar, double s);

// Fixed-gain AF constant c1 = 1 + gamma_sr (average S->R SNR).
double af_c1(const LinkBudget& budget);

// MGF of the AF end-to-end SNR gamma_R = g_sr*g_rd/(g_rd + c1); closed form
// via the scaled exponential integral (no overflow for small gamma_rd).
double mgf_af_combined(double s, const LinkBudget& budget);

// --- Conditional PER ------------------------------------------------------

// Exact conditional PER of a K-symbol BPSK packet at instantaneous SNR gamma:
//   1 - (1 - Q(sqrt(2 gamma)))^K, evaluated via expm1/log1p.
Probability per_conditional_exact(double gamma, int packet_len);

// Conditional PER from the exponential-sum expansion (the term-by-term path;
// packet_len <= kMaxExpansionPacketLen).
Probability per_conditional_approx(double gamma, int packet_len);

// Same approximation evaluated in product form 1 - (1 - q~)^K, which is
// algebraically identical to the expansion but stable for any K.
Probability per_conditional_approx_product(double gamma, int packet_len);

// --- Unconditional PER (expansion path) ------------------------------------

// Plain Rayleigh-averaged PER (no ordering, no relay).
Probability per_rayleigh(int packet_len, double gamma_bar);

// PER of the i-th weakest packet decoded from the direct link only.
Probability per_direct_ordered(int i, const FrameConfig& cfg, const LinkBudget& budget);

// PER of the S->R link (relay decoding the broadcast).
Probability per_sr(int packet_len, double gamma_sr);

// PER of the i-th weakest packet after MRC of direct and AF-relayed copies.
Probability per_combined_af(int i, const FrameConfig& cfg, const LinkBudget& budget);

// Same for DF with decode-check gating at the relay:
//   PER_SR * PER_i + (1 - PER_SR) * E[PER(gamma_(i) + gamma_RD)]
Probability per_combined_df(int i, const FrameConfig& cfg, const LinkBudget& budget);

// Frame-average PER: relayed (combined) packets i = 1..M plus direct packets
// j = M+1..bound.
Probability per_total(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                      SumBound bound = SumBound::full);

// --- Scheme-level measures --------------------------------------------------

struct Efficiency {
    double forwarding_rate;      // M/N
    double spectral_efficiency;  // N/(N+M) = 1/(1+FR)
};
Efficiency efficiency(int n_relayed, int n_packets);

// Least-squares slope of -log10(PER) against snr_db/10, i.e. the estimated
// diversity order of a (snr_db, per) curve.
double diversity_slope(std::span<const std::pair<double, double>> curve);

}  // namespace relaylab::analytic
