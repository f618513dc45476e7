#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "relaylab/rng.hpp"
#include "relaylab/types.hpp"

namespace relaylab::sim {

// snr_level decides packet errors by drawing Bernoulli(PER(gamma)); the
// symbol_level oracle transmits actual BPSK symbols through the signal
// equations and hard-decides after MRC.
enum class Fidelity { snr_level, symbol_level };

struct PerEstimate {
    std::uint64_t packet_errors = 0;
    std::uint64_t packets = 0;
    std::uint64_t frames = 0;  // trial count
    double per = 0.0;
    double ci_low = 0.0;   // 95% Wilson interval
    double ci_high = 1.0;
    std::uint64_t seed = 0;
};

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z = 1.959963984540054);

// Exponential (Rayleigh-fading) SNR draw with the given mean.
double sample_rayleigh_snr(double gamma_bar, Philox4x32& rng);

// Indices of the m smallest SNRs, ascending by SNR; ties broken by lower
// original index.
std::vector<int> select_weakest(std::span<const double> snrs, int m);

// MRC sum of the direct SNR and the fixed-gain AF end-to-end relayed SNR.
double af_combined_snr(double gamma_direct, double gamma_sr, double gamma_rd,
                       const LinkBudget& budget);

struct FrameCounts {
    std::uint32_t errors = 0;
    std::uint32_t packets = 0;
};

// Reusable frame simulator (owns scratch buffers; one per worker).
class FrameSimulator {
public:
    FrameSimulator(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                   Fidelity fidelity);
    FrameCounts simulate(Philox4x32& rng);

private:
    RelayMode mode_;
    FrameConfig cfg_;
    LinkBudget budget_;
    Fidelity fidelity_;
    double c1_;
    std::vector<double> snr_;
    std::vector<int> order_;
    std::vector<char> relayed_;
};

// One frame of the broadcast/feedback/relay protocol; returns packet error
// counts for the frame.
FrameCounts simulate_frame(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                           Philox4x32& rng, Fidelity fidelity = Fidelity::snr_level);

// Aggregates frames into a packet-weighted PER with a 95% Wilson CI. Frame f
// draws from stream (seed, f), so the result is bit-identical for any worker
// count. n_workers = 0 picks the hardware concurrency.
PerEstimate estimate_per(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                         std::uint64_t n_frames, std::uint64_t seed,
                         Fidelity fidelity = Fidelity::snr_level, unsigned n_workers = 0);

// --- Symbol-level building blocks (exposed for oracle tests) ----------------

// K BPSK symbols over the direct link at instantaneous SNR gamma; true if any
// symbol erred.
bool symbol_packet_direct(double gamma, int packet_len, Philox4x32& rng);

// Direct + fixed-gain-AF relayed copies combined with exact per-branch MRC
// weights (relay-amplified noise variance included).
bool symbol_packet_af(double gamma_direct, double gamma_sr, double gamma_rd, double c1,
                      int packet_len, Philox4x32& rng);

struct DfSymbolOutcome {
    bool relay_decoded = false;  // relay's hard decisions matched the packet bit-for-bit
    bool packet_error = false;
};

// DF: the relayed branch is combined only when the relay decoded the packet
// exactly; otherwise the destination decodes the direct copy alone.
DfSymbolOutcome symbol_packet_df(double gamma_direct, double gamma_sr, double gamma_rd,
                                 int packet_len, Philox4x32& rng);

}  // namespace relaylab::sim
