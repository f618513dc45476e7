#include "relaylab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "relaylab/analytic.hpp"

namespace relaylab::sim {

namespace {

double pex(double gamma, int packet_len) {
    return analytic::per_conditional_exact(gamma, packet_len);
}

// BPSK data bits, one u64 refill per 64 symbols.
class BitPool {
public:
    explicit BitPool(Philox4x32& rng) : rng_(rng) {}
    int next_bit() {
        if (left_ == 0) {
            bits_ = rng_.next_u64();
            left_ = 64;
        }
        const int b = static_cast<int>(bits_ & 1u);
        bits_ >>= 1;
        --left_;
        return b;
    }

private:
    Philox4x32& rng_;
    std::uint64_t bits_ = 0;
    int left_ = 0;
};

// All symbol-level paths work in the real-equivalent baseband model with
// Es = 1, N0 = 1: channel gains are real sqrt(gamma) representatives (BPSK
// with coherent MRC is invariant to channel phase), and each AWGN sample is
// the in-phase component, variance N0/2.
constexpr double kNoiseStd = 0.70710678118654752440;  // sqrt(1/2)

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double radius = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // The score bounds are exactly 0 / 1 at the extremes; keep them so despite
    // rounding.
    const double lo = successes == 0 ? 0.0 : std::max(0.0, center - radius);
    const double hi = successes == trials ? 1.0 : std::min(1.0, center + radius);
    return {lo, hi};
}

double sample_rayleigh_snr(double gamma_bar, Philox4x32& rng) {
    if (!(gamma_bar > 0.0)) throw std::domain_error("sample_rayleigh_snr: requires gamma_bar > 0");
    return rng.next_exponential(gamma_bar);
}

std::vector<int> select_weakest(std::span<const double> snrs, int m) {
    if (m < 0 || m > static_cast<int>(snrs.size()))
        throw std::domain_error("select_weakest: requires 0 <= m <= N");
    std::vector<int> order(snrs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return snrs[a] != snrs[b] ? snrs[a] < snrs[b] : a < b;
    });
    order.resize(m);
    return order;
}

double af_combined_snr(double gamma_direct, double gamma_sr, double gamma_rd,
                       const LinkBudget& budget) {
    if (!(gamma_direct >= 0.0) || !(gamma_sr >= 0.0) || !(gamma_rd >= 0.0))
        throw std::domain_error("af_combined_snr: requires nonnegative SNRs");
    const double c1 = analytic::af_c1(budget);
    return gamma_direct + gamma_sr * gamma_rd / (gamma_rd + c1);
}

bool symbol_packet_direct(double gamma, int packet_len, Philox4x32& rng) {
    const double h = std::sqrt(gamma);
    BitPool bits(rng);
    bool error = false;
    for (int k = 0; k < packet_len; ++k) {
        const double x = bits.next_bit() ? 1.0 : -1.0;
        const double y = h * x + kNoiseStd * rng.next_normal();
        if ((h * y < 0.0) != (x < 0.0)) error = true;
    }
    return error;
}

bool symbol_packet_af(double gamma_direct, double gamma_sr, double gamma_rd, double c1,
                      int packet_len, Philox4x32& rng) {
    const double h_sd = std::sqrt(gamma_direct);
    const double h_sr = std::sqrt(gamma_sr);
    const double h_rd = std::sqrt(gamma_rd);
    const double g = std::sqrt(1.0 / c1);  // fixed relay gain, Es = N0 = 1
    const double a_relay = g * h_rd * h_sr;
    const double relay_noise_var = g * g * h_rd * h_rd + 1.0;  // amplified + destination AWGN
    BitPool bits(rng);
    bool error = false;
    for (int k = 0; k < packet_len; ++k) {
        const double x = bits.next_bit() ? 1.0 : -1.0;
        const double y = h_sd * x + kNoiseStd * rng.next_normal();
        const double r = h_sr * x + kNoiseStd * rng.next_normal();          // heard at relay
        const double z = h_rd * g * r + kNoiseStd * rng.next_normal();      // forwarded
        const double decision = h_sd * y + (a_relay / relay_noise_var) * z;
        if ((decision < 0.0) != (x < 0.0)) error = true;
    }
    return error;
}

DfSymbolOutcome symbol_packet_df(double gamma_direct, double gamma_sr, double gamma_rd,
                                 int packet_len, Philox4x32& rng) {
    const double h_sd = std::sqrt(gamma_direct);
    const double h_sr = std::sqrt(gamma_sr);
    const double h_rd = std::sqrt(gamma_rd);
    BitPool bits(rng);
    DfSymbolOutcome out;
    out.relay_decoded = true;
    bool direct_error = false, mrc_error = false;
    for (int k = 0; k < packet_len; ++k) {
        const double x = bits.next_bit() ? 1.0 : -1.0;
        const double y = h_sd * x + kNoiseStd * rng.next_normal();
        const double r = h_sr * x + kNoiseStd * rng.next_normal();
        const double z = h_rd * x + kNoiseStd * rng.next_normal();  // relay re-encodes x
        if ((h_sr * r < 0.0) != (x < 0.0)) out.relay_decoded = false;
        if ((h_sd * y < 0.0) != (x < 0.0)) direct_error = true;
        if ((h_sd * y + h_rd * z < 0.0) != (x < 0.0)) mrc_error = true;
    }
    out.packet_error = out.relay_decoded ? mrc_error : direct_error;
    return out;
}

FrameSimulator::FrameSimulator(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                               Fidelity fidelity)
    : mode_(mode), cfg_(cfg), budget_(budget), fidelity_(fidelity) {
    cfg_.validate();
    budget_.validate();
    c1_ = analytic::af_c1(budget_);
    snr_.resize(cfg_.n_packets);
    order_.resize(cfg_.n_packets);
    relayed_.resize(cfg_.n_packets);
}

FrameCounts FrameSimulator::simulate(Philox4x32& rng) {
    const int n = cfg_.n_packets;
    const int m = cfg_.n_relayed;
    const int k = cfg_.packet_len;

    // Broadcast phase: per-packet block fading on the direct link.
    for (int i = 0; i < n; ++i) snr_[i] = rng.next_exponential(budget_.gamma_sd);

    // Feedback phase: destination reports the M weakest packet indices.
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
        return snr_[a] != snr_[b] ? snr_[a] < snr_[b] : a < b;
    });
    std::fill(relayed_.begin(), relayed_.end(), 0);
    for (int r = 0; r < m; ++r) relayed_[order_[r]] = 1;

    FrameCounts counts;
    counts.packets = static_cast<std::uint32_t>(n);

    // Relaying phase, weakest first; relay links fade per relayed packet.
    for (int r = 0; r < m; ++r) {
        const double g_direct = snr_[order_[r]];
        const double g_sr = rng.next_exponential(budget_.gamma_sr);
        const double g_rd = rng.next_exponential(budget_.gamma_rd);
        bool error;
        if (fidelity_ == Fidelity::snr_level) {
            double g_eff;
            if (mode_ == RelayMode::af_fixed_gain) {
                g_eff = g_direct + g_sr * g_rd / (g_rd + c1_);
            } else {
                const bool relay_failed = rng.next_unit() < pex(g_sr, k);
                g_eff = relay_failed ? g_direct : g_direct + g_rd;
            }
            error = rng.next_unit() < pex(g_eff, k);
        } else {
            error = mode_ == RelayMode::af_fixed_gain
                        ? symbol_packet_af(g_direct, g_sr, g_rd, c1_, k, rng)
                        : symbol_packet_df(g_direct, g_sr, g_rd, k, rng).packet_error;
        }
        counts.errors += error;
    }

    // Unrelayed packets are decoded from the direct copy alone.
    for (int i = 0; i < n; ++i) {
        if (relayed_[i]) continue;
        const bool error = fidelity_ == Fidelity::snr_level
                               ? rng.next_unit() < pex(snr_[i], k)
                               : symbol_packet_direct(snr_[i], k, rng);
        counts.errors += error;
    }
    return counts;
}

FrameCounts simulate_frame(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                           Philox4x32& rng, Fidelity fidelity) {
    FrameSimulator simulator(mode, cfg, budget, fidelity);
    return simulator.simulate(rng);
}

PerEstimate estimate_per(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                         std::uint64_t n_frames, std::uint64_t seed, Fidelity fidelity,
                         unsigned n_workers) {
    cfg.validate();
    budget.validate();
    if (n_frames < 1) throw ValidationError("estimate_per: n_frames must be >= 1\n");
    if (n_workers == 0) n_workers = std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(
        std::min<std::uint64_t>(n_workers, n_frames));

    std::vector<std::uint64_t> worker_errors(n_workers, 0);
    auto run_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        FrameSimulator simulator(mode, cfg, budget, fidelity);
        std::uint64_t errors = 0;
        for (std::uint64_t f = lo; f < hi; ++f) {
            Philox4x32 rng(seed, f);  // stream per frame: partition-independent
            errors += simulator.simulate(rng).errors;
        }
        worker_errors[w] = errors;
    };

    const std::uint64_t chunk = n_frames / n_workers;
    const std::uint64_t rem = n_frames % n_workers;
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    std::uint64_t lo = 0;
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
        pool.emplace_back(run_range, w, lo, hi);
        lo = hi;
    }
    for (auto& t : pool) t.join();

    PerEstimate est;
    est.frames = n_frames;
    est.packets = n_frames * static_cast<std::uint64_t>(cfg.n_packets);
    for (std::uint64_t e : worker_errors) est.packet_errors += e;
    est.per = static_cast<double>(est.packet_errors) / static_cast<double>(est.packets);
    std::tie(est.ci_low, est.ci_high) = wilson_interval(est.packet_errors, est.packets);
    est.seed = seed;
    return est;
}

}  // namespace relaylab::sim
