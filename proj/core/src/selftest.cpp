#include "relaylab/selftest.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "relaylab/analytic.hpp"
#include "relaylab/coefficients.hpp"
#include "relaylab/sim.hpp"
#include "relaylab/sweep.hpp"

namespace relaylab::experiments {

namespace {

using namespace relaylab::analytic;
namespace rsim = relaylab::sim;

struct Check {
    std::string name;
    std::function<bool()> run;
};

bool near_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

bool run_selftest(std::ostream& out) {
    std::vector<Check> checks;

    checks.push_back({"MGF averaging identity (1/N)*sum_i Phi_i(s) == 1/(1+s*Gamma)", [] {
        for (int n = 1; n <= 16; ++n)
            for (double s : {0.1, 1.0, 10.0})
                for (double g : {1.0, 10.0, 100.0}) {
                    double acc = 0.0;
                    for (int i = 1; i <= n; ++i) acc += mgf_ordered(i, n, g, s);
                    if (!near_rel(acc / n, mgf_exponential(s, g), 1e-12)) return false;
                }
        return true;
    }});

    checks.push_back({"coefficient row sums: sum_m C_{n,m} == 3^{-n}", [] {
        const PerExpansion& ex = expansion_for(16);
        for (int n = 1; n <= 16; ++n) {
            double sum = 0.0;
            for (int m = 0; m <= n; ++m) sum += std::exp(ex.log_inner(n, m));
            if (!near_rel(sum, std::pow(3.0, -n), 1e-12)) return false;
        }
        return true;
    }});

    checks.push_back({"expansion equals stable product form", [] {
        for (int k : {1, 4, 16, 64})
            for (double gamma : {0.0, 0.3, 1.0, 3.0, 10.0, 30.0}) {
                const double a = per_conditional_approx(gamma, k);
                const double b = per_conditional_approx_product(gamma, k);
                if (std::abs(a - b) > 1e-9 + 1e-6 * b) return false;
            }
        return true;
    }});

    checks.push_back({"per_total(M=0) equals unordered Rayleigh PER", [] {
        for (double db : {5.0, 15.0, 25.0}) {
            const LinkBudget budget = LinkBudget::symmetric_db(db);
            const FrameConfig cfg{8, 16, 0};
            const double a = per_total(RelayMode::af_fixed_gain, cfg, budget);
            const double b = per_rayleigh(16, budget.gamma_sd);
            if (!near_rel(a, b, 1e-10)) return false;
        }
        return true;
    }});

    checks.push_back({"mgf_ordered nonincreasing in i", [] {
        for (double s : {0.5, 2.0})
            for (int i = 1; i < 8; ++i)
                if (mgf_ordered(i + 1, 8, 10.0, s) > mgf_ordered(i, 8, 10.0, s)) return false;
        return true;
    }});

    checks.push_back({"per_total nonincreasing in M", [] {
        for (RelayMode mode : {RelayMode::af_fixed_gain, RelayMode::df_decode_check})
            for (double db : {5.0, 15.0, 25.0}) {
                const LinkBudget budget = LinkBudget::symmetric_db(db);
                double prev = 1.0;
                for (int m = 0; m <= 8; ++m) {
                    const double cur = per_total(mode, FrameConfig{8, 16, m}, budget);
                    if (cur > prev * (1.0 + 1e-12)) return false;
                    prev = cur;
                }
            }
        return true;
    }});

    checks.push_back({"efficiency identities", [] {
        const auto e0 = efficiency(0, 8);
        const auto e1 = efficiency(1, 8);
        const auto e8 = efficiency(8, 8);
        return e0.forwarding_rate == 0.0 && e0.spectral_efficiency == 1.0 &&
               near_rel(e1.spectral_efficiency, 8.0 / 9.0, 1e-15) &&
               e8.forwarding_rate == 1.0 && e8.spectral_efficiency == 0.5 &&
               near_rel(e1.spectral_efficiency, 1.0 / (1.0 + e1.forwarding_rate), 1e-15);
    }});

    checks.push_back({"estimator determinism across worker counts", [] {
        const FrameConfig cfg{8, 16, 2};
        const LinkBudget budget = LinkBudget::symmetric_db(10.0);
        const auto a = rsim::estimate_per(RelayMode::df_decode_check, cfg, budget, 20000, 7,
                                          rsim::Fidelity::snr_level, 1);
        const auto b = rsim::estimate_per(RelayMode::df_decode_check, cfg, budget, 20000, 7,
                                          rsim::Fidelity::snr_level, 3);
        return a.packet_errors == b.packet_errors && a.packets == b.packets;
    }});

    checks.push_back({"Wilson interval brackets the point estimate", [] {
        for (std::uint64_t errors : {0ull, 1ull, 50ull, 999ull, 1000ull}) {
            const auto [lo, hi] = rsim::wilson_interval(errors, 1000);
            const double p = static_cast<double>(errors) / 1000.0;
            if (!(lo <= p && p <= hi && lo >= 0.0 && hi <= 1.0)) return false;
        }
        return true;
    }});

    bool all_ok = true;
    for (const Check& check : checks) {
        bool ok = false;
        std::string detail;
        try {
            ok = check.run();
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "PASS" : "FAIL") << ' ' << check.name << detail << '\n';
        all_ok = all_ok && ok;
    }
    return all_ok;
}

}  // namespace relaylab::experiments
