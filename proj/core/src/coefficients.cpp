#include "relaylab/coefficients.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace relaylab::analytic {

namespace {
constexpr double kGuardEps = 1e-9;

// Exact for n <= 64 (the expansion bound): integer arithmetic; C(64,32) and
// every 3^{n-m} fit a 64-bit mantissa, so the long double conversion is
// lossless and the alternating sum's residual stays well under the guard.
long double binomial_exact(int n, int k) {
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<unsigned>(n - k + i);
        r /= static_cast<unsigned>(i);
    }
    return static_cast<long double>(static_cast<unsigned long long>(r));
}
}  // namespace

PerExpansion::PerExpansion(int packet_len) : packet_len_(packet_len) {
    if (packet_len < 1)
        throw std::domain_error("PerExpansion: packet_len must be >= 1");
    if (packet_len > kMaxExpansionPacketLen)
        throw CapabilityError(
            "PerExpansion: packet_len " + std::to_string(packet_len) +
            " exceeds the expansion bound " + std::to_string(kMaxExpansionPacketLen) +
            "; use the quadrature path");

    std::vector<long double> pow3(packet_len + 1);  // exact up to 3^40
    pow3[0] = 1.0L;
    for (int j = 1; j <= packet_len; ++j) pow3[j] = pow3[j - 1] * 3.0L;

    terms_.reserve(static_cast<std::size_t>(packet_len) * (packet_len + 3) / 2);
    log_outer_.resize(packet_len + 1);
    for (int n = 1; n <= packet_len; ++n) {
        const long double d = binomial_exact(packet_len, n);
        log_outer_[n] = std::log(static_cast<double>(d));
        const bool negative = (n % 2 == 0);  // sign(D_n) = (-1)^{n+1}
        for (int m = 0; m <= n; ++m) {
            // C_{n,m} = C(n,m) / (4^n 3^{n-m}); 4^n = 2^{2n} applied via ldexp
            const long double c = std::ldexp(binomial_exact(n, m) / pow3[n - m], -2 * n);
            const long double magnitude = d * c;
            terms_.push_back(
                {std::log(static_cast<double>(magnitude)), magnitude, n + m / 3.0, negative});
        }
    }
}

std::size_t PerExpansion::index(int n, int m) const {
    if (n < 1 || n > packet_len_ || m < 0 || m > n)
        throw std::domain_error("PerExpansion: coefficient index out of range");
    // Terms for n' < n occupy sum_{j=1}^{n-1} (j+1) slots.
    return static_cast<std::size_t>(n - 1) * (n + 2) / 2 + m;
}

double PerExpansion::log_abs_outer(int n) const {
    if (n < 1 || n > packet_len_)
        throw std::domain_error("PerExpansion: coefficient index out of range");
    return log_outer_[n];
}

int PerExpansion::outer_sign(int n) const {
    if (n < 1 || n > packet_len_)
        throw std::domain_error("PerExpansion: coefficient index out of range");
    return n % 2 == 1 ? 1 : -1;
}

double PerExpansion::log_inner(int n, int m) const {
    return terms_[index(n, m)].log_weight - log_abs_outer(n);
}

double PerExpansion::rate(int n, int m) const { return terms_[index(n, m)].rate; }

double PerExpansion::guard(double x) {
    if (x < -kGuardEps || x > 1.0 + kGuardEps)
        throw NumericalError(
            "PerExpansion: cancellation guard tripped, result " + std::to_string(x) +
            " outside [0,1]; packet length too large for the expansion path");
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

const PerExpansion& expansion_for(int packet_len) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const PerExpansion>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(packet_len);
    if (it == cache.end())
        it = cache.emplace(packet_len, std::make_unique<const PerExpansion>(packet_len)).first;
    return *it->second;
}

}  // namespace relaylab::analytic
