#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "relaylab/types.hpp"

namespace relaylab::analytic {

// Largest packet length served by the exponential-sum expansion. The outer
// binomial weights alternate in sign and grow like C(K,K/2), so doubles lose
// roughly K bits in the worst case; beyond this bound callers must use the
// quadrature path.
inline constexpr int kMaxExpansionPacketLen = 64;

// Coefficient table for the sum-of-exponentials PER expansion at packet
// length K:
//
//   PER(gamma) ~= sum_{n=1}^{K} D_n sum_{m=0}^{n} C_{n,m} e^{-A_{n,m} gamma}
//
// with D_n = C(K,n)(-1)^{n+1}, C_{n,m} = C(n,m)/(4^n 3^{n-m}), and
// A_{n,m} = n + m/3. D and C are stored as (sign, log-magnitude) pairs so
// consumers can sum in log domain; A is exact.
class PerExpansion {
public:
    struct Term {
        double log_weight;      // ln|D_n * C_{n,m}|
        long double magnitude;  // |D_n * C_{n,m}|, from exact-integer binomials
        double rate;            // A_{n,m}
        bool negative;          // sign of D_n (C is always positive)
    };

    explicit PerExpansion(int packet_len);

    int packet_len() const noexcept { return packet_len_; }
    std::span<const Term> terms() const noexcept { return terms_; }

    // Raw coefficient access, 1 <= n <= K, 0 <= m <= n.
    double log_abs_outer(int n) const;           // ln|D_n| = ln C(K,n)
    int outer_sign(int n) const;                 // (-1)^{n+1}
    double log_inner(int n, int m) const;        // ln C_{n,m}
    double rate(int n, int m) const;             // A_{n,m} = n + m/3

    // Averages the expansion against a nonnegative per-rate weight
    // (an MGF evaluated at A_{n,m}, or e^{-A_{n,m} gamma} for conditional
    // PER). Positive and negative terms accumulate separately in extended
    // precision with Neumaier compensation: the signed magnitudes reach
    // (4/3)^K while the result stays in [0,1], so the worst case loses ~K/4
    // bits and the +-1e-9 guard needs every digit at K = 64. A result
    // outside [-eps, 1+eps] (eps = 1e-9) throws NumericalError, otherwise it
    // is clamped into [0,1].
    template <class WeightFn>
    double average(WeightFn&& weight_at_rate) const {
        long double pos = 0.0L, pos_comp = 0.0L;
        long double neg = 0.0L, neg_comp = 0.0L;
        for (const Term& t : terms_) {
            const double w = weight_at_rate(t.rate);
            if (w <= 0.0) continue;  // underflowed MGF contributes nothing
            const long double v = t.magnitude * w;
            if (t.negative)
                neumaier_add(neg, neg_comp, v);
            else
                neumaier_add(pos, pos_comp, v);
        }
        return guard(static_cast<double>((pos + pos_comp) - (neg + neg_comp)));
    }

private:
    static void neumaier_add(long double& sum, long double& comp, long double v) {
        const long double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    static double guard(double x);
    std::size_t index(int n, int m) const;

    int packet_len_;
    std::vector<Term> terms_;        // flattened over n, then m
    std::vector<double> log_outer_;  // ln C(K,n), n = 1..K
};

// Shared per-K table; computed once, immutable afterwards.
const PerExpansion& expansion_for(int packet_len);

}  // namespace relaylab::analytic
