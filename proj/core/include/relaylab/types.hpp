#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace relaylab {

// Expansion path refuses configurations it cannot evaluate (callers should
// fall back to the quadrature path).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a numeric routine detects it cannot meet its accuracy contract
// (catastrophic cancellation, non-convergent quadrature).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Aggregated configuration problems; the message lists every violated
// constraint, one per line.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// A probability; construction checks the [0,1] invariant.
class Probability {
public:
    explicit Probability(double v) : v_(v) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("Probability outside [0,1]: " + std::to_string(v));
    }
    double value() const noexcept { return v_; }
    operator double() const noexcept { return v_; }

private:
    double v_;
};

enum class RelayMode { af_fixed_gain, df_decode_check };

inline const char* to_string(RelayMode m) {
    return m == RelayMode::af_fixed_gain ? "AF" : "DF";
}

// Frame layout: N packets of K symbols each; the relay forwards the M weakest.
struct FrameConfig {
    int n_packets = 1;   // N
    int packet_len = 1;  // K, symbols per packet
    int n_relayed = 0;   // M

    void validate() const {
        std::string problems;
        if (n_packets < 1) problems += "n_packets must be >= 1\n";
        if (packet_len < 1) problems += "packet_len must be >= 1\n";
        if (n_relayed < 0 || n_relayed > n_packets)
            problems += "n_relayed must satisfy 0 <= M <= N\n";
        if (!problems.empty()) throw ValidationError(problems);
    }
};

// Average linear SNRs of the three links.
struct LinkBudget {
    double gamma_sd = 1.0;  // S->D
    double gamma_sr = 1.0;  // S->R
    double gamma_rd = 1.0;  // R->D

    static LinkBudget symmetric_db(double snr_db) {
        const double g = db_to_linear(snr_db);
        return {g, g, g};
    }
    static LinkBudget from_db(double sd_db, double sr_db, double rd_db) {
        return {db_to_linear(sd_db), db_to_linear(sr_db), db_to_linear(rd_db)};
    }

    void validate() const {
        if (!(gamma_sd > 0.0) || !(gamma_sr > 0.0) || !(gamma_rd > 0.0))
            throw ValidationError("all link SNRs must be strictly positive\n");
    }
};

}  // namespace relaylab
