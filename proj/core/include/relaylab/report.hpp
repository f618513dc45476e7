#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "relaylab/sweep.hpp"

namespace relaylab::experiments {

// A curve is one (mode, N, K, M) combination; rendered as "DF:8:16:1".
struct CurveId {
    RelayMode mode = RelayMode::af_fixed_gain;
    int n_packets = 0;
    int packet_len = 0;
    int n_relayed = 0;

    auto operator<=>(const CurveId&) const = default;
};

std::string format_curve_id(const CurveId& id);
CurveId parse_curve_id(const std::string& text);
CurveId curve_of(const ResultRow& row);

// Rows grouped by curve, each sorted by SNR.
std::map<CurveId, std::vector<ResultRow>> group_curves(std::span<const ResultRow> rows);

// Which PER column a curve operation reads.
enum class PerColumn { prefer_analytic, analytic, simulated };

// SNR (dB) at which the curve crosses target_per, by log-linear
// interpolation. Throws std::range_error if the curve does not bracket the
// target.
double snr_at_target(std::span<const ResultRow> curve, double target_per,
                     PerColumn column = PerColumn::prefer_analytic);

// Horizontal SNR gap (dB) between baseline and candidate at target_per;
// positive when the candidate reaches the target at a lower SNR.
double gain_at_target_db(std::span<const ResultRow> rows, double target_per,
                         const CurveId& baseline, const CurveId& candidate,
                         PerColumn column = PerColumn::prefer_analytic);

// Agreement status for rows carrying both analytic and simulated outputs.
enum class RowAgreement { within_ci, within_20pct, disagree, not_comparable };
RowAgreement classify_row(const ResultRow& row);

// Plain-text summary: per-curve diversity slope and efficiency, plus an
// agreement marker for every analytic-vs-simulated row (disagreements are
// never silent).
std::string summary_report(std::span<const ResultRow> rows);

// gnuplot script plotting per-curve PER against SNR from the emitted CSV.
std::string gnuplot_script(const std::string& csv_filename, std::span<const ResultRow> rows);

}  // namespace relaylab::experiments
