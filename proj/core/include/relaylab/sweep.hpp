#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relaylab/analytic.hpp"
#include "relaylab/sim.hpp"
#include "relaylab/types.hpp"

namespace relaylab::experiments {

// Declarative sweep: modes x relayed-counts x SNR grid. Parsed from a JSON
// document (see README for the schema and defaults).
struct SweepSpec {
    std::vector<RelayMode> modes;
    std::vector<double> snr_db;      // strictly increasing
    int n_packets = 8;
    int packet_len = 16;
    std::vector<int> n_relayed;      // one curve per M
    bool symmetric_budget = true;
    double sr_offset_db = 0.0;       // used when symmetric_budget is false
    double rd_offset_db = 0.0;
    std::uint64_t n_frames = 1'000'000;
    std::uint64_t seed = 1;
    unsigned n_workers = 0;  // 0 = hardware concurrency
    sim::Fidelity fidelity = sim::Fidelity::snr_level;
    bool emit_analytic = true;
    bool emit_simulated = true;
    analytic::SumBound sum_bound = analytic::SumBound::full;

    LinkBudget budget_at(double snr_db_point) const;
    // Throws ValidationError listing every violated constraint.
    void validate() const;
};

SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct ResultRow {
    double snr_db = 0.0;
    RelayMode mode = RelayMode::af_fixed_gain;
    int n_packets = 0;
    int packet_len = 0;
    int n_relayed = 0;
    std::optional<double> per_analytic;
    std::optional<double> per_sim;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;

    bool operator==(const ResultRow&) const = default;
};

// One row per (mode, M, snr point), in that nesting order. Deterministic for
// a fixed spec: row r simulates with seed splitmix64(spec.seed + r).
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Fixed CSV schema; shortest-round-trip number formatting, so rerunning an
// identical spec yields identical bytes and parsing restores the rows.
inline constexpr const char* kCsvHeader =
    "snr_db,mode,N,K,M,per_analytic,per_sim,ci_low,ci_high,trials,seed";

std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& csv_text);
void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(const std::filesystem::path& path);

}  // namespace relaylab::experiments
