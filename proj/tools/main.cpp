// relaylab CLI: analytic sweeps, Monte Carlo comparisons, figure-data export.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "relaylab/report.hpp"
#include "relaylab/selftest.hpp"
#include "relaylab/sweep.hpp"
#include "relaylab/types.hpp"

namespace fs = std::filesystem;
using namespace relaylab;
using namespace relaylab::experiments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDisagreement = 2;
constexpr int kExitIo = 3;

struct SpecOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> frames;
    std::optional<std::string> fidelity;
    std::optional<unsigned> workers;
    bool paper_compat_sum = false;
};

SweepSpec load_with_overrides(const std::string& config_path, const SpecOverrides& ov) {
    SweepSpec spec = load_sweep_spec(config_path);
    if (ov.seed) spec.seed = *ov.seed;
    if (ov.frames) spec.n_frames = *ov.frames;
    if (ov.workers) spec.n_workers = *ov.workers;
    if (ov.fidelity) {
        if (*ov.fidelity == "snr")
            spec.fidelity = sim::Fidelity::snr_level;
        else if (*ov.fidelity == "symbol")
            spec.fidelity = sim::Fidelity::symbol_level;
        else
            throw ValidationError("--fidelity must be snr or symbol\n");
    }
    if (ov.paper_compat_sum) spec.sum_bound = analytic::SumBound::truncated;
    spec.validate();
    return spec;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir,
                  const SpecOverrides& ov, bool emit_gnuplot) {
    const SweepSpec spec = load_with_overrides(config_path, ov);
    const auto rows = run_sweep(spec);

    fs::create_directories(out_dir);
    const std::string stem = fs::path(config_path).stem().string();
    const fs::path csv_path = fs::path(out_dir) / (stem + ".csv");
    const fs::path summary_path = fs::path(out_dir) / (stem + "_summary.txt");
    write_csv(csv_path, rows);
    write_text(summary_path, summary_report(rows));
    if (emit_gnuplot)
        write_text(fs::path(out_dir) / (stem + ".gp"),
                   gnuplot_script(csv_path.filename().string(), rows));

    std::cout << "wrote " << csv_path.string() << " (" << rows.size() << " rows) and "
              << summary_path.string() << '\n';
    return kExitOk;
}

int run_compare_cmd(const std::string& config_path, const SpecOverrides& ov) {
    SweepSpec spec = load_with_overrides(config_path, ov);
    spec.emit_analytic = true;
    spec.emit_simulated = true;
    const auto rows = run_sweep(spec);

    bool any_disagreement = false;
    for (const ResultRow& row : rows) {
        const std::string curve = format_curve_id(curve_of(row));
        std::cout << curve << " @ " << row.snr_db << " dB: analytic=" << *row.per_analytic
                  << " sim=" << *row.per_sim << " ci=[" << *row.ci_low << ',' << *row.ci_high
                  << "] ";
        switch (classify_row(row)) {
            case RowAgreement::within_ci:
                std::cout << "PASS (within 95% CI)\n";
                break;
            case RowAgreement::within_20pct:
                std::cout << "PASS (outside CI, within 20% relative)\n";
                break;
            case RowAgreement::disagree:
                std::cout << "FAIL\n";
                any_disagreement = true;
                break;
            case RowAgreement::not_comparable:
                std::cout << "SKIP\n";
                break;
        }
    }
    return any_disagreement ? kExitDisagreement : kExitOk;
}

int run_gain_cmd(const std::string& csv_path, double target, const std::string& baseline,
                 const std::string& candidate, const std::string& column_name) {
    const auto rows = read_csv(csv_path);
    PerColumn column = PerColumn::prefer_analytic;
    if (column_name == "analytic")
        column = PerColumn::analytic;
    else if (column_name == "simulated")
        column = PerColumn::simulated;
    else if (column_name != "auto")
        throw ValidationError("--column must be auto, analytic, or simulated\n");

    const double gain = gain_at_target_db(rows, target, parse_curve_id(baseline),
                                          parse_curve_id(candidate), column);
    std::cout << "gain of " << candidate << " over " << baseline << " at PER " << target << ": "
              << gain << " dB\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level lab for feedback-driven incremental relaying: closed-form PER "
                 "analysis and Monte Carlo protocol simulation"};
    app.require_subcommand(1);

    SpecOverrides ov;
    std::string config_path, out_dir = ".", fidelity, csv_path;
    std::string baseline, candidate, column = "auto";
    double target = 1e-2;
    bool emit_gnuplot = false;
    std::uint64_t seed_opt = 0, frames_opt = 0;
    unsigned workers_opt = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed_opt, "Override the sweep master seed");
        cmd->add_option("--frames", frames_opt, "Override Monte Carlo frames per point");
        cmd->add_option("--fidelity", fidelity, "Simulation fidelity: snr | symbol");
        cmd->add_option("--workers", workers_opt, "Worker threads (0 = hardware)");
        cmd->add_flag("--paper-compat-sum", ov.paper_compat_sum,
                      "Frame average sums direct packets only up to N-1");
    };
    auto collect_overrides = [&](CLI::App* cmd) {
        if (cmd->count("--seed")) ov.seed = seed_opt;
        if (cmd->count("--frames")) ov.frames = frames_opt;
        if (cmd->count("--fidelity")) ov.fidelity = fidelity;
        if (cmd->count("--workers")) ov.workers = workers_opt;
    };

    CLI::App* sweep = app.add_subcommand("sweep", "Run a sweep config; write CSV and summary");
    sweep->add_option("config", config_path, "Sweep config (JSON)")->required();
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_flag("--gnuplot", emit_gnuplot, "Also emit a gnuplot script");
    add_common(sweep);

    CLI::App* compare =
        app.add_subcommand("compare", "Analytic vs simulation with pass/fail per row");
    compare->add_option("config", config_path, "Sweep config (JSON)")->required();
    add_common(compare);

    CLI::App* gain = app.add_subcommand("gain", "SNR gain between two curves at a target PER");
    gain->add_option("results", csv_path, "Results CSV from `sweep`")->required();
    gain->add_option("--target", target, "Target PER")->required();
    gain->add_option("--baseline", baseline, "Baseline curve id MODE:N:K:M")->required();
    gain->add_option("--candidate", candidate, "Candidate curve id MODE:N:K:M")->required();
    gain->add_option("--column", column, "PER column: auto | analytic | simulated");

    CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            collect_overrides(sweep);
            return run_sweep_cmd(config_path, out_dir, ov, emit_gnuplot);
        }
        if (compare->parsed()) {
            collect_overrides(compare);
            return run_compare_cmd(config_path, ov);
        }
        if (gain->parsed()) return run_gain_cmd(csv_path, target, baseline, candidate, column);
        if (selftest->parsed())
            return relaylab::experiments::run_selftest(std::cout) ? kExitOk : kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what();
        if (std::string_view(e.what()).back() != '\n') std::cerr << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
