#include "relaylab/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relaylab::experiments {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, end};
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError("CSV: malformed number '" + std::string(s) + "'\n");
    return v;
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError("CSV: malformed integer '" + std::string(s) + "'\n");
    return v;
}

RelayMode parse_mode(std::string_view s) {
    if (s == "AF") return RelayMode::af_fixed_gain;
    if (s == "DF") return RelayMode::df_decode_check;
    throw ValidationError("unknown relay mode '" + std::string(s) + "' (expected AF or DF)\n");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

LinkBudget SweepSpec::budget_at(double snr_db_point) const {
    if (symmetric_budget) return LinkBudget::symmetric_db(snr_db_point);
    return LinkBudget::from_db(snr_db_point, snr_db_point + sr_offset_db,
                               snr_db_point + rd_offset_db);
}

void SweepSpec::validate() const {
    std::string problems;
    if (modes.empty()) problems += "modes: at least one of AF/DF required\n";
    if (snr_db.empty()) problems += "snr_db: grid must be nonempty\n";
    for (std::size_t i = 1; i < snr_db.size(); ++i)
        if (!(snr_db[i] > snr_db[i - 1])) {
            problems += "snr_db: grid must be strictly increasing\n";
            break;
        }
    if (n_packets < 1) problems += "frame.packets: must be >= 1\n";
    if (packet_len < 1) problems += "frame.symbols: must be >= 1\n";
    if (n_relayed.empty()) problems += "frame.relayed: at least one M required\n";
    for (int m : n_relayed)
        if (m < 0 || m > n_packets) {
            problems += "frame.relayed: every M must satisfy 0 <= M <= N\n";
            break;
        }
    if (n_frames < 1) problems += "frames: must be >= 1\n";
    if (!emit_analytic && !emit_simulated)
        problems += "outputs: at least one of analytic/simulated required\n";
    if (!problems.empty()) throw ValidationError(problems);
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what() + "\n");
    }

    SweepSpec spec;
    std::string problems;
    try {
        if (doc.contains("modes")) {
            spec.modes.clear();
            for (const auto& m : doc.at("modes")) spec.modes.push_back(parse_mode(m.get<std::string>()));
        } else {
            spec.modes = {RelayMode::af_fixed_gain, RelayMode::df_decode_check};
        }

        if (doc.contains("snr_db")) {
            const auto& grid = doc.at("snr_db");
            if (grid.is_array()) {
                for (const auto& v : grid) spec.snr_db.push_back(v.get<double>());
            } else {
                const double start = grid.at("start").get<double>();
                const double stop = grid.at("stop").get<double>();
                const double step = grid.at("step").get<double>();
                if (!(step > 0.0)) {
                    problems += "snr_db.step: must be > 0\n";
                } else {
                    for (double s = start; s <= stop + 1e-9; s += step) spec.snr_db.push_back(s);
                }
            }
        }

        bool relayed_given = false;
        if (doc.contains("frame")) {
            const auto& frame = doc.at("frame");
            spec.n_packets = frame.value("packets", spec.n_packets);
            spec.packet_len = frame.value("symbols", spec.packet_len);
            if (frame.contains("relayed")) {
                relayed_given = true;
                const auto& relayed = frame.at("relayed");
                if (relayed.is_array())
                    for (const auto& v : relayed) spec.n_relayed.push_back(v.get<int>());
                else
                    spec.n_relayed.push_back(relayed.get<int>());
            }
        }
        if (!relayed_given) spec.n_relayed = {1};

        if (doc.contains("budget")) {
            const auto& budget = doc.at("budget");
            if (budget.is_string()) {
                if (budget.get<std::string>() != "symmetric")
                    problems += "budget: string form must be \"symmetric\"\n";
            } else {
                spec.symmetric_budget = false;
                spec.sr_offset_db = budget.value("sr_offset_db", 0.0);
                spec.rd_offset_db = budget.value("rd_offset_db", 0.0);
            }
        }

        spec.n_frames = doc.value("frames", spec.n_frames);
        spec.seed = doc.value("seed", spec.seed);
        spec.n_workers = doc.value("workers", spec.n_workers);

        const std::string fidelity = doc.value("fidelity", std::string("snr"));
        if (fidelity == "snr")
            spec.fidelity = sim::Fidelity::snr_level;
        else if (fidelity == "symbol")
            spec.fidelity = sim::Fidelity::symbol_level;
        else
            problems += "fidelity: must be \"snr\" or \"symbol\"\n";

        if (doc.contains("outputs")) {
            spec.emit_analytic = false;
            spec.emit_simulated = false;
            for (const auto& o : doc.at("outputs")) {
                const auto s = o.get<std::string>();
                if (s == "analytic")
                    spec.emit_analytic = true;
                else if (s == "simulated")
                    spec.emit_simulated = true;
                else
                    problems += "outputs: unknown entry '" + s + "'\n";
            }
        }

        if (doc.value("paper_compat_sum", false)) spec.sum_bound = analytic::SumBound::truncated;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what() + "\n");
    }

    if (!problems.empty()) throw ValidationError(problems);
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_spec(buf.str());
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<ResultRow> rows;
    std::uint64_t row_index = 0;
    for (RelayMode mode : spec.modes) {
        for (int m : spec.n_relayed) {
            const FrameConfig cfg{spec.n_packets, spec.packet_len, m};
            for (double snr : spec.snr_db) {
                const LinkBudget budget = spec.budget_at(snr);
                ResultRow row;
                row.snr_db = snr;
                row.mode = mode;
                row.n_packets = cfg.n_packets;
                row.packet_len = cfg.packet_len;
                row.n_relayed = cfg.n_relayed;
                if (spec.emit_analytic)
                    row.per_analytic = analytic::per_total(mode, cfg, budget, spec.sum_bound);
                if (spec.emit_simulated) {
                    const std::uint64_t row_seed = sim::splitmix64(spec.seed + row_index);
                    const sim::PerEstimate est = sim::estimate_per(
                        mode, cfg, budget, spec.n_frames, row_seed, spec.fidelity,
                        spec.n_workers);
                    row.per_sim = est.per;
                    row.ci_low = est.ci_low;
                    row.ci_high = est.ci_high;
                    row.trials = est.frames;
                    row.seed = est.seed;
                }
                rows.push_back(row);
                ++row_index;
            }
        }
    }
    return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += format_double(r.snr_db);
        out += ',';
        out += to_string(r.mode);
        out += ',';
        out += std::to_string(r.n_packets) + ',' + std::to_string(r.packet_len) + ',' +
               std::to_string(r.n_relayed) + ',';
        if (r.per_analytic) out += format_double(*r.per_analytic);
        out += ',';
        if (r.per_sim) out += format_double(*r.per_sim);
        out += ',';
        if (r.ci_low) out += format_double(*r.ci_low);
        out += ',';
        if (r.ci_high) out += format_double(*r.ci_high);
        out += ',';
        if (r.trials) out += std::to_string(*r.trials);
        out += ',';
        if (r.seed) out += std::to_string(*r.seed);
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> parse_csv(const std::string& csv_text) {
    std::vector<ResultRow> rows;
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ValidationError("CSV: missing or unexpected header\n");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 11)
            throw ValidationError("CSV: expected 11 fields per row\n");
        ResultRow r;
        r.snr_db = parse_double(fields[0]);
        r.mode = parse_mode(fields[1]);
        r.n_packets = static_cast<int>(parse_u64(fields[2]));
        r.packet_len = static_cast<int>(parse_u64(fields[3]));
        r.n_relayed = static_cast<int>(parse_u64(fields[4]));
        if (!fields[5].empty()) r.per_analytic = parse_double(fields[5]);
        if (!fields[6].empty()) r.per_sim = parse_double(fields[6]);
        if (!fields[7].empty()) r.ci_low = parse_double(fields[7]);
        if (!fields[8].empty()) r.ci_high = parse_double(fields[8]);
        if (!fields[9].empty()) r.trials = parse_u64(fields[9]);
        if (!fields[10].empty()) r.seed = parse_u64(fields[10]);
        rows.push_back(r);
    }
    return rows;
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path.string());
    out << to_csv(rows);
    if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

std::vector<ResultRow> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

}  // namespace relaylab::experiments
