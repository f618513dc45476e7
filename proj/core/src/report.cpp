#include "relaylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relaylab::experiments {

namespace {

double row_per(const ResultRow& row, PerColumn column) {
    switch (column) {
        case PerColumn::analytic:
            if (!row.per_analytic) throw ValidationError("curve row lacks per_analytic\n");
            return *row.per_analytic;
        case PerColumn::simulated:
            if (!row.per_sim) throw ValidationError("curve row lacks per_sim\n");
            return *row.per_sim;
        case PerColumn::prefer_analytic:
            if (row.per_analytic) return *row.per_analytic;
            if (row.per_sim) return *row.per_sim;
            throw ValidationError("curve row has neither analytic nor simulated PER\n");
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::string format_curve_id(const CurveId& id) {
    std::ostringstream out;
    out << to_string(id.mode) << ':' << id.n_packets << ':' << id.packet_len << ':'
        << id.n_relayed;
    return out.str();
}

CurveId parse_curve_id(const std::string& text) {
    CurveId id;
    std::istringstream in(text);
    std::string mode;
    char sep1 = 0, sep2 = 0;
    if (!std::getline(in, mode, ':') ||
        !(in >> id.n_packets >> sep1 && sep1 == ':' && in >> id.packet_len >> sep2 &&
          sep2 == ':' && in >> id.n_relayed)) {
        throw ValidationError("curve id must look like MODE:N:K:M, e.g. DF:8:16:1; got '" +
                              text + "'\n");
    }
    if (mode == "AF")
        id.mode = RelayMode::af_fixed_gain;
    else if (mode == "DF")
        id.mode = RelayMode::df_decode_check;
    else
        throw ValidationError("curve id mode must be AF or DF; got '" + mode + "'\n");
    return id;
}

CurveId curve_of(const ResultRow& row) {
    return {row.mode, row.n_packets, row.packet_len, row.n_relayed};
}

std::map<CurveId, std::vector<ResultRow>> group_curves(std::span<const ResultRow> rows) {
    std::map<CurveId, std::vector<ResultRow>> curves;
    for (const ResultRow& row : rows) curves[curve_of(row)].push_back(row);
    for (auto& [id, curve] : curves)
        std::sort(curve.begin(), curve.end(),
                  [](const ResultRow& a, const ResultRow& b) { return a.snr_db < b.snr_db; });
    return curves;
}

double snr_at_target(std::span<const ResultRow> curve, double target_per, PerColumn column) {
    if (!(target_per > 0.0)) throw std::domain_error("snr_at_target: target must be positive");
    if (curve.size() < 2) throw std::range_error("snr_at_target: need at least 2 points");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double p1 = row_per(curve[i - 1], column);
        const double p2 = row_per(curve[i], column);
        if (!(p1 > 0.0) || !(p2 > 0.0))
            throw std::domain_error("snr_at_target: PER values must be positive");
        if ((p1 - target_per) * (p2 - target_per) <= 0.0 && p1 != p2) {
            const double t =
                (std::log10(target_per) - std::log10(p1)) / (std::log10(p2) - std::log10(p1));
            return curve[i - 1].snr_db + t * (curve[i].snr_db - curve[i - 1].snr_db);
        }
    }
    throw std::range_error("snr_at_target: curve does not bracket the target PER");
}

double gain_at_target_db(std::span<const ResultRow> rows, double target_per,
                         const CurveId& baseline, const CurveId& candidate, PerColumn column) {
    const auto curves = group_curves(rows);
    const auto base = curves.find(baseline);
    const auto cand = curves.find(candidate);
    if (base == curves.end())
        throw ValidationError("baseline curve " + format_curve_id(baseline) + " not in results\n");
    if (cand == curves.end())
        throw ValidationError("candidate curve " + format_curve_id(candidate) +
                              " not in results\n");
    return snr_at_target(base->second, target_per, column) -
           snr_at_target(cand->second, target_per, column);
}

RowAgreement classify_row(const ResultRow& row) {
    if (!row.per_analytic || !row.per_sim || !row.ci_low || !row.ci_high)
        return RowAgreement::not_comparable;
    if (*row.ci_low <= *row.per_analytic && *row.per_analytic <= *row.ci_high)
        return RowAgreement::within_ci;
    if (*row.per_sim > 0.0 &&
        std::abs(*row.per_analytic - *row.per_sim) / *row.per_sim <= 0.20)
        return RowAgreement::within_20pct;
    return RowAgreement::disagree;
}

std::string summary_report(std::span<const ResultRow> rows) {
    std::ostringstream out;
    const auto curves = group_curves(rows);
    out << "curves: " << curves.size() << "\n\n";
    for (const auto& [id, curve] : curves) {
        const auto eff = analytic::efficiency(id.n_relayed, id.n_packets);
        out << format_curve_id(id) << ": FR=" << eff.forwarding_rate
            << " eta=" << eff.spectral_efficiency;
        std::vector<std::pair<double, double>> points;
        for (const ResultRow& row : curve) {
            const double per = row.per_analytic ? *row.per_analytic
                                                : (row.per_sim ? *row.per_sim : 0.0);
            if (per > 0.0) points.emplace_back(row.snr_db, per);
        }
        if (points.size() >= 2)
            out << " diversity_slope=" << analytic::diversity_slope(points);
        out << '\n';
        for (const ResultRow& row : curve) {
            switch (classify_row(row)) {
                case RowAgreement::within_ci:
                    out << "  " << row.snr_db << " dB: ok (analytic within 95% CI)\n";
                    break;
                case RowAgreement::within_20pct:
                    out << "  " << row.snr_db
                        << " dB: MARGINAL (outside CI, within 20% relative)\n";
                    break;
                case RowAgreement::disagree:
                    out << "  " << row.snr_db
                        << " dB: DISAGREE (outside CI and beyond 20% relative)\n";
                    break;
                case RowAgreement::not_comparable:
                    break;
            }
        }
    }
    return out.str();
}

std::string gnuplot_script(const std::string& csv_filename, std::span<const ResultRow> rows) {
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set logscale y\n"
        << "set xlabel 'SNR (dB)'\n"
        << "set ylabel 'PER'\n"
        << "set grid\n"
        << "set key outside\n";
    const auto curves = group_curves(rows);
    bool first = true;
    for (const auto& [id, curve] : curves) {
        out << (first ? "plot " : ",\\\n     ");
        first = false;
        const std::string label = format_curve_id(id);
        out << "'" << csv_filename << "' using 1:((strcol(2) eq '" << to_string(id.mode)
            << "' && $3==" << id.n_packets << " && $4==" << id.packet_len
            << " && $5==" << id.n_relayed << ") ? $6 : 1/0) with linespoints title '" << label
            << "'";
    }
    out << '\n';
    return out.str();
}

}  // namespace relaylab::experiments
