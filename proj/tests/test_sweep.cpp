#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "relaylab/report.hpp"
#include "relaylab/selftest.hpp"
#include "relaylab/sweep.hpp"

using namespace relaylab;
using namespace relaylab::experiments;

TEST_CASE("spec parsing applies documented defaults") {
    const SweepSpec spec = parse_sweep_spec(R"({"snr_db": [5, 10, 15]})");
    CHECK(spec.modes.size() == 2);
    CHECK(spec.n_packets == 8);
    CHECK(spec.packet_len == 16);
    CHECK(spec.n_relayed == std::vector<int>{1});
    CHECK(spec.symmetric_budget);
    CHECK(spec.n_frames == 1'000'000);
    CHECK(spec.seed == 1);
    CHECK(spec.fidelity == sim::Fidelity::snr_level);
    CHECK(spec.emit_analytic);
    CHECK(spec.emit_simulated);
    CHECK(spec.sum_bound == analytic::SumBound::full);
}

TEST_CASE("spec parsing expands start/stop/step grids") {
    const SweepSpec spec =
        parse_sweep_spec(R"({"snr_db": {"start": 5.0, "stop": 25.0, "step": 2.5}})");
    CHECK(spec.snr_db.size() == 9);
    CHECK(spec.snr_db.front() == 5.0);
    CHECK(spec.snr_db.back() == 25.0);
}

TEST_CASE("validation reports every violated constraint at once") {
    const std::string bad = R"({
        "modes": [],
        "snr_db": [10, 5],
        "frame": {"packets": 8, "symbols": 0, "relayed": [9]},
        "frames": 0
    })";
    try {
        parse_sweep_spec(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("modes") != std::string::npos);
        CHECK(msg.find("strictly increasing") != std::string::npos);
        CHECK(msg.find("frame.symbols") != std::string::npos);
        CHECK(msg.find("frame.relayed") != std::string::npos);
        CHECK(msg.find("frames") != std::string::npos);
    }
}

TEST_CASE("malformed JSON and unknown enum values are validation errors") {
    CHECK_THROWS_AS(parse_sweep_spec("{nope"), ValidationError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"snr_db":[5],"modes":["XY"]})"), ValidationError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"snr_db":[5],"fidelity":"exact"})"), ValidationError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"snr_db":[5],"outputs":[]})"), ValidationError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"snr_db":[5],"budget":"lopsided"})"), ValidationError);
}

TEST_CASE("explicit budget offsets shift the relay links") {
    const SweepSpec spec = parse_sweep_spec(
        R"({"snr_db": [10], "budget": {"sr_offset_db": 3.0, "rd_offset_db": -2.0}})");
    const LinkBudget b = spec.budget_at(10.0);
    CHECK(b.gamma_sd == doctest::Approx(db_to_linear(10.0)));
    CHECK(b.gamma_sr == doctest::Approx(db_to_linear(13.0)));
    CHECK(b.gamma_rd == doctest::Approx(db_to_linear(8.0)));
}

TEST_CASE("analytic-only sweep leaves simulation fields empty") {
    SweepSpec spec = parse_sweep_spec(
        R"({"modes":["DF"],"snr_db":[12],"frame":{"packets":4,"symbols":8,"relayed":1},
           "outputs":["analytic"]})");
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].per_analytic.has_value());
    CHECK_FALSE(rows[0].per_sim.has_value());
    CHECK_FALSE(rows[0].ci_low.has_value());
    CHECK_FALSE(rows[0].ci_high.has_value());
    CHECK_FALSE(rows[0].trials.has_value());
    CHECK_FALSE(rows[0].seed.has_value());

    const std::string csv = to_csv(rows);
    CHECK(csv.find(",,,,,\n") != std::string::npos);  // five trailing empty fields
}

TEST_CASE("CSV round-trips and header is pinned") {
    SweepSpec spec = parse_sweep_spec(
        R"({"modes":["AF","DF"],"snr_db":[8,12],"frame":{"packets":4,"symbols":8,"relayed":[0,1]},
           "frames":2000,"seed":7})");
    const auto rows = run_sweep(spec);
    CHECK(rows.size() == 2 * 2 * 2);
    const std::string csv = to_csv(rows);
    CHECK(csv.rfind(kCsvHeader, 0) == 0);
    CHECK(parse_csv(csv) == rows);
}

TEST_CASE("reruns and worker counts do not change a byte") {
    const std::string config =
        R"({"modes":["DF"],"snr_db":[6,10],"frame":{"packets":4,"symbols":8,"relayed":[1]},
           "frames":20000,"seed":11})";
    SweepSpec one = parse_sweep_spec(config);
    one.n_workers = 1;
    SweepSpec three = parse_sweep_spec(config);
    three.n_workers = 3;
    const std::string a = to_csv(run_sweep(one));
    const std::string b = to_csv(run_sweep(three));
    const std::string c = to_csv(run_sweep(one));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("forwarding-rate curves stay ordered at every SNR point") {
    SweepSpec spec = parse_sweep_spec(
        R"({"modes":["DF"],"snr_db":{"start":5,"stop":25,"step":2.5},
           "frame":{"packets":8,"symbols":16,"relayed":[0,1,2,4,8]},
           "outputs":["analytic"]})");
    const auto curves = group_curves(run_sweep(spec));
    REQUIRE(curves.size() == 5);
    const std::vector<int> ms = {0, 1, 2, 4, 8};
    for (std::size_t j = 1; j < ms.size(); ++j) {
        const auto& weaker = curves.at({RelayMode::df_decode_check, 8, 16, ms[j - 1]});
        const auto& stronger = curves.at({RelayMode::df_decode_check, 8, 16, ms[j]});
        for (std::size_t p = 0; p < weaker.size(); ++p)
            CHECK(*stronger[p].per_analytic <= *weaker[p].per_analytic);
    }
}

TEST_CASE("summary report carries efficiency and flags disagreements") {
    SweepSpec spec = parse_sweep_spec(
        R"({"modes":["DF"],"snr_db":[10,15],"frame":{"packets":8,"symbols":16,"relayed":[1]},
           "outputs":["analytic"]})");
    const auto rows = run_sweep(spec);
    const std::string report = summary_report(rows);
    CHECK(report.find("DF:8:16:1") != std::string::npos);
    CHECK(report.find("FR=0.125") != std::string::npos);
    CHECK(report.find("eta=0.888889") != std::string::npos);

    // synthetic disagreement: a row whose analytic PER is far outside the CI
    ResultRow fake;
    fake.snr_db = 10.0;
    fake.mode = RelayMode::df_decode_check;
    fake.n_packets = 8;
    fake.packet_len = 16;
    fake.n_relayed = 1;
    fake.per_analytic = 0.5;
    fake.per_sim = 0.1;
    fake.ci_low = 0.098;
    fake.ci_high = 0.102;
    fake.trials = 1000;
    fake.seed = 1;
    CHECK(classify_row(fake) == RowAgreement::disagree);
    const std::string flagged = summary_report(std::vector<ResultRow>{fake});
    CHECK(flagged.find("DISAGREE") != std::string::npos);
}

TEST_CASE("curve ids parse and format both ways") {
    const CurveId id{RelayMode::df_decode_check, 8, 16, 2};
    CHECK(format_curve_id(id) == "DF:8:16:2");
    CHECK(parse_curve_id("DF:8:16:2") == id);
    CHECK_THROWS_AS(parse_curve_id("DF:8:16"), ValidationError);
    CHECK_THROWS_AS(parse_curve_id("ZZ:8:16:2"), ValidationError);
}

TEST_CASE("gain_at_target on synthetic curves") {
    // PER = 10^{-snr/10} and the same curve shifted right by 3 dB
    std::vector<ResultRow> rows;
    for (double db = 5.0; db <= 30.0; db += 1.0) {
        ResultRow base;
        base.snr_db = db;
        base.mode = RelayMode::af_fixed_gain;
        base.n_packets = 8;
        base.packet_len = 16;
        base.n_relayed = 0;
        base.per_analytic = std::pow(10.0, -db / 10.0);
        rows.push_back(base);
        ResultRow shifted = base;
        shifted.n_relayed = 1;
        shifted.per_analytic = std::pow(10.0, -(db - 3.0) / 10.0);
        rows.push_back(shifted);
    }
    const CurveId baseline{RelayMode::af_fixed_gain, 8, 16, 0};
    const CurveId candidate{RelayMode::af_fixed_gain, 8, 16, 1};
    CHECK(gain_at_target_db(rows, 1e-2, baseline, baseline) == doctest::Approx(0.0));
    CHECK(gain_at_target_db(rows, 1e-2, candidate, baseline) ==
          doctest::Approx(3.0).epsilon(0.01));
    CHECK_THROWS_AS(gain_at_target_db(rows, 1e-9, baseline, candidate), std::range_error);
    CHECK_THROWS_AS(
        gain_at_target_db(rows, 1e-2, CurveId{RelayMode::df_decode_check, 1, 1, 0}, candidate),
        ValidationError);
}

TEST_CASE("selftest suite passes") {
    std::ostringstream sink;
    CHECK(relaylab::experiments::run_selftest(sink));
}
