#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "sparselob/engine.hpp"
#include "sparselob/stats.hpp"
#include "sparselob/trajectory_io.hpp"

using namespace sparselob;

namespace {

SimConfig io_config() {
    SimConfig cfg;
    cfg.cutoff_time = 0.25;
    cfg.snapshot_times = {0.25};
    cfg.master_seed = 77;
    return cfg;
}

} // namespace

TEST_CASE("trajectory files are byte-stable and re-ingestable") {
    const SimConfig cfg = io_config();
    const Trajectory traj = simulate(cfg, 0);
    REQUIRE(traj.events.size() > 10);

    std::ostringstream first, second;
    write_trajectory_csv(first, traj);
    write_trajectory_csv(second, simulate(cfg, 0));
    CHECK(first.str() == second.str());

    std::istringstream in(first.str());
    const auto rows = read_trajectory_csv(in);
    REQUIRE(rows.size() == traj.events.size());

    // Replaying the run reproduces the recorded mid/spread columns exactly
    // at the serialized precision.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const EventRecord& e = traj.events[i];
        CHECK(rows[i].run_index == 0);
        CHECK(rows[i].kind.cls == e.kind.cls);
        CHECK(rows[i].kind.side == e.kind.side);
        CHECK(rows[i].level == e.level);
        CHECK(format_fixed(rows[i].mid, 3) == format_fixed(e.mid, 3));
        CHECK(format_fixed(rows[i].spread, 2) == format_fixed(e.spread, 2));
        CHECK(format_fixed(rows[i].volume, 1) == format_fixed(e.volume, 1));
        if (i > 0) CHECK(rows[i].time >= rows[i - 1].time);
    }
}

TEST_CASE("trajectory reader rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS((void)read_trajectory_csv(empty), ParseError);

    std::istringstream bad_header("nope\n1,2,3\n");
    CHECK_THROWS_AS((void)read_trajectory_csv(bad_header), ParseError);

    std::ostringstream ok;
    write_trajectory_csv(ok, simulate(io_config(), 0));
    std::string mangled = ok.str();
    mangled += "0,bad,market,bid,0,1.0,1.00,1.000,1.00\n";
    std::istringstream in(mangled);
    CHECK_THROWS_AS((void)read_trajectory_csv(in), ParseError);
}

TEST_CASE("snapshot dumps list every level of every snapshot") {
    const SimConfig cfg = io_config();
    const Trajectory traj = simulate(cfg, 0);
    std::ostringstream out;
    write_snapshots_csv(out, traj);
    const std::string text = out.str();
    CHECK(text.rfind("run_index,snapshot_time_h,side,level,price_eur,volume_mwh\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 1 + traj.snapshots.size() * 2 * cfg.params.levels_per_side);
}

TEST_CASE("ensemble tables carry headers and stable formatting") {
    const SimConfig cfg = io_config();
    const EnsembleResult ens = run_monte_carlo(cfg, 4, 2);

    std::ostringstream runs;
    write_run_summaries_csv(runs, ens);
    CHECK(runs.str().rfind("run_index,events,final_mid_eur,final_spread_eur,d1_eur,d2_eur,d3_eur",
                           0) == 0);

    const DistributionSummary dist = limit_distance_distribution(ens, 1, cfg.cutoff_time);
    std::ostringstream hist;
    write_distribution_csv(hist, dist);
    CHECK(hist.str().rfind("bin_lo_eur,bin_hi_eur,count\n", 0) == 0);

    std::ostringstream windows;
    write_intensity_histogram_csv(windows, event_intensity_histogram(ens, 5));
    CHECK(windows.str().rfind("window,start_h,end_h,market_bid,market_ask,limit_bid,limit_ask,"
                              "cancel_bid,cancel_ask,total\n",
                              0) == 0);

    std::ostringstream sig;
    SignaturePlot plot;
    plot.tau_seconds = {10, 20};
    plot.c_hat = {1.25, 0.5};
    write_signature_csv(sig, plot);
    CHECK(sig.str() == "tau_s,c_hat\n10.000,1.250000000\n20.000,0.500000000\n");
}
