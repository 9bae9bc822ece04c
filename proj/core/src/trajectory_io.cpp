#include "sparselob/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sparselob {

namespace {

constexpr const char* kTrajectoryHeader =
    "run_index,time_h,event_kind,side,level,exec_or_inserted_volume_mwh,price_eur,mid_eur,"
    "spread_eur";

template <typename Writer>
void to_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path.string() + "'");
    writer(out);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_field_double(const std::string& s, int line_no, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError("trajectory line " + std::to_string(line_no) + ": bad " + what + " '" +
                         s + "'");
    return v;
}

EventClass parse_event_class(const std::string& s, int line_no) {
    if (s == "market") return EventClass::Market;
    if (s == "limit") return EventClass::Limit;
    if (s == "cancel") return EventClass::Cancel;
    throw ParseError("trajectory line " + std::to_string(line_no) + ": unknown event kind '" + s +
                     "'");
}

Side parse_side(const std::string& s, int line_no) {
    if (s == "bid") return Side::Bid;
    if (s == "ask") return Side::Ask;
    throw ParseError("trajectory line " + std::to_string(line_no) + ": unknown side '" + s + "'");
}

} // namespace

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << kTrajectoryHeader << "\n";
    for (const EventRecord& e : traj.events) {
        out << traj.run_index << ',' << format_fixed(e.time, 12) << ',' << to_string(e.kind.cls)
            << ',' << to_string(e.kind.side) << ',' << e.level << ',' << format_fixed(e.volume, 1)
            << ',' << format_fixed(e.price, 2) << ',' << format_fixed(e.mid, 3) << ','
            << format_fixed(e.spread, 2) << "\n";
    }
}

void write_trajectory_file(const std::filesystem::path& path, const Trajectory& traj) {
    to_file(path, [&](std::ostream& out) { write_trajectory_csv(out, traj); });
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trajectory file is empty");
    if (line != kTrajectoryHeader)
        throw ParseError("trajectory file has an unexpected header: '" + line + "'");

    std::vector<TrajectoryRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 9)
            throw ParseError("trajectory line " + std::to_string(line_no) + ": expected 9 fields");
        TrajectoryRow row;
        row.run_index = static_cast<int>(parse_field_double(fields[0], line_no, "run index"));
        row.time = parse_field_double(fields[1], line_no, "time");
        row.kind.cls = parse_event_class(fields[2], line_no);
        row.kind.side = parse_side(fields[3], line_no);
        row.level = static_cast<int>(parse_field_double(fields[4], line_no, "level"));
        row.kind.level = row.kind.cls == EventClass::Cancel ? row.level : 0;
        row.volume = parse_field_double(fields[5], line_no, "volume");
        row.price = parse_field_double(fields[6], line_no, "price");
        row.mid = parse_field_double(fields[7], line_no, "mid");
        row.spread = parse_field_double(fields[8], line_no, "spread");
        if (!rows.empty() && row.run_index == rows.back().run_index &&
            row.time < rows.back().time)
            throw ParseError("trajectory line " + std::to_string(line_no) +
                             ": rows not time-ordered");
        rows.push_back(row);
    }
    return rows;
}

std::vector<TrajectoryRow> read_trajectory_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open trajectory file '" + path.string() + "'");
    return read_trajectory_csv(in);
}

void write_snapshots_csv(std::ostream& out, const Trajectory& traj) {
    out << "run_index,snapshot_time_h,side,level,price_eur,volume_mwh\n";
    for (const auto& [time, book] : traj.snapshots)
        for (Side side : {Side::Bid, Side::Ask})
            for (int k = 1; k <= book.levels(); ++k)
                out << traj.run_index << ',' << format_fixed(time, 12) << ',' << to_string(side)
                    << ',' << k << ',' << format_fixed(book.price(side, k), 2) << ','
                    << format_fixed(book.volume(side, k), 1) << "\n";
}

void write_snapshots_file(const std::filesystem::path& path, const Trajectory& traj) {
    to_file(path, [&](std::ostream& out) { write_snapshots_csv(out, traj); });
}

void write_run_summaries_csv(std::ostream& out, const EnsembleResult& ensemble) {
    if (ensemble.runs.empty()) throw MissingSnapshot("ensemble holds no runs");
    const int k_max =
        std::min(3, ensemble.runs.front().snapshots.empty()
                        ? 0
                        : ensemble.runs.front().snapshots.back().second.levels());
    out << "run_index,events,final_mid_eur,final_spread_eur";
    for (int k = 1; k <= k_max; ++k) out << ",d" << k << "_eur";
    out << "\n";
    for (const RunSummary& run : ensemble.runs) {
        out << run.run_index << ',' << run.event_count << ',' << format_fixed(run.final_mid, 3)
            << ',' << format_fixed(run.final_spread, 2);
        if (k_max > 0) {
            const BookState& book = run.snapshots.back().second;
            for (int k = 1; k <= k_max; ++k)
                out << ',' << format_fixed(book.ask_price(k) - book.bid_price(k), 2);
        }
        out << "\n";
    }
}

void write_run_summaries_file(const std::filesystem::path& path, const EnsembleResult& ensemble) {
    to_file(path, [&](std::ostream& out) { write_run_summaries_csv(out, ensemble); });
}

void write_distribution_csv(std::ostream& out, const DistributionSummary& dist) {
    out << "bin_lo_eur,bin_hi_eur,count\n";
    for (std::size_t i = 0; i < dist.counts.size(); ++i)
        out << format_fixed(dist.bin_edges[i], 4) << ',' << format_fixed(dist.bin_edges[i + 1], 4)
            << ',' << dist.counts[i] << "\n";
}

void write_distribution_file(const std::filesystem::path& path, const DistributionSummary& dist) {
    to_file(path, [&](std::ostream& out) { write_distribution_csv(out, dist); });
}

void write_distance_summary_csv(std::ostream& out,
                                const std::vector<std::pair<int, DistributionSummary>>& by_rank) {
    out << "k,mean_eur,std_eur,runs\n";
    for (const auto& [k, dist] : by_rank)
        out << k << ',' << format_fixed(dist.mean, 6) << ',' << format_fixed(dist.stddev, 6) << ','
            << dist.sample_count << "\n";
}

void write_distance_summary_file(const std::filesystem::path& path,
                                 const std::vector<std::pair<int, DistributionSummary>>& by_rank) {
    to_file(path, [&](std::ostream& out) { write_distance_summary_csv(out, by_rank); });
}

void write_intensity_histogram_csv(std::ostream& out, const IntensityHistogram& hist) {
    out << "window,start_h,end_h";
    for (int c = 0; c < kEventClassCount; ++c) out << ',' << event_class_label(c);
    out << ",total\n";
    const double width_h = static_cast<double>(hist.window_minutes) / 60.0;
    for (std::size_t w = 0; w < hist.window_start_hours.size(); ++w) {
        out << w << ',' << format_fixed(hist.window_start_hours[w], 6) << ','
            << format_fixed(hist.window_start_hours[w] + width_h, 6);
        for (int c = 0; c < kEventClassCount; ++c)
            out << ',' << format_fixed(hist.mean_counts[c][w], 6);
        out << ',' << format_fixed(hist.mean_total[w], 6) << "\n";
    }
}

void write_intensity_histogram_file(const std::filesystem::path& path,
                                    const IntensityHistogram& hist) {
    to_file(path, [&](std::ostream& out) { write_intensity_histogram_csv(out, hist); });
}

void write_signature_csv(std::ostream& out, const SignaturePlot& plot) {
    out << "tau_s,c_hat\n";
    for (std::size_t i = 0; i < plot.tau_seconds.size(); ++i)
        out << format_fixed(plot.tau_seconds[i], 3) << ',' << format_fixed(plot.c_hat[i], 9)
            << "\n";
}

void write_signature_file(const std::filesystem::path& path, const SignaturePlot& plot) {
    to_file(path, [&](std::ostream& out) { write_signature_csv(out, plot); });
}

} // namespace sparselob
