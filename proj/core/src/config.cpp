#include "sparselob/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace sparselob {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail_parse(const std::string& origin, int line, const std::string& msg) {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& value, const std::string& origin, int line,
                    const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        fail_parse(origin, line, "key '" + key + "': cannot parse number '" + value + "'");
    return v;
}

int parse_int(const std::string& value, const std::string& origin, int line,
              const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        fail_parse(origin, line, "key '" + key + "': cannot parse integer '" + value + "'");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& value, const std::string& origin, int line,
                        const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        fail_parse(origin, line, "key '" + key + "': cannot parse seed '" + value + "'");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_list(const std::string& value, const std::string& origin, int line,
                               const std::string& key) {
    std::string normalized = value;
    for (char& c : normalized)
        if (c == ',') c = ' ';
    std::istringstream is(normalized);
    std::vector<double> out;
    std::string token;
    while (is >> token) out.push_back(parse_double(token, origin, line, key));
    if (out.empty()) fail_parse(origin, line, "key '" + key + "': empty list");
    return out;
}

bool reserved_per_side_key(const std::string& key) {
    for (const char* prefix : {"market.", "limit.", "cancel."}) {
        const std::string p(prefix);
        if (key.rfind(p + "bid.", 0) == 0 || key.rfind(p + "ask.", 0) == 0) return true;
    }
    return false;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

SimConfig parse_config(std::istream& in, const std::string& origin) {
    SimConfig cfg;
    bool snapshots_given = false;

    std::string section;
    std::set<std::string> seen;
    std::string raw_line;
    int line = 0;

    while (std::getline(in, raw_line)) {
        ++line;
        const std::string text = trim(raw_line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;

        if (text.front() == '[') {
            if (text.back() != ']') fail_parse(origin, line, "unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            static const std::set<std::string> known_sections{"model", "initial_book",
                                                              "simulation", "outputs", "stats"};
            if (!known_sections.count(section))
                fail_parse(origin, line, "unknown section '" + section + "'");
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string::npos) fail_parse(origin, line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) fail_parse(origin, line, "empty key");
        if (value.empty()) fail_parse(origin, line, "key '" + key + "': empty value");
        if (section.empty()) fail_parse(origin, line, "key '" + key + "' outside any section");

        const std::string qualified = section + "." + key;
        if (!seen.insert(qualified).second)
            fail_parse(origin, line, "duplicate key '" + qualified + "'");

        auto num = [&] { return parse_double(value, origin, line, qualified); };
        auto list = [&] { return parse_list(value, origin, line, qualified); };

        if (section == "model") {
            ModelParams& p = cfg.params;
            if (key == "horizon_hours") p.horizon_hours = num();
            else if (key == "levels_per_side") p.levels_per_side = parse_int(value, origin, line, qualified);
            else if (key == "market.base_rate") p.market.base_rate = num();
            else if (key == "market.time_decay") p.market.time_decay = num();
            else if (key == "market.spread_sensitivity") p.market.spread_sensitivity = num();
            else if (key == "limit.base_rate") p.limit.base_rate = num();
            else if (key == "limit.time_decay") p.limit.time_decay = num();
            else if (key == "limit.distance_rate_scale") p.limit.distance_rate_scale = num();
            else if (key == "limit.distance_rate_decay") p.limit.distance_rate_decay = num();
            else if (key == "cancel.base_rate") p.cancel.base_rate = num();
            else if (key == "cancel.time_decay") p.cancel.time_decay = num();
            else if (key == "market_volume.probs") p.market_volume.probs = list();
            else if (key == "market_volume.values_mwh") p.market_volume.volumes = list();
            else if (key == "limit_volume.probs") p.limit_volume.probs = list();
            else if (key == "limit_volume.values_mwh") p.limit_volume.volumes = list();
            else if (key == "volume_floor_mwh") p.volume_floor = num();
            else if (key == "tick_eur") p.tick = num();
            else if (reserved_per_side_key(key))
                throw ValidationError(origin + ":" + std::to_string(line) + ": key '" + key +
                                      "' is reserved for per-side overrides, which are not "
                                      "supported; model parameters apply to both sides");
            else fail_parse(origin, line, "unknown key 'model." + key + "'");
        } else if (section == "initial_book") {
            if (key == "bid_prices_eur") cfg.initial_book.bid_prices = list();
            else if (key == "ask_prices_eur") cfg.initial_book.ask_prices = list();
            else if (key == "bid_volumes_mwh") cfg.initial_book.bid_volumes = list();
            else if (key == "ask_volumes_mwh") cfg.initial_book.ask_volumes = list();
            else if (key == "jitter_ticks") cfg.initial_jitter_ticks = parse_int(value, origin, line, qualified);
            else fail_parse(origin, line, "unknown key 'initial_book." + key + "'");
        } else if (section == "simulation") {
            if (key == "start_hours") cfg.start_time = num();
            else if (key == "cutoff_hours") cfg.cutoff_time = num();
            else if (key == "master_seed") cfg.master_seed = parse_u64(value, origin, line, qualified);
            else if (key == "snapshot_hours") {
                cfg.snapshot_times = list();
                snapshots_given = true;
            } else fail_parse(origin, line, "unknown key 'simulation." + key + "'");
        } else if (section == "outputs") {
            if (key == "out_dir") cfg.outputs.out_dir = value;
            else fail_parse(origin, line, "unknown key 'outputs." + key + "'");
        } else if (section == "stats") {
            if (key == "tau_grid_seconds") cfg.stats.tau_grid_seconds = list();
            else if (key == "window_minutes") cfg.stats.window_minutes = parse_int(value, origin, line, qualified);
            else if (key == "histogram_bin_eur") cfg.stats.histogram_bin_eur = num();
            else if (key == "histogram_clip_percentile") cfg.stats.histogram_clip_percentile = num();
            else fail_parse(origin, line, "unknown key 'stats." + key + "'");
        }
    }

    if (!snapshots_given) cfg.snapshot_times = {cfg.cutoff_time};
    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    return parse_config(in, path.string());
}

std::string config_to_string(const SimConfig& cfg) {
    std::ostringstream os;
    const ModelParams& p = cfg.params;
    os << "[model]\n";
    os << "horizon_hours = " << format_double(p.horizon_hours) << "\n";
    os << "levels_per_side = " << p.levels_per_side << "\n";
    os << "market.base_rate = " << format_double(p.market.base_rate) << "\n";
    os << "market.time_decay = " << format_double(p.market.time_decay) << "\n";
    os << "market.spread_sensitivity = " << format_double(p.market.spread_sensitivity) << "\n";
    os << "limit.base_rate = " << format_double(p.limit.base_rate) << "\n";
    os << "limit.time_decay = " << format_double(p.limit.time_decay) << "\n";
    os << "limit.distance_rate_scale = " << format_double(p.limit.distance_rate_scale) << "\n";
    os << "limit.distance_rate_decay = " << format_double(p.limit.distance_rate_decay) << "\n";
    os << "cancel.base_rate = " << format_double(p.cancel.base_rate) << "\n";
    os << "cancel.time_decay = " << format_double(p.cancel.time_decay) << "\n";
    os << "market_volume.probs = " << format_list(p.market_volume.probs) << "\n";
    os << "market_volume.values_mwh = " << format_list(p.market_volume.volumes) << "\n";
    os << "limit_volume.probs = " << format_list(p.limit_volume.probs) << "\n";
    os << "limit_volume.values_mwh = " << format_list(p.limit_volume.volumes) << "\n";
    os << "volume_floor_mwh = " << format_double(p.volume_floor) << "\n";
    os << "tick_eur = " << format_double(p.tick) << "\n";
    os << "\n[initial_book]\n";
    os << "bid_prices_eur = " << format_list(cfg.initial_book.bid_prices) << "\n";
    os << "ask_prices_eur = " << format_list(cfg.initial_book.ask_prices) << "\n";
    if (!cfg.initial_book.bid_volumes.empty())
        os << "bid_volumes_mwh = " << format_list(cfg.initial_book.bid_volumes) << "\n";
    if (!cfg.initial_book.ask_volumes.empty())
        os << "ask_volumes_mwh = " << format_list(cfg.initial_book.ask_volumes) << "\n";
    os << "jitter_ticks = " << cfg.initial_jitter_ticks << "\n";
    os << "\n[simulation]\n";
    os << "start_hours = " << format_double(cfg.start_time) << "\n";
    os << "cutoff_hours = " << format_double(cfg.cutoff_time) << "\n";
    os << "master_seed = " << cfg.master_seed << "\n";
    os << "snapshot_hours = " << format_list(cfg.snapshot_times) << "\n";
    os << "\n[outputs]\n";
    os << "out_dir = " << cfg.outputs.out_dir << "\n";
    os << "\n[stats]\n";
    os << "tau_grid_seconds = " << format_list(cfg.stats.tau_grid_seconds) << "\n";
    os << "window_minutes = " << cfg.stats.window_minutes << "\n";
    os << "histogram_bin_eur = " << format_double(cfg.stats.histogram_bin_eur) << "\n";
    os << "histogram_clip_percentile = " << format_double(cfg.stats.histogram_clip_percentile)
       << "\n";
    return os.str();
}

void save_config(const SimConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file '" + path.string() + "'");
    out << config_to_string(cfg);
}

} // namespace sparselob
