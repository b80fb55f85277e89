#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "lhp/errors.hpp"

namespace lhp::cli {

namespace {

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table{
        {"sample", Command::sample},       {"crofton", Command::crofton}, {"variance", Command::variance},
        {"cumulants", Command::cumulants}, {"limit", Command::limit},     {"regimes", Command::regimes},
        {"render", Command::render},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, const std::string& where, const std::string& key) {
    const std::string_view t = trim(text);
    T value{};
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw UsageError(where + ": malformed value for '" + key + "': '" + std::string(text) + "'");
    }
    return value;
}

template <class T>
std::vector<T> parse_list(std::string_view text, const std::string& where, const std::string& key) {
    std::vector<T> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_number<T>(item, where, key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
    if (key == "d") {
        cfg.d_list = parse_list<int>(value, where, key);
    } else if (key == "lambda") {
        cfg.lambda_list = parse_list<double>(value, where, key);
    } else if (key == "R") {
        cfg.R_list = parse_list<double>(value, where, key);
    } else if (key == "n") {
        const auto n = parse_number<long long>(value, where, key);
        if (n < 1) throw UsageError(where + ": 'n' must be >= 1");
        cfg.n_replicates = static_cast<std::size_t>(n);
    } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, where, key);
    } else if (key == "multiplier") {
        cfg.model.intensity_multiplier = parse_number<double>(value, where, key);
    } else if (key == "out") {
        cfg.output_path = std::string(trim(value));
    } else if (key == "threads") {
        cfg.threads = parse_number<int>(value, where, key);
        if (cfg.threads < 0) throw UsageError(where + ": 'threads' must be >= 0");
    } else if (key == "kmax") {
        cfg.k_max = parse_number<int>(value, where, key);
    } else if (key == "dump") {
        cfg.dump_path = std::string(trim(value));
    } else {
        throw UsageError(where + ": unknown key '" + key + "'");
    }
}

void validate(ExperimentConfig& cfg) {
    for (const int d : cfg.d_list) {
        if (d < 2) throw DomainError("dimension d must be >= 2, got " + std::to_string(d));
    }
    for (const double l : cfg.lambda_list) {
        if (!(l >= 0.0 && l <= 1.0)) throw DomainError("lambda must lie in [0, 1], got " + std::to_string(l));
    }
    for (const double R : cfg.R_list) {
        if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("radius R must be positive, got " + std::to_string(R));
    }
    if (!(cfg.model.intensity_multiplier > 0.0)) throw DomainError("multiplier must be positive");
    if (cfg.k_max < 1 || cfg.k_max > 8) throw UsageError("kmax must lie in 1..8");
    cfg.model.d = cfg.d_list.front();
    cfg.model.lambda = cfg.lambda_list.front();
    cfg.model.R = cfg.R_list.front();
}

}  // namespace

std::string command_name(Command c) {
    for (const auto& [name, cmd] : command_table()) {
        if (cmd == c) return name;
    }
    return "?";
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{"d",          "lambda",  "R",    "n",   "seed",
                                               "multiplier", "out",     "threads", "kmax", "dump"};
    return keys;
}

std::map<std::string, ConfigEntry> read_config_file(std::istream& in, const std::string& source) {
    std::map<std::string, ConfigEntry> entries;
    std::string raw;
    int line_no = 0;
    const auto& keys = config_keys();
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos) throw UsageError(where + ": expected key=value, got '" + raw + "'");
        const std::string key(trim(line.substr(0, eq)));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            std::string valid;
            for (const auto& k : keys) valid += (valid.empty() ? "" : ", ") + k;
            throw UsageError(where + ": unknown key '" + key + "'; valid keys: " + valid);
        }
        entries[key] = ConfigEntry{std::string(trim(line.substr(eq + 1))), line_no};
    }
    return entries;
}

ExperimentConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"Simulation and exact moments of random hyperplane processes in hyperbolic space", "lhp"};
    std::string command;
    std::string config_path;
    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option*> options;

    std::vector<std::string> names;
    for (const auto& [name, cmd] : command_table()) names.push_back(name);
    app.add_option("command", command, "sample | crofton | variance | cumulants | limit | regimes | render")
        ->required()
        ->check(CLI::IsMember(names));
    const std::vector<std::pair<std::string, std::string>> spec{
        {"d", "dimension(s), comma separated"},
        {"lambda", "curvature parameter(s) in [0,1], comma separated"},
        {"R", "radius or radii, comma separated"},
        {"n", "number of replicates or draws"},
        {"seed", "64-bit seed"},
        {"multiplier", "intensity multiplier (1 = oriented convention)"},
        {"out", "output file (default stdout)"},
        {"threads", "worker threads (0 = all cores)"},
        {"kmax", "highest cumulant order for `cumulants`"},
        {"dump", "binary dump of sampled realizations or draws"},
    };
    for (const auto& [key, help] : spec) options[key] = app.add_option("--" + key, flags[key], help);
    app.add_option("--config", config_path, "key=value configuration file; flags override it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ExperimentConfig cfg;
    cfg.command = command_table().at(command);
    if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) throw UsageError("cannot open configuration file '" + config_path + "'");
        for (const auto& [key, entry] : read_config_file(file, config_path)) {
            apply(cfg, key, entry.value, config_path + ":" + std::to_string(entry.line));
        }
    }
    for (const auto& [key, opt] : options) {
        if (opt->count() > 0) apply(cfg, key, flags[key], "--" + key);
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"lhp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_config(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lhp::cli
