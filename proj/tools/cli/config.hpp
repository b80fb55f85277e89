#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lhp/geometry.hpp"

namespace lhp::cli {

enum class Command { sample, crofton, variance, cumulants, limit, regimes, render };

/// Bad command line or configuration file.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_config for --help; what() holds the help text.
class HelpRequested : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Command command = Command::crofton;
    /// First entry of each list; intensity multiplier shared by all cells.
    ModelConfig model{2, 0.0, 3.0, 1.0};
    std::vector<int> d_list{2};
    std::vector<double> lambda_list{0.0};
    std::vector<double> R_list{3.0};
    std::size_t n_replicates = 1000;
    std::uint64_t seed = 1;
    std::string output_path; // empty: stdout
    int threads = 0;         // 0: hardware concurrency
    int k_max = 4;           // highest cumulant order for `cumulants`
    std::string dump_path;   // optional binary dump for `sample` and `limit`
};

std::string command_name(Command c);

/// Keys accepted in configuration files, in documentation order.
const std::vector<std::string>& config_keys();

struct ConfigEntry {
    std::string value;
    int line;
};

/// Reads key=value lines; '#' starts a comment, blank lines are skipped.
/// Unknown keys and lines without '=' raise UsageError naming the line.
std::map<std::string, ConfigEntry> read_config_file(std::istream& in, const std::string& source);

/// Parses argv (argv[0] is the program name). Values from --config FILE are
/// applied first and explicit flags override them. Throws UsageError for
/// malformed input, DomainError for values outside the model domain and
/// HelpRequested for --help.
ExperimentConfig parse_config(int argc, const char* const* argv);
ExperimentConfig parse_config(const std::vector<std::string>& args);

}  // namespace lhp::cli
