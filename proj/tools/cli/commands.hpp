#pragma once

#include <ostream>
#include <string>

#include "config.hpp"

namespace lhp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Executes one experiment. CSV/SVG goes to config.output_path (stdout when
/// empty); one summary line per cell goes to `log`. Returns 0 on success, 2
/// on numerical failure and 1 on usage or domain errors.
int run(const ExperimentConfig& config, std::ostream& log);

/// `base` with `suffix` inserted before the extension: ("a/out.csv", "_cf")
/// gives "a/out_cf.csv".
std::string with_suffix(const std::string& base, const std::string& suffix);

}  // namespace lhp::cli
