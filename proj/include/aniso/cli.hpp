#pragma once

#include <iosfwd>
#include <string>

#include "aniso/bounds.hpp"

namespace aniso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

// Entry point of the `aniso` tool: 0 on pass, 2 on failed verification, 1 on usage/IO errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "key = value" lines, '#' comments. Relative file paths resolve against base_dir.
// Keys: matrix (rows separated by ';'), matrix_file, kernel, scales, alpha, mu, q,
// order, mode, radius, tail_eps, tail_q, profile_decay, profile_radius, csv, svg.
struct ConvergeConfig {
    ExperimentSpec spec;
    std::string csv_path;
    std::string svg_path;
};
ConvergeConfig parse_converge_config(const std::string& text, const std::string& base_dir = ".");

// Accepts a number, "inf" or "infinity".
double parse_q(const std::string& text);

} // namespace aniso::cli
