#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scatpoly/disk_quadrature.hpp"
#include "scatpoly/transform.hpp"

namespace scatpoly::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

// Runs the command line (args excludes the program name). Regular output goes
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "builtin:phi_<p>_<q>", "builtin:radial_bump" ((1 - r^2)^2) or "builtin:unit".
// Returns false if the name is not a known built-in.
bool builtin_function(const std::string& name, DiskFunction& f);

// "NRxNT" -> GridSpec; throws std::invalid_argument on malformed text.
GridSpec parse_grid_spec(const std::string& text);

// Comma-separated list of positive doubles below 1.
std::vector<double> parse_eps_ladder(const std::string& text);

}  // namespace scatpoly::cli
