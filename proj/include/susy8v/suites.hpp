#pragma once

#include <map>
#include <string>
#include <vector>

#include "susy8v/report.hpp"
#include "susy8v/theta.hpp"

namespace susy8v {

inline constexpr const char* tool_version = "1.0.0";

// One batch run: named suites over a parameter grid.  Defaults cover every
// certified statement, both cohomology branches included, in about a minute.
struct RunConfig {
    std::vector<std::string> suites;
    std::vector<double> p{0.2, 0.5};
    std::vector<double> u{0.1, 0.3};
    std::vector<double> t{pi / 6.0, 0.4, pi / 2.0};
    std::vector<int> L{1, 2, 3, 4, 5, 6};
    std::map<std::string, double> tolerances;  // per-check overrides
    unsigned seed = 20240801;
    std::string out;  // report file; empty writes to stdout only
    std::string format = "json";
    int threads = 1;
};

// The dispatchable suite names, "all" excluded.
const std::vector<std::string>& known_suites();

// Throws std::invalid_argument naming the offending field.
void validate_config(const RunConfig& config);

// Flat key = value lines (comma- or space-separated lists, # comments);
// unknown keys throw.  Tolerance overrides use keys tol.<check-name>.
RunConfig load_config_file(const std::string& path);

// Runs the named suites over the grid on a pool of `threads` workers.
// Record order is deterministic and all seeded draws derive from the
// config seed; runtime errors become fail records, never a crash.
Report run_suites(const RunConfig& config);

const char* status_name(Status s);

// {version, config, records[], summary{pass, fail, inconclusive}}.
std::string to_json(const RunConfig& config, const Report& report,
                    const std::string& timestamp);

// Fixed header, one record per row, 17 significant digits.
std::string to_csv(const Report& report);

// 0 all pass, 1 any fail, 3 inconclusive with zero fails.
int exit_code(const Report& report);

}  // namespace susy8v
