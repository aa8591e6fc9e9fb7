#ifndef TSFORE_CLI_HPP
#define TSFORE_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsfore {

inline constexpr const char* kToolVersion = "tsfore 1.0.0";

/// One parsed invocation. Fields not used by the active command keep
/// their defaults and are ignored.
struct RunConfig {
    std::string command; ///< decompose | diagnose | forecast | evaluate
    std::string input;
    std::string date_column = "Date";
    std::string close_column = "Close";
    std::size_t period = 7;
    std::size_t window = 5;
    double test_ratio = 0.2;
    std::size_t horizon = 30;
    std::optional<double> lambda; ///< fixed lasso penalty; unset = grid pick
    std::size_t lambda_grid = 20; ///< penalty grid size when not fixed
    std::vector<std::string> models = {"ols", "lasso", "tree"};
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    std::string format = "csv";     ///< data-file format: csv | json
    std::string objective = "sse";  ///< forecast fit target: sse | mae | mape
    std::string optimizer = "grid"; ///< forecast search: grid | nelder-mead
    std::string command_line;       ///< echoed into every output header
};

/**
 * Runs one subcommand end to end: loads the input, computes, and writes
 * every file the command promises into out_dir (created if absent). Each
 * output starts with a comment header (JSON files carry a leading "meta"
 * object instead) recording tool version, command line, dataset
 * fingerprint and seed, so reruns with identical inputs and flags are
 * byte-identical. Throws Error on any failure.
 */
void run_command(const RunConfig& config);

} // namespace tsfore

#endif // TSFORE_CLI_HPP
