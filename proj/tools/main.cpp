#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tsfore/cli.hpp"
#include "tsfore/errors.hpp"

namespace {

std::string reconstruct_command_line(int argc, char** argv) {
    std::string line = "tsfore";
    for (int i = 1; i < argc; ++i) {
        line += ' ';
        line += argv[i];
    }
    return line;
}

std::vector<std::string> split_models(const std::string& list) {
    std::vector<std::string> names;
    std::string current;
    for (const char c : list) {
        if (c == ',') {
            if (!current.empty()) names.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current += c;
        }
    }
    if (!current.empty()) names.push_back(current);
    return names;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-series forecasting and diagnostics for daily OHLCV data"};
    app.set_version_flag("--version", tsfore::kToolVersion);
    app.require_subcommand(1);

    tsfore::RunConfig config;
    config.command_line = reconstruct_command_line(argc, argv);
    double lambda_value = 0.0;
    std::string models_list = "ols,lasso,tree";

    auto add_common = [&config](CLI::App* cmd) {
        cmd->add_option("--input", config.input, "input csv file with date and close columns")
            ->required();
        cmd->add_option("--date-col", config.date_column, "date column header")
            ->capture_default_str();
        cmd->add_option("--close-col", config.close_column, "close column header")
            ->capture_default_str();
        cmd->add_option("--seed", config.seed, "seed echoed into outputs and used by fits")
            ->capture_default_str();
        cmd->add_option("--out", config.out_dir, "output directory, created if absent")
            ->capture_default_str();
        cmd->add_option("--format", config.format, "data-file format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    CLI::App* decompose =
        app.add_subcommand("decompose", "split the series into trend, seasonal and residual");
    add_common(decompose);
    decompose->add_option("--period", config.period, "seasonal period in observations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* diagnose =
        app.add_subcommand("diagnose", "correlograms plus a unit-root stationarity test");
    add_common(diagnose);

    CLI::App* forecast =
        app.add_subcommand("forecast", "optimized triple-smoothing forecast of the close");
    add_common(forecast);
    forecast->add_option("--period", config.period, "seasonal period in observations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    forecast->add_option("--horizon", config.horizon, "steps ahead to forecast")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    forecast->add_option("--objective", config.objective, "in-sample fit target")
        ->check(CLI::IsMember({"sse", "mae", "mape"}))
        ->capture_default_str();
    forecast->add_option("--optimizer", config.optimizer, "parameter search strategy")
        ->check(CLI::IsMember({"grid", "nelder-mead"}))
        ->capture_default_str();

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "backtest lag-feature regressors and compare them");
    add_common(evaluate);
    evaluate->add_option("--window", config.window, "lag window size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    evaluate->add_option("--test-ratio", config.test_ratio, "chronological test share")
        ->capture_default_str();
    CLI::Option* lambda_option =
        evaluate->add_option("--lambda", lambda_value, "fixed lasso penalty")
            ->check(CLI::NonNegativeNumber);
    evaluate
        ->add_option("--lambda-grid", config.lambda_grid,
                     "lasso penalty grid size when --lambda is not given")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->excludes(lambda_option);
    evaluate->add_option("--models", models_list, "comma-separated subset of ols,lasso,tree")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    if (lambda_option->count() > 0) config.lambda = lambda_value;
    config.models = split_models(models_list);

    try {
        tsfore::run_command(config);
    } catch (const tsfore::Error& e) {
        std::cerr << e.what() << '\n';
        return tsfore::is_input_error(e.code()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 3;
    }
    return 0;
}
