#include "tsfore/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsfore/correlogram.hpp"
#include "tsfore/decompose.hpp"
#include "tsfore/errors.hpp"
#include "tsfore/evaluation.hpp"
#include "tsfore/format.hpp"
#include "tsfore/model_json.hpp"
#include "tsfore/ohlcv.hpp"
#include "tsfore/smoothing.hpp"
#include "tsfore/stationarity.hpp"
#include "tsfore/time_series.hpp"

namespace tsfore {

namespace {

/// Shared identity stamped into every output of one run.
struct OutputContext {
    std::string command_line;
    DatasetFingerprint fingerprint;
    std::uint64_t seed = 0;
    std::filesystem::path dir;
    bool json = false; ///< data files as JSON instead of CSV
};

std::string checksum_hex(std::uint64_t checksum) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
    return buf;
}

void write_comment_header(std::ostream& out, const OutputContext& ctx) {
    out << "# " << kToolVersion << '\n';
    out << "# command: " << ctx.command_line << '\n';
    out << "# data: rows=" << ctx.fingerprint.rows
        << " start=" << ctx.fingerprint.first.to_string()
        << " end=" << ctx.fingerprint.last.to_string()
        << " checksum=" << checksum_hex(ctx.fingerprint.checksum) << '\n';
    out << "# seed: " << ctx.seed << '\n';
}

/// The JSON twin of write_comment_header; goes first in every JSON file
/// because a literal comment line would break parsers.
nlohmann::ordered_json meta_json(const OutputContext& ctx) {
    nlohmann::ordered_json meta;
    meta["tool"] = kToolVersion;
    meta["command"] = ctx.command_line;
    meta["data"] = {{"rows", ctx.fingerprint.rows},
                    {"start", ctx.fingerprint.first.to_string()},
                    {"end", ctx.fingerprint.last.to_string()},
                    {"checksum", checksum_hex(ctx.fingerprint.checksum)}};
    meta["seed"] = ctx.seed;
    return meta;
}

std::ofstream open_output(const OutputContext& ctx, const std::string& name) {
    const std::filesystem::path path = ctx.dir / name;
    std::ofstream out(path);
    if (!out.is_open()) raise(ErrorCode::EmptyFile, "cannot write '" + path.string() + "'");
    return out;
}

void write_json_file(const OutputContext& ctx, const std::string& name,
                     const nlohmann::ordered_json& doc) {
    auto out = open_output(ctx, name);
    out << doc.dump(2) << '\n';
}

/// Table-shaped data goes to name.csv with a comment header, or to
/// name.json with rows as an array of objects, per --format.
class DataFile {
public:
    DataFile(const OutputContext& ctx, const std::string& stem,
             std::vector<std::string> columns)
        : ctx_(ctx), stem_(stem), columns_(std::move(columns)) {}

    void add_row(std::vector<nlohmann::ordered_json> cells) {
        rows_.push_back(std::move(cells));
    }

    void write() const {
        if (ctx_.json) {
            nlohmann::ordered_json doc;
            doc["meta"] = meta_json(ctx_);
            auto& items = doc["rows"] = nlohmann::ordered_json::array();
            for (const auto& row : rows_) {
                nlohmann::ordered_json item;
                for (std::size_t c = 0; c < columns_.size(); ++c) item[columns_[c]] = row[c];
                items.push_back(std::move(item));
            }
            write_json_file(ctx_, stem_ + ".json", doc);
            return;
        }
        auto out = open_output(ctx_, stem_ + ".csv");
        write_comment_header(out, ctx_);
        for (std::size_t c = 0; c < columns_.size(); ++c)
            out << (c == 0 ? "" : ",") << columns_[c];
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c != 0) out << ',';
                out << csv_cell(row[c]);
            }
            out << '\n';
        }
    }

private:
    static std::string csv_cell(const nlohmann::ordered_json& cell) {
        if (cell.is_null()) return "";
        if (cell.is_string()) return cell.get<std::string>();
        if (cell.is_number_float()) return format_double(cell.get<double>());
        return cell.dump();
    }

    const OutputContext& ctx_;
    std::string stem_;
    std::vector<std::string> columns_;
    std::vector<std::vector<nlohmann::ordered_json>> rows_;
};

TimeSeries load_series(const RunConfig& config) {
    CsvSchema schema;
    schema.date_column = config.date_column;
    schema.close_column = config.close_column;
    const auto records = load_csv(config.input, schema);
    return to_series(records, FieldSelector::Close, GapPolicy::Error);
}

void cmd_decompose(const RunConfig& config, const TimeSeries& series,
                   const OutputContext& ctx) {
    const DecompositionResult result = decompose(series, config.period);
    DataFile file(ctx, "decomposition",
                  {"index", "date", "observed", "trend", "seasonal", "residual"});
    for (std::size_t i = 0; i < series.size(); ++i) {
        auto part = [](const std::optional<double>& v) {
            return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
        };
        file.add_row({i, series.date_at(i).to_string(), series.values()[i],
                      part(result.trend[i]), result.seasonal[i], part(result.residual[i])});
    }
    file.write();
}

/// Correlogram depth for the diagnose command; requires n > 80 so the
/// partial autocorrelation recursion stays within its n/2 limit.
constexpr std::size_t kDiagnoseLags = 40;

void cmd_diagnose(const RunConfig&, const TimeSeries& series, const OutputContext& ctx) {
    const CorrelogramResult auto_corr = acf(series, kDiagnoseLags);
    const CorrelogramResult partial = pacf(series, kDiagnoseLags);
    const StationarityVerdict verdict = adf_test(series);

    for (const auto& [stem, result] :
         {std::pair<const char*, const CorrelogramResult&>{"acf", auto_corr},
          {"pacf", partial}}) {
        DataFile file(ctx, stem, {"lag", "coefficient", "band"});
        for (std::size_t lag = 0; lag < result.coefficients.size(); ++lag)
            file.add_row({lag, result.coefficients[lag], result.confidence_band});
        file.write();
    }

    nlohmann::ordered_json doc;
    doc["meta"] = meta_json(ctx);
    doc["statistic"] = verdict.test_statistic;
    doc["p_value"] = verdict.p_value;
    doc["lags_used"] = verdict.lags_used;
    doc["nobs"] = verdict.nobs;
    doc["critical_values"] = {{"1%", verdict.critical_1pct},
                              {"5%", verdict.critical_5pct},
                              {"10%", verdict.critical_10pct}};
    doc["verdict"] = verdict.stationary ? "stationary" : "non-stationary";
    write_json_file(ctx, "stationarity.json", doc);
}

Objective parse_objective(const std::string& name) {
    if (name == "sse") return Objective::Sse;
    if (name == "mae") return Objective::Mae;
    if (name == "mape") return Objective::Mape;
    raise(ErrorCode::ParamOutOfRange, "unknown objective '" + name + "'");
}

OptimizeStrategy parse_optimizer(const std::string& name) {
    if (name == "grid") return OptimizeStrategy::Grid;
    if (name == "nelder-mead") return OptimizeStrategy::NelderMead;
    raise(ErrorCode::ParamOutOfRange, "unknown optimizer '" + name + "'");
}

void cmd_forecast(const RunConfig& config, const TimeSeries& series,
                  const OutputContext& ctx) {
    const Objective objective = parse_objective(config.objective);
    const auto [params, model] =
        holt_winters_optimize(series, config.period, objective,
                              parse_optimizer(config.optimizer));
    const Forecast forecast = holt_winters_forecast(model, config.horizon);

    nlohmann::ordered_json doc;
    doc["meta"] = meta_json(ctx);
    doc["model"] = holt_winters_to_json(model);
    write_json_file(ctx, "model.json", doc);

    DataFile file(ctx, "forecast", {"step", "date", "value"});
    for (std::size_t h = 0; h < forecast.values.size(); ++h)
        file.add_row({h + 1, forecast.date_at(h).to_string(), forecast.values[h]});
    file.write();

    std::printf("alpha=%s beta=%s gamma=%s %s=%s\n", format_double(params.alpha).c_str(),
                format_double(params.beta).c_str(), format_double(params.gamma).c_str(),
                config.objective.c_str(),
                format_double(smoothing_objective(model, series, objective)).c_str());
}

void cmd_evaluate(const RunConfig& config, const TimeSeries& series,
                  const OutputContext& ctx) {
    std::vector<ModelSpec> specs;
    for (const std::string& name : config.models) {
        if (name == "ols")
            specs.emplace_back(OlsSpec{});
        else if (name == "lasso")
            specs.emplace_back(LassoSpec{config.lambda, config.lambda_grid});
        else if (name == "tree")
            specs.emplace_back(TreeSpec{});
        else
            raise(ErrorCode::ParamOutOfRange, "unknown model '" + name + "'");
    }
    if (specs.empty()) raise(ErrorCode::EmptyInput, "no models selected");

    std::vector<BacktestResult> results;
    results.reserve(specs.size());
    for (const ModelSpec& spec : specs)
        results.push_back(backtest(series, spec, config.window, config.test_ratio, config.seed));
    const EvaluationReport report = compare(results);

    nlohmann::ordered_json doc;
    doc["meta"] = meta_json(ctx);
    nlohmann::json body = report_to_json(report);
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    write_json_file(ctx, "report.json", doc);

    {
        auto out = open_output(ctx, "table.txt");
        write_comment_header(out, ctx);
        out << report_to_table(report);
    }

    for (const BacktestResult& result : results) {
        DataFile file(ctx, "predictions_" + result.model_name,
                      {"date", "actual", "predicted"});
        for (std::size_t i = 0; i < result.test_dates.size(); ++i)
            file.add_row(
                {result.test_dates[i].to_string(), result.actual[i], result.predicted[i]});
        file.write();

        if (result.tree) {
            auto out = open_output(ctx, "tree.txt");
            write_comment_header(out, ctx);
            out << tree_to_text(*result.tree);
        }
    }
}

} // namespace

void run_command(const RunConfig& config) {
    OutputContext ctx;
    ctx.command_line = config.command_line;
    ctx.seed = config.seed;
    ctx.dir = config.out_dir.empty() ? "." : config.out_dir;
    ctx.json = config.format == "json";
    if (config.format != "csv" && config.format != "json")
        raise(ErrorCode::ParamOutOfRange, "unknown format '" + config.format + "'");

    const TimeSeries series = load_series(config);
    ctx.fingerprint = fingerprint_series(series);

    std::error_code fs_error;
    std::filesystem::create_directories(ctx.dir, fs_error);
    if (fs_error)
        raise(ErrorCode::EmptyFile,
              "cannot create output directory '" + ctx.dir.string() + "': " + fs_error.message());

    if (config.command == "decompose")
        cmd_decompose(config, series, ctx);
    else if (config.command == "diagnose")
        cmd_diagnose(config, series, ctx);
    else if (config.command == "forecast")
        cmd_forecast(config, series, ctx);
    else if (config.command == "evaluate")
        cmd_evaluate(config, series, ctx);
    else
        raise(ErrorCode::ParamOutOfRange, "unknown command '" + config.command + "'");
}

} // namespace tsfore
