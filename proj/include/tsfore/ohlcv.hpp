#ifndef TSFORE_OHLCV_HPP
#define TSFORE_OHLCV_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsfore/date.hpp"
#include "tsfore/time_series.hpp"

namespace tsfore {

/// One trading day. Close is mandatory; the remaining columns ride along
/// when the input file provides them.
struct OhlcvRecord {
    Date date;
    std::optional<double> open;
    std::optional<double> high;
    std::optional<double> low;
    double close = 0.0;
    std::optional<double> volume;
    std::optional<double> market_cap;
};

/// Column-name mapping for CSV ingestion. Header matching is
/// case-insensitive; date and close columns must exist, the rest are
/// optional. Numeric cells may carry thousands separators and a single
/// leading '$'.
struct CsvSchema {
    std::string date_column = "Date";
    std::string open_column = "Open";
    std::string high_column = "High";
    std::string low_column = "Low";
    std::string close_column = "Close";
    std::string volume_column = "Volume";
    std::string market_cap_column = "Market Cap";
    /// When true, input rows must already be in ascending date order;
    /// out-of-order rows raise NonMonotonicDate instead of being sorted.
    bool require_sorted_input = false;
};

/// Parse a daily OHLCV file. Records come back sorted ascending by date;
/// duplicate dates are rejected.
std::vector<OhlcvRecord> load_csv(const std::string& path, const CsvSchema& schema = {});

enum class FieldSelector { Open, High, Low, Close, Volume, MarketCap };

enum class GapPolicy {
    Error,       ///< any missing calendar day raises GapWithoutPolicy
    ForwardFill, ///< missing days copy the last observed value
};

/// Project one field of a record sequence onto a daily TimeSeries.
TimeSeries to_series(const std::vector<OhlcvRecord>& records, FieldSelector field,
                     GapPolicy gaps = GapPolicy::Error);

const char* field_name(FieldSelector field);

} // namespace tsfore

#endif // TSFORE_OHLCV_HPP
