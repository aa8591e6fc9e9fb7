#include "tsfore/ohlcv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tsfore/errors.hpp"

namespace tsfore {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

/// Split one CSV line, honouring double-quoted fields (quotes may wrap
/// cells containing commas, e.g. "1,234.56").
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    out.push_back(trim(cell));
    return out;
}

/// Numeric cell parser: strips thousands separators and a single leading
/// currency symbol, then requires the remainder to be a complete number.
std::optional<double> parse_number(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty() || s == "-") return std::nullopt;
    if (s.front() == '$') s.erase(0, 1);
    s.erase(std::remove(s.begin(), s.end(), ','), s.end());
    if (s.empty()) return std::nullopt;
    const char* begin = s.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end != begin + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

int find_column(const std::vector<std::string>& header, const std::string& name) {
    std::string want = to_lower(trim(name));
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (to_lower(header[i]) == want) return static_cast<int>(i);
    }
    return -1;
}

std::optional<double> cell_at(const std::vector<std::string>& cells, int idx) {
    if (idx < 0 || idx >= static_cast<int>(cells.size())) return std::nullopt;
    return parse_number(cells[static_cast<std::size_t>(idx)]);
}

[[noreturn]] void malformed(std::size_t row, const std::string& reason) {
    raise(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": " + reason);
}

} // namespace

std::vector<OhlcvRecord> load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream file(path);
    if (!file.is_open()) raise(ErrorCode::EmptyFile, "cannot open '" + path + "'");

    std::string line;
    if (!std::getline(file, line)) raise(ErrorCode::EmptyFile, "'" + path + "' is empty");
    auto header = split_csv_line(line);

    const int date_idx = find_column(header, schema.date_column);
    const int close_idx = find_column(header, schema.close_column);
    if (date_idx < 0) raise(ErrorCode::MalformedRow, "header lacks date column '" + schema.date_column + "'");
    if (close_idx < 0) raise(ErrorCode::MalformedRow, "header lacks close column '" + schema.close_column + "'");
    const int open_idx = find_column(header, schema.open_column);
    const int high_idx = find_column(header, schema.high_column);
    const int low_idx = find_column(header, schema.low_column);
    const int volume_idx = find_column(header, schema.volume_column);
    const int cap_idx = find_column(header, schema.market_cap_column);

    std::vector<OhlcvRecord> records;
    std::size_t row = 1; // header was row 1
    while (std::getline(file, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);

        if (date_idx >= static_cast<int>(cells.size())) malformed(row, "missing date cell");
        auto date = Date::parse(cells[static_cast<std::size_t>(date_idx)]);
        if (!date) malformed(row, "unparseable date '" + cells[static_cast<std::size_t>(date_idx)] + "'");

        auto close = cell_at(cells, close_idx);
        if (!close) malformed(row, "unparseable close cell");

        OhlcvRecord rec;
        rec.date = *date;
        rec.close = *close;
        rec.open = cell_at(cells, open_idx);
        rec.high = cell_at(cells, high_idx);
        rec.low = cell_at(cells, low_idx);
        rec.volume = cell_at(cells, volume_idx);
        rec.market_cap = cell_at(cells, cap_idx);

        auto nonneg = [&](const std::optional<double>& v, const char* what) {
            if (v && (*v < 0.0 || !std::isfinite(*v))) malformed(row, std::string(what) + " is negative or non-finite");
        };
        if (rec.close < 0.0) malformed(row, "close is negative");
        nonneg(rec.open, "open");
        nonneg(rec.high, "high");
        nonneg(rec.low, "low");
        nonneg(rec.volume, "volume");
        nonneg(rec.market_cap, "market cap");
        if (rec.open && rec.high && rec.low) {
            double lo = std::min(*rec.open, rec.close);
            double hi = std::max(*rec.open, rec.close);
            if (*rec.low > lo + 1e-9) malformed(row, "low exceeds min(open, close)");
            if (*rec.high < hi - 1e-9) malformed(row, "high below max(open, close)");
        }

        if (schema.require_sorted_input && !records.empty() && rec.date < records.back().date) {
            raise(ErrorCode::NonMonotonicDate,
                  "row " + std::to_string(row) + ": date " + rec.date.to_string() +
                      " precedes " + records.back().date.to_string());
        }
        records.push_back(rec);
    }
    if (records.empty()) raise(ErrorCode::EmptyFile, "'" + path + "' has a header but no data rows");

    std::stable_sort(records.begin(), records.end(),
                     [](const OhlcvRecord& a, const OhlcvRecord& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].date == records[i - 1].date) {
            raise(ErrorCode::DuplicateDate, "date " + records[i].date.to_string() + " appears twice");
        }
    }
    return records;
}

const char* field_name(FieldSelector field) {
    switch (field) {
        case FieldSelector::Open: return "open";
        case FieldSelector::High: return "high";
        case FieldSelector::Low: return "low";
        case FieldSelector::Close: return "close";
        case FieldSelector::Volume: return "volume";
        case FieldSelector::MarketCap: return "market_cap";
    }
    return "field";
}

TimeSeries to_series(const std::vector<OhlcvRecord>& records, FieldSelector field,
                     GapPolicy gaps) {
    if (records.empty()) raise(ErrorCode::EmptyInput, "no records to project");

    auto pick = [&](const OhlcvRecord& r) -> double {
        std::optional<double> v;
        switch (field) {
            case FieldSelector::Open: v = r.open; break;
            case FieldSelector::High: v = r.high; break;
            case FieldSelector::Low: v = r.low; break;
            case FieldSelector::Close: v = r.close; break;
            case FieldSelector::Volume: v = r.volume; break;
            case FieldSelector::MarketCap: v = r.market_cap; break;
        }
        if (!v) {
            raise(ErrorCode::MalformedRow,
                  std::string("record at ") + r.date.to_string() + " lacks field " + field_name(field));
        }
        return *v;
    };

    std::vector<double> values;
    values.reserve(records.size());
    values.push_back(pick(records.front()));
    Date cursor = records.front().date;
    for (std::size_t i = 1; i < records.size(); ++i) {
        std::int64_t gap = cursor.days_until(records[i].date);
        if (gap > 1) {
            if (gaps == GapPolicy::Error) {
                raise(ErrorCode::GapWithoutPolicy,
                      "missing day " + cursor.plus_days(1).to_string() + " (pass forward-fill to impute)");
            }
            for (std::int64_t d = 1; d < gap; ++d) values.push_back(values.back());
        }
        values.push_back(pick(records[i]));
        cursor = records[i].date;
    }
    return TimeSeries(records.front().date, 1, std::move(values), field_name(field));
}

} // namespace tsfore
