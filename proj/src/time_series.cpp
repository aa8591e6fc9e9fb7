#include "tsfore/time_series.hpp"

#include <cmath>

#include "tsfore/errors.hpp"

namespace tsfore {

TimeSeries::TimeSeries(Date start, std::int64_t step_days, std::vector<double> values,
                       std::string name)
    : start_(start), step_days_(step_days), values_(std::move(values)), name_(std::move(name)) {
    if (values_.empty()) raise(ErrorCode::EmptyInput, "time series must contain at least one value");
    if (step_days_ < 1) raise(ErrorCode::ParamOutOfRange, "time series step must be >= 1 day");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            raise(ErrorCode::MalformedRow,
                  "non-finite value at index " + std::to_string(i) + " in series '" + name_ + "'");
        }
    }
}

TimeSeries TimeSeries::with_values(std::vector<double> values, std::string name) const {
    if (values.size() != values_.size()) {
        raise(ErrorCode::LengthMismatch, "with_values requires identical length");
    }
    return TimeSeries(start_, step_days_, std::move(values), std::move(name));
}

} // namespace tsfore
