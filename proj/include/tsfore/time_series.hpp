#ifndef TSFORE_TIME_SERIES_HPP
#define TSFORE_TIME_SERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tsfore/date.hpp"

namespace tsfore {

/**
 * Uniformly spaced sequence of finite values, the common currency between
 * all operations. Timestamps are derived: date_at(i) = start + i * step.
 *
 * Construction validates that the series is non-empty, the step positive,
 * and every value finite. Instances are immutable after construction.
 */
class TimeSeries {
public:
    TimeSeries(Date start, std::int64_t step_days, std::vector<double> values,
               std::string name = "series");

    const Date& start() const { return start_; }
    std::int64_t step_days() const { return step_days_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& name() const { return name_; }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    Date date_at(std::size_t i) const { return start_.plus_days(step_days_ * static_cast<std::int64_t>(i)); }
    Date end() const { return date_at(values_.size() - 1); }

    /// Same dates and name, new values (must have identical length).
    TimeSeries with_values(std::vector<double> values, std::string name) const;

private:
    Date start_;
    std::int64_t step_days_;
    std::vector<double> values_;
    std::string name_;
};

} // namespace tsfore

#endif // TSFORE_TIME_SERIES_HPP
