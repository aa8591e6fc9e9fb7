#ifndef TSFORE_DATE_HPP
#define TSFORE_DATE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace tsfore {

/**
 * Calendar date at day resolution.
 *
 * Backed by a serial day count (days since 1970-01-01) so that ordering,
 * differencing and stepping are plain integer arithmetic.
 */
class Date {
public:
    Date() : serial_(0) {}
    Date(int year, unsigned month, unsigned day);

    static Date from_serial(std::int64_t days_since_epoch) {
        Date d;
        d.serial_ = days_since_epoch;
        return d;
    }

    /// Accepts "YYYY-MM-DD" and "Mon DD, YYYY" (e.g. "Apr 28, 2013").
    /// Returns nullopt on anything else.
    static std::optional<Date> parse(const std::string& text);

    std::int64_t serial() const { return serial_; }
    int year() const;
    unsigned month() const;
    unsigned day() const;

    /// ISO formatting, "YYYY-MM-DD".
    std::string to_string() const;

    Date plus_days(std::int64_t n) const { return from_serial(serial_ + n); }
    std::int64_t days_until(const Date& other) const { return other.serial_ - serial_; }

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t serial_;
};

} // namespace tsfore

#endif // TSFORE_DATE_HPP
