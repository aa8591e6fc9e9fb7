#include "tsfore/date.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>

namespace tsfore {

namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(std::int64_t serial) {
    return chr::year_month_day{chr::sys_days{chr::days{serial}}};
}

std::optional<std::int64_t> ymd_to_serial(int year, unsigned month, unsigned day) {
    chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
    if (!ymd.ok()) return std::nullopt;
    return chr::sys_days{ymd}.time_since_epoch().count();
}

const std::array<const char*, 12> kMonthNames = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec"};

std::optional<unsigned> month_from_name(const std::string& name) {
    if (name.size() < 3) return std::nullopt;
    std::string lower;
    for (char c : name.substr(0, 3)) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (unsigned i = 0; i < kMonthNames.size(); ++i) {
        if (lower == kMonthNames[i]) return i + 1;
    }
    return std::nullopt;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Date::Date(int year, unsigned month, unsigned day) {
    auto serial = ymd_to_serial(year, month, day);
    serial_ = serial ? *serial : 0;
}

std::optional<Date> Date::parse(const std::string& text) {
    // ISO: YYYY-MM-DD
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        std::string y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
        if (all_digits(y) && all_digits(m) && all_digits(d)) {
            auto serial = ymd_to_serial(std::stoi(y), static_cast<unsigned>(std::stoi(m)),
                                        static_cast<unsigned>(std::stoi(d)));
            if (serial) return from_serial(*serial);
        }
        return std::nullopt;
    }
    // "Mon DD, YYYY" with optional padding, e.g. "Apr 28, 2013"
    auto comma = text.find(',');
    if (comma != std::string::npos) {
        auto space = text.find(' ');
        if (space == std::string::npos || space > comma) return std::nullopt;
        auto month = month_from_name(text.substr(0, space));
        if (!month) return std::nullopt;
        std::string day_part = text.substr(space + 1, comma - space - 1);
        std::string year_part = text.substr(comma + 1);
        while (!year_part.empty() && year_part.front() == ' ') year_part.erase(0, 1);
        while (!day_part.empty() && day_part.back() == ' ') day_part.pop_back();
        if (!all_digits(day_part) || !all_digits(year_part)) return std::nullopt;
        auto serial = ymd_to_serial(std::stoi(year_part), *month,
                                    static_cast<unsigned>(std::stoi(day_part)));
        if (serial) return from_serial(*serial);
    }
    return std::nullopt;
}

int Date::year() const { return static_cast<int>(to_ymd(serial_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd(serial_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd(serial_).day()); }

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

} // namespace tsfore
