#include "retail/calendar.hpp"

#include <charconv>

#include <fmt/format.h>

namespace retail {

using namespace std::chrono;

namespace {

std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

std::optional<year_month_day> Calendar::parse_date(std::string_view text) {
    std::optional<int> y, m, d;
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        y = parse_int(text.substr(0, 4));
        m = parse_int(text.substr(5, 2));
        d = parse_int(text.substr(8, 2));
    } else if ((text.size() == 8 || text.size() == 10) && text[2] == '/' && text[5] == '/') {
        m = parse_int(text.substr(0, 2));
        d = parse_int(text.substr(3, 2));
        y = parse_int(text.substr(6));
        if (y && text.size() == 8) *y += (*y >= 50) ? 1900 : 2000;
    }
    if (!y || !m || !d) return std::nullopt;
    year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return ymd;
}

std::string Calendar::format(year_month_day date) {
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                       static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

year_month_day Calendar::date_of(int day) const { return year_month_day{sys_days{epoch_} + days{day - 1}}; }

int Calendar::day_of(year_month_day date) const {
    return static_cast<int>((sys_days{date} - sys_days{epoch_}).count()) + 1;
}

int Calendar::weekday_index(int day) const {
    // iso_encoding: Monday = 1 ... Sunday = 7
    return static_cast<int>(weekday{sys_days{date_of(day)}}.iso_encoding()) - 1;
}

}  // namespace retail
