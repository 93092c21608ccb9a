#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace retail {

/// Maps simulation day indices (day 1 = epoch) to calendar dates.
class Calendar {
public:
    Calendar() = default;
    explicit Calendar(std::chrono::year_month_day epoch) : epoch_(epoch) {}

    /// Accepts "YYYY-MM-DD", "MM/DD/YY" or "MM/DD/YYYY".
    static std::optional<std::chrono::year_month_day> parse_date(std::string_view text);
    static std::string format(std::chrono::year_month_day date);

    std::chrono::year_month_day date_of(int day) const;
    std::string date_string(int day) const { return format(date_of(day)); }
    /// Inverse of date_of; may be < 1 for dates before the epoch.
    int day_of(std::chrono::year_month_day date) const;
    /// 0 = Monday ... 6 = Sunday.
    int weekday_index(int day) const;

    std::chrono::year_month_day epoch() const { return epoch_; }

private:
    std::chrono::year_month_day epoch_{std::chrono::year{1991}, std::chrono::month{9}, std::chrono::day{7}};
};

}  // namespace retail
