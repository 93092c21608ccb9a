#include "retail/money.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace retail {

Money Money::from_real(double value) { return round_cents(value * 100.0); }

Money Money::round_cents(double cents) {
    // nearbyint honours the default FE_TONEAREST mode: ties go to even.
    return from_cents(static_cast<std::int64_t>(std::nearbyint(cents)));
}

std::string Money::str() const {
    const auto abs = std::llabs(cents_);
    return fmt::format("{}{}.{:02d}", cents_ < 0 ? "-" : "", abs / 100, abs % 100);
}

void to_json(Json& j, const Money& m) { j = m.to_real(); }
void from_json(const Json& j, Money& m) { m = Money::from_real(j.get<double>()); }

}  // namespace retail
