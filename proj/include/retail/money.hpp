#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "retail/json.hpp"

namespace retail {

/// Currency amount stored as a whole number of cents.
///
/// Conversions from real values round half-to-even, so sums of Money values
/// are exact and ledger identities can be checked with integer equality.
class Money {
public:
    constexpr Money() = default;

    static constexpr Money from_cents(std::int64_t cents) {
        Money m;
        m.cents_ = cents;
        return m;
    }
    static Money from_real(double value);
    /// Rounds a real-valued number of cents (half-to-even).
    static Money round_cents(double cents);

    constexpr std::int64_t cents() const { return cents_; }
    double to_real() const { return static_cast<double>(cents_) / 100.0; }
    std::string str() const;

    constexpr Money& operator+=(Money o) {
        cents_ += o.cents_;
        return *this;
    }
    constexpr Money& operator-=(Money o) {
        cents_ -= o.cents_;
        return *this;
    }
    friend constexpr Money operator+(Money a, Money b) { return a += b; }
    friend constexpr Money operator-(Money a, Money b) { return a -= b; }
    friend constexpr Money operator*(Money a, std::int64_t n) { return from_cents(a.cents_ * n); }
    friend constexpr Money operator*(std::int64_t n, Money a) { return a * n; }
    friend constexpr auto operator<=>(Money, Money) = default;
    friend constexpr bool operator==(Money, Money) = default;

private:
    std::int64_t cents_ = 0;
};

void to_json(Json& j, const Money& m);
void from_json(const Json& j, Money& m);

}  // namespace retail
