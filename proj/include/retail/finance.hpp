#pragma once

#include "retail/catalog.hpp"
#include "retail/inventory.hpp"
#include "retail/money.hpp"

namespace retail {

/// Consecutive unpaid rent days that end an episode.
inline constexpr int kUnpaidRentLimit = 5;

struct FinancialState {
    Money funds;
    int consecutive_unpaid_rent_days = 0;
    Money cumulative_income;  ///< revenue minus refunds
    Money cumulative_procurement;
    Money cumulative_rent_paid;

    bool operator==(const FinancialState&) const = default;
};

struct RentOutcome {
    bool paid = false;
    Money rent;
    Money income;  ///< the day's revenue minus refunds
    int unpaid_streak = 0;
    bool terminate = false;
};

/// Books the day's income, then pays rent if funds cover it. Unpaid rent is
/// never borrowed: funds stay non-negative and the unpaid streak grows.
RentOutcome settle_day(FinancialState& state, Money revenue, Money refunds, Money rent);

/// Throws FundsError (leaving state unchanged) when funds < amount.
void debit_procurement(FinancialState& state, Money amount);

/// Linearly depreciated value of one unit at `age` days.
double unit_value(Money reference_cost, int age, int shelf_life_days);

/// Funds plus the depreciated value of on-hand lots. Queued units are excluded.
Money net_worth(const FinancialState& state, const InventoryLedger& ledger, const Catalog& catalog, int day);

bool check_termination(const FinancialState& state);

}  // namespace retail
