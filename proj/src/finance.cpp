#include "retail/finance.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "retail/errors.hpp"

namespace retail {

RentOutcome settle_day(FinancialState& state, Money revenue, Money refunds, Money rent) {
    if (revenue < Money{} || refunds < Money{} || rent < Money{})
        throw ArgumentError("revenue, refunds and rent must be non-negative");
    RentOutcome out;
    out.rent = rent;
    out.income = revenue - refunds;
    state.funds += out.income;
    state.cumulative_income += out.income;
    if (state.funds >= rent) {
        state.funds -= rent;
        state.cumulative_rent_paid += rent;
        state.consecutive_unpaid_rent_days = 0;
        out.paid = true;
    } else {
        ++state.consecutive_unpaid_rent_days;
    }
    out.unpaid_streak = state.consecutive_unpaid_rent_days;
    out.terminate = check_termination(state);
    return out;
}

void debit_procurement(FinancialState& state, Money amount) {
    if (amount < Money{}) throw ArgumentError("procurement amount must be non-negative");
    if (state.funds < amount)
        throw FundsError(fmt::format("insufficient funds: need {}, have {}", amount.str(), state.funds.str()));
    state.funds -= amount;
    state.cumulative_procurement += amount;
}

double unit_value(Money reference_cost, int age, int shelf_life_days) {
    const double remaining = 1.0 - static_cast<double>(age) / static_cast<double>(shelf_life_days);
    return reference_cost.to_real() * std::max(0.0, remaining);
}

Money net_worth(const FinancialState& state, const InventoryLedger& ledger, const Catalog& catalog, int day) {
    double stock_cents = 0.0;
    for (std::size_t j = 0; j < ledger.sku_count(); ++j) {
        const auto& sku = catalog.sku(j);
        for (const auto& lot : ledger.lots(j))
            stock_cents += 100.0 * lot.quantity * unit_value(sku.reference_cost, lot.age(day), sku.shelf_life_days);
    }
    return state.funds + Money::round_cents(stock_cents);
}

bool check_termination(const FinancialState& state) { return state.consecutive_unpaid_rent_days >= kUnpaidRentLimit; }

}  // namespace retail
