#include <doctest.h>

#include <algorithm>

#include "../support.hpp"
#include "retail/errors.hpp"
#include "retail/supply.hpp"

using namespace retail;

namespace {

struct Fixture {
    Catalog catalog = testing::make_catalog({"a", "a", "b"}, {-1, -1, -1}, {-0.5, -0.5, -0.5}, {4.0, 2.0, 10.0});
    SupplierTable suppliers = generate_suppliers(catalog, 42);
    FinancialState finance{Money::from_real(1000.0)};
    OrderBook book;
    Engine rng{stream_seed(42, "leadtime")};
};

NewsEvent supply_event(NewsScope scope, std::optional<std::string> target, int sign, double magnitude) {
    NewsEvent e;
    e.scope = scope;
    e.target = std::move(target);
    e.side = NewsSide::supply;
    e.sign = sign;
    e.magnitude = magnitude;
    return e;
}

}  // namespace

TEST_SUITE("supply") {

TEST_CASE("every SKU has five suppliers with tiered quality and cost") {
    Fixture f;
    for (std::size_t j = 0; j < f.catalog.size(); ++j) {
        const auto& s = f.suppliers.of(j);
        REQUIRE(s.size() == 5);
        auto best = std::max_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.quality < b.quality; });
        CHECK(best->quality == 1.0);
        auto cheapest =
            std::min_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.base_cost < b.base_cost; });
        auto worst = std::min_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.quality < b.quality; });
        CHECK(cheapest == worst);
        std::int64_t sum = 0;
        for (const auto& x : s) {
            CHECK(x.lead_time_min >= 1);
            CHECK(x.lead_time_max <= kMaxLeadTime);
            CHECK(x.lead_time_min <= x.lead_time_max);
            CHECK(x.base_cost < f.catalog.sku(j).base_price);
            sum += x.base_cost.cents();
        }
        CHECK(f.catalog.sku(j).reference_cost == Money::round_cents(sum / 5.0));
    }
}

TEST_CASE("supplier generation is deterministic") {
    Fixture a, b;
    CHECK(a.suppliers == b.suppliers);
    auto c = a.catalog;
    CHECK_FALSE(generate_suppliers(c, 7) == a.suppliers);
}

TEST_CASE("quotes equal base cost without supply news") {
    Fixture f;
    auto q = quote_prices(f.catalog, f.suppliers, {});
    for (std::size_t j = 0; j < f.catalog.size(); ++j)
        for (std::size_t k = 0; k < 5; ++k) CHECK(q[j][k] == f.suppliers.of(j)[k].base_cost);

    NewsEvent neutral;
    neutral.scope = NewsScope::neutral;
    const std::vector<NewsEvent> only_neutral{neutral};
    CHECK(quote_prices(f.catalog, f.suppliers, only_neutral) == q);
}

TEST_CASE("a product supply event scales only its SKU") {
    Fixture f;
    const std::vector<NewsEvent> news{supply_event(NewsScope::product, f.catalog.sku(0).sku_id, 1, 0.1)};
    const auto q = quote_prices(f.catalog, f.suppliers, news);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(q[0][k] == Money::round_cents(f.suppliers.of(0)[k].base_cost.cents() * 1.1));
        CHECK(q[1][k] == f.suppliers.of(1)[k].base_cost);
        CHECK(q[2][k] == f.suppliers.of(2)[k].base_cost);
    }
}

TEST_CASE("quotes never drop below one cent") {
    Supplier s;
    s.base_cost = Money::from_cents(1);
    CHECK(quote_price(s, 0.05) == Money::from_cents(1));
}

TEST_CASE("place_order validates and debits") {
    Fixture f;
    const auto& sid = f.suppliers.of(0)[0].supplier_id;
    CHECK_THROWS_AS(f.book.place_order(f.catalog, f.suppliers, f.finance, "S0", sid, 0, Money::from_cents(200), 1, f.rng),
                    ValidationError);
    CHECK_THROWS_AS(f.book.place_order(f.catalog, f.suppliers, f.finance, "nope", sid, 1, Money::from_cents(200), 1, f.rng),
                    ReferenceError);
    CHECK_THROWS_AS(
        f.book.place_order(f.catalog, f.suppliers, f.finance, "S0", "supplier_Z", 1, Money::from_cents(200), 1, f.rng),
        ReferenceError);

    f.finance.funds = Money::from_real(150.0);
    const auto before = engine_state(f.rng);
    CHECK_THROWS_AS(
        f.book.place_order(f.catalog, f.suppliers, f.finance, "S0", sid, 100, Money::from_real(2.0), 1, f.rng),
        FundsError);
    CHECK(f.finance.funds == Money::from_real(150.0));
    CHECK(engine_state(f.rng) == before);
    CHECK(f.book.orders().empty());

    const auto o = f.book.place_order(f.catalog, f.suppliers, f.finance, "S0", sid, 50, Money::from_real(2.0), 1, f.rng);
    CHECK(f.finance.funds == Money::from_real(50.0));
    CHECK(o.order_id == 1);
    CHECK(f.book.units_on_order(0) == 50);
    CHECK(f.book.units_on_order_total() == 50);
}

TEST_CASE("lead times stay in range and are reproducible") {
    Fixture a, b;
    a.finance.funds = b.finance.funds = Money::from_real(1e6);
    const auto& s = a.suppliers.of(2)[3];
    for (int i = 0; i < 300; ++i) {
        const auto x = a.book.place_order(a.catalog, a.suppliers, a.finance, "S2", s.supplier_id, 1,
                                          Money::from_cents(1), 10, a.rng);
        const auto y = b.book.place_order(b.catalog, b.suppliers, b.finance, "S2", s.supplier_id, 1,
                                          Money::from_cents(1), 10, b.rng);
        CHECK(x.arrival_day == y.arrival_day);
        const int lead = x.arrival_day - x.placed_day;
        CHECK(lead >= s.lead_time_min);
        CHECK(lead <= s.lead_time_max);
    }
}

TEST_CASE("deliveries arrive exactly on their day in id order") {
    Fixture f;
    CHECK(f.book.deliveries_due(1).empty());

    // Find two orders from day 3 with the same arrival day.
    std::vector<PurchaseOrder> placed;
    for (int i = 0; i < 40; ++i)
        placed.push_back(f.book.place_order(f.catalog, f.suppliers, f.finance, "S1", f.suppliers.of(1)[i % 5].supplier_id,
                                            1, Money::from_cents(1), 3, f.rng));
    const int arrival = placed[0].arrival_day;
    const auto expected = std::count_if(placed.begin(), placed.end(), [&](auto& o) { return o.arrival_day == arrival; });
    CHECK(f.book.deliveries_due(arrival - 1).size() == static_cast<std::size_t>(std::count_if(
                                                           placed.begin(), placed.end(),
                                                           [&](auto& o) { return o.arrival_day == arrival - 1; })));
    const auto due = f.book.deliveries_due(arrival);
    REQUIRE(due.size() == static_cast<std::size_t>(expected));
    CHECK(expected >= 2);
    for (std::size_t i = 1; i < due.size(); ++i) CHECK(due[i - 1].order_id < due[i].order_id);
    for (const auto& o : due) CHECK(o.status == OrderStatus::delivered);
    CHECK(f.book.deliveries_due(arrival).empty());
}

TEST_CASE("order placed day 3 with lead 2 is due on day 5 only") {
    Fixture f;
    Supplier s = f.suppliers.of(0)[0];
    s.lead_time_min = s.lead_time_max = 2;
    std::vector<std::vector<Supplier>> table{{s}, f.suppliers.of(1), f.suppliers.of(2)};
    SupplierTable fixed(table);
    f.book.place_order(f.catalog, fixed, f.finance, "S0", s.supplier_id, 4, Money::from_cents(100), 3, f.rng);
    CHECK(f.book.deliveries_due(4).empty());
    const auto due = f.book.deliveries_due(5);
    REQUIRE(due.size() == 1);
    CHECK(due[0].quantity == 4);
    CHECK(f.book.deliveries_due(6).empty());
    CHECK(f.book.delivered_units() == 4);
    CHECK(f.book.units_on_order(0) == 0);
}

}
