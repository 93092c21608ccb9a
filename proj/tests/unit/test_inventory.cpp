#include <doctest.h>

#include "retail/errors.hpp"
#include "retail/inventory.hpp"

using namespace retail;

namespace {

Delivery delivery(std::int64_t id, std::size_t sku, std::int64_t qty) {
    Delivery d;
    d.order_id = id;
    d.sku = sku;
    d.quantity = qty;
    d.unit_cost = Money::from_cents(100);
    return d;
}

void arrive(InventoryLedger& inv, std::vector<Delivery> ds, int day) { inv.add_arrivals(ds, day); }

}  // namespace

TEST_SUITE("inventory") {

TEST_CASE("arrivals beyond capacity are queued") {
    InventoryLedger inv({10, 10}, 100);
    arrive(inv, {delivery(1, 0, 90)}, 1);
    const std::vector<Delivery> in{delivery(2, 1, 30)};
    const auto r = inv.add_arrivals(in, 2);
    CHECK(r.placed[1] == 10);
    CHECK(r.queued[1] == 20);
    CHECK(inv.total_on_hand() == 100);
    CHECK(inv.pending_total() == 20);
    CHECK(inv.free_capacity() == 0);
}

TEST_CASE("empty arrivals change nothing") {
    InventoryLedger inv({10}, 100);
    const auto r = inv.add_arrivals({}, 1);
    CHECK(r.placed[0] == 0);
    CHECK(inv.total_on_hand() == 0);
    CHECK(inv.pending().empty());
}

TEST_CASE("overflow queue is first in first out") {
    InventoryLedger inv({10, 10}, 50);
    const std::vector<Delivery> in{delivery(1, 0, 50), delivery(2, 1, 30)};
    const auto r = inv.add_arrivals(in, 1);
    CHECK(r.placed[0] == 50);
    CHECK(r.queued[1] == 30);
    REQUIRE(inv.pending().size() == 1);
    CHECK(inv.pending().front().order_id == 2);

    // While B is queued, a new delivery joins the queue behind it.
    const std::vector<Delivery> later{delivery(3, 0, 5)};
    const std::vector<std::int64_t> sell{10, 0};
    inv.consume_sales(sell, 1);
    const auto r2 = inv.add_arrivals(later, 2);
    CHECK(r2.placed[0] == 0);
    CHECK(inv.pending().back().order_id == 3);
    const auto rel = inv.release_pending(2);
    CHECK(rel[1] == 10);
    CHECK(inv.pending().front().order_id == 2);
    CHECK(inv.pending().front().quantity == 20);
}

TEST_CASE("release pending is a partial pop") {
    InventoryLedger inv({10}, 100);
    CHECK(inv.release_pending(1)[0] == 0);
    arrive(inv, {delivery(1, 0, 130)}, 1);
    CHECK(inv.pending().front().quantity == 30);
    const std::vector<std::int64_t> sell{20};
    inv.consume_sales(sell, 1);
    const auto rel = inv.release_pending(1);
    CHECK(rel[0] == 20);
    CHECK(inv.pending().front().quantity == 10);
    CHECK(inv.on_hand(0) == 100);
}

TEST_CASE("sales consume the oldest lot first") {
    InventoryLedger inv({30}, 100);
    arrive(inv, {delivery(1, 0, 10)}, 1);
    arrive(inv, {delivery(2, 0, 10)}, 5);
    const std::vector<std::int64_t> sell{12};
    const auto r = inv.consume_sales(sell, 6);
    REQUIRE(inv.lots(0).size() == 1);
    CHECK(inv.lots(0).front().order_id == 2);
    CHECK(inv.lots(0).front().quantity == 8);
    CHECK(r.cost[0] == Money::from_cents(1200));
    REQUIRE(r.chunks.size() == 2);
    CHECK(r.chunks[0].quantity == 10);
}

TEST_CASE("selling zero or everything") {
    InventoryLedger inv({30}, 100);
    arrive(inv, {delivery(1, 0, 10)}, 1);
    const std::vector<std::int64_t> none{0};
    inv.consume_sales(none, 2);
    CHECK(inv.on_hand(0) == 10);
    const std::vector<std::int64_t> all{10};
    inv.consume_sales(all, 2);
    CHECK(inv.on_hand(0) == 0);
    CHECK(inv.lots(0).empty());
    CHECK(inv.total_on_hand() == 0);
}

TEST_CASE("overselling is a consistency error") {
    InventoryLedger inv({30}, 100);
    arrive(inv, {delivery(1, 0, 10)}, 1);
    const std::vector<std::int64_t> sell{11};
    CHECK_THROWS_AS(inv.consume_sales(sell, 1), ConsistencyError);
    CHECK(inv.on_hand(0) == 10);
}

TEST_CASE("expiry boundary is strict") {
    InventoryLedger inv({10}, 100);
    arrive(inv, {delivery(1, 0, 10)}, 0);
    CHECK(inv.expire_units(10)[0] == 0);
    CHECK(inv.sellable(0, 10) == 10);
    CHECK(inv.sellable(0, 11) == 0);
    CHECK(inv.expire_units(11)[0] == 10);
    CHECK(inv.on_hand(0) == 0);
    CHECK(inv.expired_total() == 10);
    CHECK(inv.expire_units(12)[0] == 0);
}

TEST_CASE("expiry removes only over-age lots and keeps order") {
    InventoryLedger inv({5}, 100);
    arrive(inv, {delivery(1, 0, 3)}, 1);
    arrive(inv, {delivery(2, 0, 4)}, 4);
    arrive(inv, {delivery(3, 0, 5)}, 6);
    CHECK(inv.expire_units(10)[0] == 7);
    REQUIRE(inv.lots(0).size() == 1);
    CHECK(inv.lots(0).front().order_id == 3);

    InventoryLedger mixed({5}, 100);
    arrive(mixed, {delivery(1, 0, 1)}, 4);
    arrive(mixed, {delivery(2, 0, 1)}, 1);
    arrive(mixed, {delivery(3, 0, 1)}, 6);
    CHECK(mixed.expire_units(7)[0] == 1);
    REQUIRE(mixed.lots(0).size() == 2);
    CHECK(mixed.lots(0)[0].order_id == 1);
    CHECK(mixed.lots(0)[1].order_id == 3);
}

TEST_CASE("expired but unremoved lots are not sold") {
    InventoryLedger inv({2}, 100);
    arrive(inv, {delivery(1, 0, 5)}, 1);
    arrive(inv, {delivery(2, 0, 5)}, 3);
    CHECK(inv.sellable(0, 4) == 5);
    const std::vector<std::int64_t> sell{5};
    inv.consume_sales(sell, 4);
    CHECK(inv.lots(0).front().order_id == 1);
    CHECK(inv.expire_units(4)[0] == 5);
}

TEST_CASE("capacity must be positive") { CHECK_THROWS_AS(InventoryLedger({1}, 0), ConfigError); }

}
