#include "retail/engine.hpp"

#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "retail/demand.hpp"
#include "retail/errors.hpp"

namespace retail {

std::string_view to_string(Phase phase) {
    switch (phase) {
    case Phase::strategy: return "strategy";
    case Phase::execution: return "execution";
    case Phase::ended: return "ended";
    }
    return "?";
}

int mean_daily_traffic(const TrafficConfig& traffic) {
    return static_cast<int>(std::lround(traffic.base * traffic.mean_factor()));
}

Json to_json(const DayReport& r) {
    Json j;
    j["day"] = r.day;
    j["date"] = r.date;
    j["traffic"] = r.traffic;
    j["units_sold"] = r.units_sold;
    j["revenue"] = r.revenue;
    j["refunds"] = r.refunds;
    j["procurement"] = r.procurement;
    j["rent"] = {{"amount", r.rent.rent}, {"paid", r.rent.paid}, {"unpaid_streak", r.rent.unpaid_streak}};
    j["funds_start"] = r.funds_start;
    j["funds_end"] = r.funds_end;
    j["net_worth_end"] = r.net_worth_end;
    j["on_hand_total"] = r.on_hand_total;
    j["pending_total"] = r.pending_total;
    j["capacity"] = r.capacity;
    j["orders_delivered"] = r.orders_delivered;
    Json news = Json::array();
    for (const auto& e : r.news) news.push_back(to_json(e));
    j["news"] = std::move(news);
    j["end_reason"] = r.end_reason ? Json(*r.end_reason) : Json(nullptr);
    Json skus = Json::array();
    for (const auto& s : r.skus) {
        skus.push_back({
            {"sku_id", s.sku_id},
            {"price", s.price},
            {"potential", s.potential},
            {"sold", s.sold},
            {"stockout", s.stockout},
            {"returned", s.returned},
            {"reviews", s.reviews},
            {"expired", s.expired},
            {"ordered", s.ordered},
            {"delivered", s.delivered},
            {"placed", s.placed},
            {"queued", s.queued},
            {"released", s.released},
            {"on_hand_start", s.on_hand_start},
            {"on_hand_end", s.on_hand_end},
            {"pending_end", s.pending_end},
        });
    }
    j["skus"] = std::move(skus);
    return j;
}

WorldState init_episode(const EpisodeConfig& config, std::uint64_t master_seed) {
    validate(config);
    WorldState s;
    s.config = config;
    s.seed = master_seed;
    s.calendar = Calendar(*Calendar::parse_date(config.epoch_date));
    s.rng = RngStreams(master_seed);
    if (config.news.seed) s.rng.reseed_news(*config.news.seed);

    s.catalog = config.catalog_path ? load_catalog(*config.catalog_path, config.catalog)
                                    : generate_synthetic_catalog(config.catalog, master_seed);
    if (config.calibration_target)
        s.catalog = calibrate_alpha(std::move(s.catalog), *config.calibration_target,
                                    mean_daily_traffic(config.traffic));
    s.suppliers = generate_suppliers(s.catalog, master_seed);

    const std::size_t n = s.catalog.size();
    s.prices.reserve(n);
    std::vector<int> shelf_lives;
    shelf_lives.reserve(n);
    for (const auto& sku : s.catalog.skus()) {
        s.prices.push_back(sku.base_price);
        shelf_lives.push_back(sku.shelf_life_days);
    }
    s.inventory = InventoryLedger(std::move(shelf_lives), config.inventory_capacity);
    s.reviews = ReviewBook(n);
    s.sales_history.resize(n);
    s.finance.funds = config.initial_funds;
    s.funds_day_start = s.finance.funds;
    s.placed_orders_today.assign(n, 0);

    if (config.news.enabled) s.news = generate_daily_news(1, config.news, s.catalog, s.rng.news, s.next_event_id);
    spdlog::debug("episode initialised: {} SKUs, {} categories, seed {}", n, s.catalog.categories().size(),
                  master_seed);
    return s;
}

std::vector<double> review_deltas(const WorldState& s) {
    std::vector<double> out(s.sku_count(), 0.0);
    if (!s.config.review_enabled) return out;
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = review_delta(s.reviews.aggregate(j, s.day, s.config.review_window), s.config.review_weight);
    return out;
}

std::vector<double> news_deltas(const WorldState& s) {
    std::vector<double> out(s.sku_count(), 0.0);
    if (s.news.empty()) return out;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = demand_delta(s.catalog, j, s.news);
    return out;
}

std::vector<std::vector<Money>> current_quotes(const WorldState& s) {
    return quote_prices(s.catalog, s.suppliers, s.news);
}

Money current_net_worth(const WorldState& s) { return net_worth(s.finance, s.inventory, s.catalog, s.day); }

DayReport end_of_day_transition(WorldState& s) {
    if (s.phase != Phase::execution)
        throw PhaseError(fmt::format("end of day requested during the {} phase", to_string(s.phase)));
    const std::size_t n = s.sku_count();
    const int day = s.day;

    DayReport r;
    r.day = day;
    r.date = s.calendar.date_string(day);
    r.funds_start = s.funds_day_start;
    r.procurement = s.procurement_today;
    r.capacity = s.inventory.capacity();
    r.news = s.news;
    r.skus.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto& k = r.skus[j];
        k.sku_id = s.catalog.sku(j).sku_id;
        k.price = s.prices[j];
        k.on_hand_start = s.inventory.on_hand(j);
        k.ordered = s.placed_orders_today[j];
    }

    // (1) traffic
    r.traffic = sample_traffic(s.calendar.weekday_index(day), s.config.traffic, s.rng.traffic);

    // (2) demand and sales
    const auto utilities = compute_utilities(s.catalog, s.prices, review_deltas(s), news_deltas(s));
    const auto probs = choice_probabilities(utilities);
    const auto sellable = s.inventory.sellable_all(day);
    const auto outcome = realize_demand(r.traffic, probs.sku, sellable, s.rng.demand);
    const auto consumed = s.inventory.consume_sales(outcome.sold, day);
    for (std::size_t j = 0; j < n; ++j) {
        auto& k = r.skus[j];
        k.potential = outcome.potential[j];
        k.sold = outcome.sold[j];
        k.stockout = outcome.stockout[j];
        r.units_sold += k.sold;
        r.revenue += s.prices[j] * k.sold;
        s.sales_history[j].push_back({day, k.sold, s.prices[j]});
    }

    // (3) reviews and returns
    if (s.config.review_enabled) {
        const auto reviews = generate_reviews(consumed.chunks, s.config.review_ratio, day, s.rng.reviews);
        for (const auto& rev : reviews) ++r.skus[rev.sku].reviews;
        s.reviews.add(reviews);
    }
    const auto returned = generate_returns(consumed.chunks, n, s.config.return_base, s.rng.reviews);
    for (std::size_t j = 0; j < n; ++j) {
        r.skus[j].returned = returned[j];
        r.refunds += s.prices[j] * returned[j];
    }

    // (4) expiry, arrivals, pending release
    const auto expired = s.inventory.expire_units(day);
    std::vector<Delivery> deliveries;
    for (const auto& order : s.orders.deliveries_due(day)) {
        const Supplier* sup = s.suppliers.find(order.sku, order.supplier_id);
        deliveries.push_back({order.order_id, order.sku, order.quantity, order.unit_cost_paid,
                              sup ? sup->quality : 1.0, order.supplier_id});
        r.skus[order.sku].delivered += order.quantity;
    }
    r.orders_delivered = static_cast<std::int64_t>(deliveries.size());
    const auto arrivals = s.inventory.add_arrivals(deliveries, day);
    const auto released = s.inventory.release_pending(day);
    for (std::size_t j = 0; j < n; ++j) {
        auto& k = r.skus[j];
        k.expired = expired[j];
        k.placed = arrivals.placed[j];
        k.queued = arrivals.queued[j];
        k.released = released[j];
        k.on_hand_end = s.inventory.on_hand(j);
        k.pending_end = s.inventory.pending_units(j);
    }
    r.on_hand_total = s.inventory.total_on_hand();
    r.pending_total = s.inventory.pending_total();

    // (5) finances and news
    r.rent = settle_day(s.finance, r.revenue, r.refunds, s.config.daily_rent);
    s.news = tick_ttl(std::move(s.news));
    r.funds_end = s.finance.funds;
    r.net_worth_end = net_worth(s.finance, s.inventory, s.catalog, day + 1);

    if (r.rent.terminate) {
        r.end_reason = "unpaid_rent";
    } else if (day >= s.config.max_days) {
        r.end_reason = "max_days";
    }
    s.day = day + 1;
    s.funds_day_start = s.finance.funds;
    s.procurement_today = Money{};
    std::fill(s.placed_orders_today.begin(), s.placed_orders_today.end(), 0);
    s.draft = s.strategy;
    if (r.end_reason) {
        s.phase = Phase::ended;
        s.end_reason = *r.end_reason;
    } else {
        if (s.config.news.enabled) {
            auto fresh = generate_daily_news(s.day, s.config.news, s.catalog, s.rng.news, s.next_event_id);
            s.news.insert(s.news.end(), fresh.begin(), fresh.end());
        }
        s.phase = Phase::strategy;
    }
    spdlog::debug("day {} closed: traffic {}, sold {}, funds {}", day, r.traffic, r.units_sold, r.funds_end.str());
    return r;
}

Json state_snapshot(const WorldState& s) {
    Json j;
    j["day"] = s.day;
    j["phase"] = to_string(s.phase);
    j["end_reason"] = s.end_reason;
    j["prices"] = s.prices;

    Json inv = Json::array();
    for (std::size_t sku = 0; sku < s.sku_count(); ++sku) {
        Json lots = Json::array();
        for (const auto& lot : s.inventory.lots(sku))
            lots.push_back({lot.order_id, lot.quantity, lot.arrival_day, lot.unit_cost, lot.supplier_id});
        inv.push_back(std::move(lots));
    }
    j["lots"] = std::move(inv);
    Json pending = Json::array();
    for (const auto& d : s.inventory.pending()) pending.push_back({d.order_id, d.sku, d.quantity});
    j["pending"] = std::move(pending);
    j["expired_total"] = s.inventory.expired_total();

    Json orders = Json::array();
    for (const auto& o : s.orders.orders()) orders.push_back(to_json(o));
    j["orders"] = std::move(orders);

    Json news = Json::array();
    for (const auto& e : s.news) news.push_back(to_json(e));
    j["news"] = std::move(news);
    j["next_event_id"] = s.next_event_id;

    Json reviews = Json::array();
    for (std::size_t sku = 0; sku < s.sku_count(); ++sku) {
        Json list = Json::array();
        for (const auto& rev : s.reviews.of(sku)) list.push_back({rev.day, rev.rating});
        reviews.push_back(std::move(list));
    }
    j["reviews"] = std::move(reviews);

    Json history = Json::array();
    for (const auto& h : s.sales_history) {
        Json list = Json::array();
        for (const auto& rec : h) list.push_back({rec.day, rec.units, rec.price});
        history.push_back(std::move(list));
    }
    j["sales_history"] = std::move(history);

    j["finance"] = {{"funds", s.finance.funds},
                    {"unpaid", s.finance.consecutive_unpaid_rent_days},
                    {"income", s.finance.cumulative_income},
                    {"procurement", s.finance.cumulative_procurement},
                    {"rent_paid", s.finance.cumulative_rent_paid}};
    j["funds_day_start"] = s.funds_day_start;
    j["procurement_today"] = s.procurement_today;
    j["placed_orders_today"] = s.placed_orders_today;
    j["draft"] = to_json(s.draft);
    j["strategy"] = to_json(s.strategy);
    j["memory"] = s.memory;
    j["rng"] = {engine_state(s.rng.traffic), engine_state(s.rng.demand),  engine_state(s.rng.leadtime),
                engine_state(s.rng.news),    engine_state(s.rng.reviews), engine_state(s.rng.catalog)};
    return j;
}

std::uint64_t state_digest(const WorldState& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : state_snapshot(s).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace retail
