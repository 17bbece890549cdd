#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zap/architecture.hpp"

#include <cmath>
#include <set>

using namespace zap;

TEST_CASE("storage trap positions follow the grid pitches") {
    ArchitectureConfig cfg;
    Point p = cfg.site_position(Site::storage(1, 2));
    CHECK(p.x == doctest::Approx(12.0));
    CHECK(p.y == doctest::Approx(6.0));
    Point o = cfg.site_position(Site::storage(0, 0));
    CHECK(o.x == 0.0);
    CHECK(o.y == 0.0);
}

TEST_CASE("entanglement slot positions offset by pair and site gaps") {
    ArchitectureConfig cfg;
    double zone_y = cfg.storage_top_y() + cfg.zone_gap;
    Point right = cfg.site_position(Site::ent(0, 1, PairSlot::Right));
    CHECK(right.x == doctest::Approx(14.0)); // 1 * (4 + 6) + 4
    CHECK(right.y == doctest::Approx(zone_y));
    Point left = cfg.site_position(Site::ent(0, 1, PairSlot::Left));
    CHECK(left.x == doctest::Approx(10.0));
    Point row1 = cfg.site_position(Site::ent(1, 0, PairSlot::Left));
    CHECK(row1.y == doctest::Approx(zone_y + cfg.ent_row_pitch));
}

TEST_CASE("paired slots are the only trap pairs inside blockade range") {
    ArchitectureConfig cfg;
    auto slots = cfg.ent_slots();
    for (std::size_t i = 0; i < slots.size(); ++i)
        for (std::size_t j = i + 1; j < slots.size(); ++j) {
            double d = distance(cfg.site_position(slots[i]), cfg.site_position(slots[j]));
            bool same_site = slots[i].row == slots[j].row && slots[i].col == slots[j].col;
            if (same_site)
                CHECK(d < cfg.rydberg_radius);
            else
                CHECK(d >= cfg.rydberg_radius);
        }
}

TEST_CASE("storage traps stay outside blockade range of everything") {
    ArchitectureConfig cfg;
    auto storage = cfg.storage_sites();
    auto ent = cfg.ent_slots();
    for (std::size_t i = 0; i < storage.size(); ++i) {
        Point pi = cfg.site_position(storage[i]);
        for (std::size_t j = i + 1; j < storage.size(); ++j)
            CHECK(distance(pi, cfg.site_position(storage[j])) >= cfg.rydberg_radius);
        for (const Site& e : ent)
            CHECK(distance(pi, cfg.site_position(e)) >= cfg.rydberg_radius);
    }
}

TEST_CASE("out-of-bounds sites are rejected") {
    ArchitectureConfig cfg;
    CHECK_THROWS_AS(cfg.site_position(Site::storage(cfg.storage_rows, 0)), std::out_of_range);
    CHECK_THROWS_AS(cfg.site_position(Site::storage(0, -1)), std::out_of_range);
    CHECK_THROWS_AS(cfg.site_position(Site::ent(0, cfg.ent_sites_per_row, PairSlot::Left)),
                    std::out_of_range);
}

TEST_CASE("config loading overrides defaults and validates") {
    auto kv = KeyValueConfig::from_string(
        "arch.storage_rows=3\n"
        "arch.storage_cols=5\n"
        "arch.rydberg_radius=5.5\n");
    ArchitectureConfig cfg = ArchitectureConfig::from_config(kv);
    CHECK(cfg.storage_rows == 3);
    CHECK(cfg.storage_cols == 5);
    CHECK(cfg.rydberg_radius == doctest::Approx(5.5));
    CHECK(cfg.storage_capacity() == 15);

    auto bad = KeyValueConfig::from_string("arch.rydberg_radius=7\n"); // beyond inter-site gap
    CHECK_THROWS_AS(ArchitectureConfig::from_config(bad), ConfigError);
    auto zero = KeyValueConfig::from_string("arch.storage_rows=0\n");
    CHECK_THROWS_AS(ArchitectureConfig::from_config(zero), ConfigError);
}

TEST_CASE("echo round-trips through the config reader") {
    ArchitectureConfig cfg;
    cfg.storage_rows = 7;
    cfg.timing.move_t0_us = 123.5;
    ArchitectureConfig back = ArchitectureConfig::from_config(KeyValueConfig::from_string(cfg.echo()));
    CHECK(back.storage_rows == 7);
    CHECK(back.timing.move_t0_us == doctest::Approx(123.5));
    CHECK(back.ent_sites_per_row == cfg.ent_sites_per_row);
}

TEST_CASE("sized_for covers the requested capacity") {
    for (std::size_t n : {1u, 2u, 7u, 35u, 100u})
        for (std::size_t w : {1u, 3u, 13u, 50u}) {
            ArchitectureConfig cfg = ArchitectureConfig::sized_for(n, w);
            CHECK(cfg.storage_capacity() >= n);
            CHECK(cfg.ent_site_capacity() >= w);
        }
}

TEST_CASE("flight time follows the square-root profile") {
    TimingModel t;
    CHECK(t.move_time(0) == 0.0);
    CHECK(t.move_time(110.0) == doctest::Approx(200.0));
    CHECK(t.move_time(12.0) == doctest::Approx(66.05782590758163).epsilon(1e-14));
    CHECK(t.move_time(27.5) == doctest::Approx(100.0)); // quarter distance, half time
}

TEST_CASE("occupancy keeps the qubit-trap map bijective") {
    Occupancy occ(3);
    occ.place(0, Site::storage(0, 0));
    occ.place(1, Site::ent(0, 0, PairSlot::Left));
    CHECK(*occ.at(Site::storage(0, 0)) == 0);
    CHECK(*occ.site_of(1) == Site::ent(0, 0, PairSlot::Left));
    CHECK(!occ.at(Site::storage(0, 1)).has_value());
    CHECK(!occ.all_placed());

    CHECK_THROWS_AS(occ.place(2, Site::storage(0, 0)), std::logic_error);
    CHECK_THROWS_AS(occ.place(0, Site::storage(1, 1)), std::logic_error);
    CHECK_THROWS_AS(occ.remove(2), std::logic_error);

    occ.place(2, Site::storage(0, 2));
    CHECK(occ.all_placed());
    CHECK(!occ.all_in_storage()); // qubit 1 sits in the entanglement zone

    occ.relocate(1, Site::storage(2, 2));
    CHECK(occ.all_in_storage());
    CHECK(!occ.at(Site::ent(0, 0, PairSlot::Left)).has_value());
}

TEST_CASE("blockade pairs report co-sited atoms only") {
    ArchitectureConfig cfg;
    Occupancy occ(6);
    occ.place(0, Site::ent(0, 0, PairSlot::Left));
    occ.place(1, Site::ent(0, 0, PairSlot::Right));
    occ.place(2, Site::ent(0, 1, PairSlot::Left));
    occ.place(3, Site::ent(1, 0, PairSlot::Right));
    occ.place(4, Site::storage(0, 0));
    occ.place(5, Site::storage(0, 1));
    auto pairs = blockade_pairs(cfg, occ);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<QubitIndex, QubitIndex>{0, 1});
}

TEST_CASE("blockade pair qubit order is ascending regardless of slots") {
    ArchitectureConfig cfg;
    Occupancy occ(2);
    occ.place(1, Site::ent(0, 0, PairSlot::Left));
    occ.place(0, Site::ent(0, 0, PairSlot::Right));
    auto pairs = blockade_pairs(cfg, occ);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first == 0);
    CHECK(pairs[0].second == 1);
}

TEST_CASE("capacity check reports shortfalls") {
    ArchitectureConfig cfg;
    cfg.storage_rows = 4;
    cfg.storage_cols = 10;
    cfg.ent_rows = 2;
    cfg.ent_sites_per_row = 2;

    CapacityVerdict ok = min_capacity_check(cfg, 7, 3);
    CHECK(ok.ok);
    CHECK(ok.message.empty());

    CapacityVerdict bad = min_capacity_check(cfg, 7, 5);
    CHECK(!bad.ok);
    CHECK(bad.required_ent_sites == 5);
    CHECK(bad.available_ent_sites == 4);
    CHECK(bad.message.find("entanglement") != std::string::npos);

    CapacityVerdict storage_bad = min_capacity_check(cfg, 41, 1);
    CHECK(!storage_bad.ok);
    CHECK(storage_bad.message.find("storage") != std::string::npos);
}

TEST_CASE("site keys order storage before entanglement and stay unique") {
    ArchitectureConfig cfg;
    std::set<std::int64_t> keys;
    for (const Site& s : cfg.storage_sites()) CHECK(keys.insert(s.key()).second);
    for (const Site& s : cfg.ent_slots()) CHECK(keys.insert(s.key()).second);
    CHECK(Site::storage(9, 9) < Site::ent(0, 0, PairSlot::Left));
}
