#include "fixtures.hpp"

#include "mvsched/explore.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace mvsched;

TEST_SUITE("explore") {

TEST_CASE("frame length grid") {
    auto inst = fixtures::make_instance(64, {"E"}, {"V"}, {{"a", "E", 1, 32, {1}}, {"b", "E", 2, 8, {1}}});
    auto w = w_grid(inst);
    CHECK(w.front() == 32);
    CHECK(w[1] == 48);
    CHECK(w.back() == 2048);
    CHECK(w.size() == 127);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] - w[i - 1] == 16);
}

TEST_CASE("cycle grid") {
    auto inst = fixtures::make_instance(64, {"E"}, {"V"}, {{"a", "E", 8, 4, {1}}, {"b", "E", 16, 4, {1}}});
    inst.network.cycle_duration_ms = Rational(1);
    auto m = m_grid(inst);
    std::vector<Rational> expected{Rational(8), Rational(4), Rational(2), Rational(1),
                                   Rational(1, 2), Rational(1, 4), Rational(1, 8)};
    CHECK(m == expected);
}

TEST_CASE("rescaling keeps durations and windows") {
    auto inst = fixtures::make_instance(64, {"E"}, {"V"}, {{"a", "E", 4, 4, {1}}, {"b", "E", 64, 4, {1}}});
    inst.network.cycle_duration_ms = Rational(5);
    inst.signals[0].release_cycle = 1;
    inst.signals[0].deadline_cycle = 2;
    inst.network.slots_threshold_override = 10;

    auto half = rescale(inst, 128, Rational(5, 2));
    CHECK(half.network.frame_payload_bits == 128);
    CHECK_FALSE(half.network.slots_threshold_override);
    CHECK(half.signals[0].period_cycles == 8);
    CHECK(half.signals[0].release_cycle == 2);
    CHECK(half.signals[0].deadline_cycle == 5);
    CHECK(half.signals[1].period_cycles == 64);  // capped
    CHECK_NOTHROW(half.check());

    auto twice = rescale(inst, 64, Rational(10));
    // [5 ms, 15 ms] holds no whole 10 ms cycle; the window collapses onto cycle 0
    CHECK(twice.signals[0].period_cycles == 2);
    CHECK(twice.signals[0].release_cycle == 0);
    CHECK(twice.signals[0].deadline_cycle == 0);
    CHECK(twice.signals[1].period_cycles == 32);
    CHECK_NOTHROW(twice.check());
}

TEST_CASE("only the first iteration may be explored") {
    auto inst = fixtures::example1();
    CHECK_THROWS_WITH_AS(explore(inst), "exploration allowed in first iteration only", Error);
}

TEST_CASE("a small sweep") {
    auto inst = fixtures::example1();
    inst.original.reset();
    ExploreOptions opts;
    opts.w_max = 64;
    opts.m_halvings = 2;
    auto rows = explore(inst, opts);
    CHECK(rows.size() == 4 * 3);
    CHECK(rows[0].w_bits == 8);
    CHECK(rows[0].m_ms == Rational(5));
    CHECK(rows[1].m_ms == Rational(5, 2));
    for (const auto& r : rows) {
        CHECK(r.slots >= 1);
        if (r.threshold > 0) {
            REQUIRE(r.utilization_percent);
            CHECK(*r.utilization_percent == doctest::Approx(100.0 * r.slots / r.threshold));
        } else {
            CHECK_FALSE(r.utilization_percent);
        }
    }
    // a wider frame never needs more slots at the same cycle length
    for (std::size_t i = 3; i < rows.size(); ++i) CHECK(rows[i].slots <= rows[i - 3].slots);

    std::ostringstream csv;
    write_csv(csv, rows);
    auto text = csv.str();
    CHECK(text.rfind("W_bits,M_ms,slots,threshold,utilization_percent\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 13);

    std::ostringstream dat;
    write_dat(dat, rows);
    CHECK(dat.str().find("# M_ms 2.5") != std::string::npos);
}

TEST_CASE("no static slot fits a tiny cycle") {
    Instance inst = fixtures::make_instance(16, {"E"}, {"V"}, {{"a", "E", 1, 8, {1}}});
    inst.network.cycle_duration_ms = Rational(1, 4);
    ExploreOptions opts;
    opts.w_max = 8;
    opts.m_halvings = 0;
    auto rows = explore(inst, opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].threshold == 0);
    CHECK_FALSE(rows[0].utilization_percent);
    std::ostringstream csv;
    write_csv(csv, rows);
    CHECK(csv.str().find(",inf\n") != std::string::npos);
}

}
