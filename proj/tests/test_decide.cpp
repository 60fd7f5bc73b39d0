#include <doctest.h>

#include "fixtures.hpp"
#include "shiftlab/decide.hpp"

using namespace shiftlab;

TEST_SUITE("decide") {

TEST_CASE("prefix radii follow the recursion") {
    CHECK(semidecide_periods(1) == PeriodSet{{-1, -1}, {-1, 0}});
    const auto p = semidecide_prefixes(2);
    REQUIRE(p.size() == 3);
    CHECK(p[0].radius == 1);
    // P'_1 = {(1,0),(1,1)}: 1 + f'({(1,1)}, 2) + 2
    CHECK(p[1].radius == 5);
    CHECK(p[1].radius == g_bound({{1, 0}, {0, 1}}));
    CHECK(p[2].radius > p[1].radius);
}

TEST_CASE("semi-algorithm examples") {
    const auto one = aperiodic_semidecide(fixtures::rules("one_symbol"), 3);
    REQUIRE(std::holds_alternative<NoAperiodicPoint>(one));
    CHECK(std::get<NoAperiodicPoint>(one).n == 1);

    const RuleSet full = fixtures::rules("full_shift");
    const auto ev = aperiodic_semidecide(full, 2);
    REQUIRE(std::holds_alternative<AperiodicEvidence>(ev));
    const auto& e = std::get<AperiodicEvidence>(ev);
    CHECK(e.n == 2);
    REQUIRE(e.witnesses.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(verify_witness(full, e.prefixes[i], e.witnesses[i]));

    const auto h = aperiodic_semidecide(fixtures::rules("hconst"), 2);
    REQUIRE(std::holds_alternative<NoAperiodicPoint>(h));
    CHECK(std::get<NoAperiodicPoint>(h).n == 1);
    CHECK(std::get<NoAperiodicPoint>(h).prefixes.back().radius == 5);

    const auto empty = aperiodic_semidecide(fixtures::rules("empty_wang"), 2);
    REQUIRE(std::holds_alternative<EmptyShift>(empty));
    CHECK(std::get<EmptyShift>(empty).radius == 1);
}

TEST_CASE("budget exhaustion is reported, not truncated") {
    SearchOptions capped;
    capped.radius_cap = 10;
    const auto v = aperiodic_semidecide(fixtures::rules("full_shift"), 2, capped);
    REQUIRE(std::holds_alternative<BudgetExhausted>(v));
    CHECK(std::get<BudgetExhausted>(v).n == 2);
    CHECK(std::get<BudgetExhausted>(v).kind == "radius");

    SearchOptions tiny;
    tiny.node_budget = 10;
    CHECK(std::holds_alternative<BudgetExhausted>(aperiodic_semidecide(fixtures::rules("hconst"), 1, tiny)));
}

TEST_CASE("halting is stable under larger budgets") {
    for (std::uint64_t budget : {100'000ull, 1'000'000ull, 100'000'000ull}) {
        SearchOptions o;
        o.node_budget = budget;
        const auto v = aperiodic_semidecide(fixtures::rules("hconst"), 2, o);
        REQUIRE(std::holds_alternative<NoAperiodicPoint>(v));
        CHECK(std::get<NoAperiodicPoint>(v).n == 1);
    }
}

TEST_CASE("periodic_search examples") {
    const auto tile = periodic_search(compile_wang({{{"c", "c", "c", "c"}}}), 4);
    REQUIRE(tile.has_value());
    CHECK(tile->p == PeriodVector(1, 0));
    CHECK(tile->q == PeriodVector(0, 1));
    CHECK_FALSE(periodic_search(fixtures::rules("empty_wang"), 6).has_value());
    const auto cb = periodic_search(fixtures::rules("checkerboard_wang"), 4);
    REQUIRE(cb.has_value());
    CHECK(cb->config.lattice().area() == 2);
}

TEST_CASE("classify examples") {
    const auto one = classify(fixtures::rules("one_symbol"));
    CHECK(one.kind == Classification::AllPointsPeriodic);
    REQUIRE(one.cover.has_value());
    CHECK(one.cover->certified);
    CHECK(one.cover->periods.contains(PeriodVector(1, 0)));
    REQUIRE(one.overlaps.size() == 1);
    CHECK(same_config(one.overlaps[0], PeriodicConfig::constant(0)));

    const auto h = classify(fixtures::rules("hconst"));
    CHECK(h.kind == Classification::AllPointsPeriodic);
    CHECK(h.cover->periods == PeriodSet{{1, 0}});
    CHECK(h.presentation.size() == 1);
    CHECK(h.overlaps.size() == 2);

    CHECK(classify(fixtures::rules("empty_wang")).kind == Classification::Empty);
    CHECK(classify(fixtures::rules("full_shift")).kind == Classification::HasAperiodicEvidence);

    const auto cb = classify(fixtures::rules("checkerboard_wang"));
    CHECK(cb.kind == Classification::AllPointsPeriodic);
    CHECK(cb.cover->periods == PeriodSet{{1, 1}});
}

TEST_CASE("forced periods: halting step and periodic search agree") {
    // constancy along (1,0) and along (1,1)
    const RuleSet diag({"0", "1"},
                       {Pattern({{{0, 0}, 0}, {{1, 1}, 1}}), Pattern({{{0, 0}, 1}, {{1, 1}, 0}})});
    for (const auto& [rules, p] : {std::pair{fixtures::rules("hconst"), PeriodVector(1, 0)},
                                   std::pair{diag, PeriodVector(1, 1)}}) {
        const auto r = classify(rules);
        REQUIRE(r.kind == Classification::AllPointsPeriodic);
        CHECK(norm(p) <= static_cast<Coord>(r.cover->halting_step));
        CHECK(r.cover->periods.contains(p));
        REQUIRE(r.periodic.has_value());
        CHECK(r.periodic->config.has_period(p));
        for (Coord area = 1; area <= 6; ++area)
            for (Coord b = 0; b < area; ++b)
                for (const auto& t : enumerate_tori(rules, Lattice({1, b}, {0, area}))) CHECK(t.has_period(p));
    }
}

TEST_CASE("same_config") {
    const auto a = PeriodicConfig::periodic({2, 0}, {0, 1}, [](Vec2 z) { return static_cast<Symbol>(floor_mod(z.x, 2)); });
    const auto b = PeriodicConfig::periodic({4, 0}, {0, 3}, [](Vec2 z) { return static_cast<Symbol>(floor_mod(z.x, 2)); });
    CHECK(same_config(a, b));
    CHECK_FALSE(same_config(a, a.shifted({1, 0})));
    CHECK_THROWS_AS(same_config(a, fixtures::spot()), PreconditionError);
}

}
