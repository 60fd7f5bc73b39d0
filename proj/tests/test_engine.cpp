#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/random.hpp"

using namespace shiftlab;

namespace {

// Smallest ball around `center` holding both endpoints of an avoidance of p.
Gathered carrying(const PeriodicConfig& x, Vec2 center, const PeriodVector& p) {
    for (Coord r = 0;; ++r) {
        const Ball b{center, r};
        for (Vec2 z : b.cells())
            if (is_avoidance(x, z, p) && b.contains(z + p.vec())) return {b, {{p, Avoidance{z, p}}}};
    }
}

bool verified(const PeriodicConfig& x, const Gathered& g) {
    for (const auto& [p, a] : g.avoidances)
        if (a.p != p || !is_avoidance(x, a.z, p) || !g.ball.contains(a.z)) return false;
    return true;
}

PeriodicConfig avoiding_all(Rng& rng, const PeriodSet& periods) {
    while (true) {
        auto x = random_periodic_config(rng, 3, 12);
        bool ok = true;
        for (const auto& p : periods) ok = ok && !x.has_period(p);
        if (ok) return x;
    }
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("lcm_reduce examples") {
    CHECK(lcm_reduce({{1, 0}, {2, 0}, {0, 1}}) == PeriodSet{{0, 1}, {2, 0}});
    CHECK(lcm_reduce({{2, 0}, {3, 0}}) == PeriodSet{{6, 0}});
    CHECK(lcm_reduce({{1, 1}, {0, 1}}) == PeriodSet{{0, 1}, {1, 1}});
    CHECK(lcm_reduce({{-1, 0}, {1, 0}}) == PeriodSet{{1, 0}});
    CHECK(lcm_reduce({{-2, -2}, {3, 3}}) == PeriodSet{{6, 6}});
}

TEST_CASE("lcm_reduce: non-colinear output, each input divides exactly one output") {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        std::vector<PeriodVector> in;
        const auto k = draw(rng, 1, 6);
        for (Coord j = 0; j < k; ++j) {
            Coord dx = draw(rng, -4, 4), dy = draw(rng, -4, 4);
            if (dx == 0 && dy == 0) dx = 1;
            in.emplace_back(dx, dy);
        }
        const PeriodSet set(in);
        const PeriodSet out = lcm_reduce(set);
        CHECK(out.pairwise_noncolinear());
        for (const auto& q : out) CHECK(q.is_positive());
        for (const auto& p : set) {
            int divides = 0;
            for (const auto& q : out) {
                if (!colinear(p.vec(), q.vec())) continue;
                const Coord m = p.dx() != 0 ? q.dx() / p.dx() : q.dy() / p.dy();
                if (p.vec() * m == q.vec()) ++divides;
            }
            CHECK(divides == 1);
        }
    }
}

TEST_CASE("canonical period sets") {
    const PeriodSet s{{1, 0}, {0, 1}, {1, 0}, {-1, 1}};
    CHECK(s.size() == 3);
    CHECK(s[0] == PeriodVector(-1, 1));
    CHECK(s.norm_sum() == 3);
    CHECK(periods_up_to_norm(1).size() == 8);
    CHECK(periods_up_to_norm(2).size() == 24);
    CHECK(canonical_periods(2) == PeriodSet{{-1, -1}, {-1, 0}});
    std::ostringstream os;
    os << PeriodSet{{0, 1}, {1, 0}};
    CHECK(os.str() == "{(0,1),(1,0)}");
}

TEST_CASE("f_bound: colinear error and monotone in r") {
    CHECK_THROWS_AS(f_bound({1, 0}, {-2, 0}, 1), PreconditionError);
    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
        const PeriodVector p(draw(rng, -3, 3), draw(rng, 1, 3));
        const PeriodVector q(draw(rng, 1, 3), draw(rng, -3, 3));
        if (colinear(p.vec(), q.vec())) continue;
        CHECK(f_bound(p, q, 5) >= f_bound(p, q, 0));
        CHECK(f_bound(p, q, 0) >= 0);
        for (Coord r = 0; r < 6; ++r) CHECK(f_bound(p, q, r + 1) >= f_bound(p, q, r));
    }
}

TEST_CASE("f_bound contract against gather_pair, coincident centers") {
    Rng rng(23);
    const PeriodVector p0(1, 0), pn(0, 1);
    Coord worst = 0;
    for (int i = 0; i < 500; ++i) {
        const auto x = avoiding_all(rng, {p0, pn});
        const Vec2 z{draw(rng, -8, 8), draw(rng, -8, 8)};
        const auto out = gather_pair(x, carrying(x, z, p0), carrying(x, z, pn), p0, pn);
        CHECK(verified(x, out));
        CHECK(out.avoidances.size() == 2);
        worst = std::max(worst, norm(out.ball.center - z));
    }
    CHECK(worst <= f_bound(p0, pn, 0));
}

TEST_CASE("f_bound contract against gather_pair, r = 3") {
    Rng rng(24);
    const PeriodVector p0(1, 0), pn(1, 1);
    for (int i = 0; i < 500; ++i) {
        const auto x = avoiding_all(rng, {p0, pn});
        const Vec2 z{draw(rng, -8, 8), draw(rng, -8, 8)};
        const Vec2 a = z + Vec2{draw(rng, -3, 3), draw(rng, -3, 3)};
        const Vec2 b = z + Vec2{draw(rng, -3, 3), draw(rng, -3, 3)};
        const auto out = gather_pair(x, carrying(x, a, p0), carrying(x, b, pn), p0, pn);
        CHECK(verified(x, out));
        CHECK(norm(out.ball.center - z) <= f_bound(p0, pn, 3));
    }
}

TEST_CASE("f_prime") {
    CHECK(f_prime({{0, 1}}, 7) == 7);
    for (Coord r = 0; r < 5; ++r) CHECK(f_prime({{1, 0}, {0, 1}}, r) == f_bound({0, 1}, {1, 0}, r));
    const PeriodSet three{{1, 0}, {0, 1}, {1, 1}};
    for (Coord r = 0; r < 5; ++r) CHECK(f_prime(three, r) >= r);
    CHECK_THROWS_AS(f_prime(PeriodSet{}, 1), PreconditionError);
    CHECK_THROWS_AS(f_prime({{1, 0}, {2, 0}}, 1), PreconditionError);
    BoundTable table;
    CHECK(f_prime(three, 4, &table) == f_prime(three, 4));
}

TEST_CASE("g_bound") {
    CHECK(g_bound({{0, 1}}) == 1);
    // P'_1 = {(0,1),(1,0)}, sum 2, f' of a singleton is its radius: 1 + 2 + 2
    CHECK(g_bound({{1, 0}, {0, 1}}) == 5);
    CHECK(g_bound({{-1, -1}, {-1, 0}}) == 5);
    const PeriodSet p{{1, 0}, {0, 1}, {1, 1}};
    CHECK(g_bound(p.prefix(0)) < g_bound(p.prefix(1)));
    CHECK(g_bound(p.prefix(1)) < g_bound(p.prefix(2)));
}

TEST_CASE("g_prime") {
    CHECK(g_prime(1) == g_bound(lcm_reduce(periods_up_to_norm(1))));
    CHECK(lcm_reduce(periods_up_to_norm(1)).size() == 4);
    Coord prev = 0;
    for (Coord n = 1; n <= 3; ++n) {
        const Coord g = g_prime(n);
        CHECK(g >= n);
        CHECK(g >= prev);
        prev = g;
    }
    std::ostringstream warn;
    g_prime(2, 1000, &warn);
    CHECK_FALSE(warn.str().empty());
}

TEST_CASE("gather_pair examples") {
    const auto spot = fixtures::spot();
    const PeriodVector h(1, 0), v(0, 1);
    const Gathered a{{{0, 0}, 1}, {{h, {{0, 0}, h}}}};
    const Gathered b{{{0, 0}, 1}, {{v, {{0, 0}, v}}}};
    const auto out = gather_pair(spot, a, b, h, v);
    CHECK(out.ball.contains(Vec2{0, 0}));
    CHECK(verified(spot, out));

    const auto cb = fixtures::checkerboard();
    const auto out2 = gather_pair(cb, carrying(cb, {3, 3}, h), carrying(cb, {-2, 1}, v), h, v);
    CHECK(verified(cb, out2));
    CHECK(out2.avoidances.size() == 2);

    // a claimed avoidance that does not hold
    const Gathered bogus{{{5, 5}, 1}, {{h, {{5, 5}, h}}}};
    CHECK_THROWS_AS(gather_pair(PeriodicConfig::constant(0), bogus, b, h, v), PreconditionError);
}

TEST_CASE("gather_ball examples") {
    const auto out = gather_ball(fixtures::spot(), {{1, 0}, {0, 1}});
    CHECK(out.ball.radius <= 2);
    CHECK(norm(out.ball.center) <= 2);
    CHECK(verified(fixtures::spot(), out));

    const PeriodVector p(2, 1);
    const auto single = gather_ball(fixtures::checkerboard(), {p});
    CHECK(single.ball.radius == 2);
    CHECK(single.ball.center == single.avoidances.at(p).z);

    CHECK_THROWS_AS(gather_ball(PeriodicConfig::constant(0), {{1, 0}}), PreconditionError);
    CHECK_THROWS_AS(gather_ball(fixtures::spot(), {{1, 0}, {-2, 0}}), PreconditionError);
}

TEST_CASE("gather_ball on random configs re-verifies by scan") {
    Rng rng(25);
    const PeriodSet pool{{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    for (int i = 0; i < 200; ++i) {
        const auto gc = random_gather_case(rng, pool);
        const auto out = gather_ball(gc.config, gc.periods);
        CHECK(out.ball.radius <= gc.periods.norm_sum());
        const auto scan = scan_avoidances(gc.config, out.ball, gc.periods.periods());
        for (const auto& p : gc.periods) {
            CHECK_FALSE(scan.at(p).empty());
            const auto& a = out.avoidances.at(p);
            CHECK(out.ball.contains_pair(a));
            CHECK(std::find_if(scan.at(p).begin(), scan.at(p).end(),
                               [&a](const Avoidance& s) { return s.z == a.z; }) != scan.at(p).end());
        }
    }
}

TEST_CASE("gather_near displacement") {
    const auto cb = fixtures::checkerboard();
    const Ball known{{4, -2}, 2};
    const auto single = gather_near(cb, {{0, 1}}, known);
    CHECK(norm(single.ball.center - known.center) <= known.radius);
    CHECK(verified(cb, single));

    Rng rng(26);
    const PeriodSet two{{1, 0}, {1, 1}};
    for (int i = 0; i < 200; ++i) {
        const auto x = avoiding_all(rng, two);
        const Vec2 c{draw(rng, -6, 6), draw(rng, -6, 6)};
        Coord r = 0;
        for (const auto& p : two) r = std::max(r, carrying(x, c, p).ball.radius);
        const Ball k{c, r};
        const auto out = gather_near(x, two, k);
        CHECK(verified(x, out));
        CHECK(out.ball.radius <= two.norm_sum());
        CHECK(norm(out.ball.center - c) <= f_prime(two, r));
    }
}

TEST_CASE("multiple-to-base extraction") {
    Rng rng(27);
    const PeriodVector two(2, 0), one(1, 0);
    for (int i = 0; i < 100; ++i) {
        const auto x = avoiding_all(rng, {two});
        const auto a = *x.find_avoidance(two);
        const auto b = to_base_avoidance(x, a, one);
        CHECK(is_avoidance(x, b.z, one));
        CHECK((b.z == a.z || b.z == a.z + one.vec()));
    }
    CHECK_THROWS_AS(to_base_avoidance(fixtures::spot(), {{0, 0}, {1, 1}}, one), PreconditionError);
}

TEST_CASE("concentric: singleton") {
    const auto cb = fixtures::checkerboard();
    const PeriodVector p(0, 1);
    const auto seed = gather_ball(cb, {p});
    const auto out = concentric(cb, {p}, seed.ball);
    REQUIRE(out.levels.size() == 1);
    CHECK(out.levels[0].ball.radius == 1);
    CHECK(out.center == out.levels[0].avoidances.at(p).z);
}

TEST_CASE("concentric on random configs") {
    Rng rng(28);
    const PeriodSet p{{1, 0}, {0, 1}, {1, 1}};
    BoundTable table;
    for (int i = 0; i < 100; ++i) {
        const auto x = avoiding_all(rng, p);
        const auto seed = gather_ball(x, lcm_reduce(p));
        const auto out = concentric(x, p, seed.ball, &table);
        CHECK(norm(out.center - seed.ball.center) <= g_bound(p));
        REQUIRE(out.levels.size() == p.size());
        for (std::size_t k = 0; k < out.levels.size(); ++k) {
            const auto& level = out.levels[k];
            const PeriodSet prefix = p.prefix(k);
            CHECK(level.ball == Ball{out.center, g_bound(prefix)});
            const auto scan = scan_avoidances(x, level.ball, prefix.periods());
            for (const auto& q : prefix) {
                CHECK_FALSE(scan.at(q).empty());
                CHECK(is_avoidance(x, level.avoidances.at(q).z, q));
                CHECK(level.ball.contains(level.avoidances.at(q).z));
            }
            if (k > 0) CHECK(level.ball.contains(out.levels[k - 1].ball));
        }
    }
}

TEST_CASE("concentric rejects a seed without the claimed avoidances") {
    CHECK_THROWS_AS(concentric(fixtures::spot(), {{1, 0}}, Ball{{10, 10}, 1}), PreconditionError);
}

TEST_CASE("gathering is deterministic") {
    Rng a(29), b(29);
    const PeriodSet pool{{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    for (int i = 0; i < 20; ++i) {
        const auto ga = random_gather_case(a, pool);
        const auto gb = random_gather_case(b, pool);
        const auto oa = gather_ball(ga.config, ga.periods);
        const auto ob = gather_ball(gb.config, gb.periods);
        CHECK(oa.ball == ob.ball);
        CHECK(oa.avoidances.size() == ob.avoidances.size());
        for (const auto& [p, av] : oa.avoidances) CHECK(ob.avoidances.at(p).z == av.z);
    }
}

}
