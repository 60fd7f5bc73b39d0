#include <doctest.h>

#include "fixtures.hpp"
#include "shiftlab/random.hpp"
#include "shiftlab/sft.hpp"

using namespace shiftlab;

namespace {

// Every assignment of `cells`, lexicographic with the first cell most
// significant, filtered by local admissibility.
std::vector<Pattern> naive_admissible(const RuleSet& rules, const std::vector<Vec2>& cells) {
    const Symbol k = rules.alphabet_size();
    std::vector<Symbol> digits(cells.size(), 0);
    std::vector<Pattern> out;
    while (true) {
        std::vector<Pattern::Cell> pc;
        for (std::size_t i = 0; i < cells.size(); ++i) pc.emplace_back(cells[i], digits[i]);
        Pattern p(std::move(pc));
        if (is_locally_admissible(rules, p)) out.push_back(std::move(p));
        std::size_t i = cells.size();
        while (i > 0 && ++digits[i - 1] == k) digits[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

std::vector<Vec2> square(Coord n) {
    std::vector<Vec2> out;
    for (Coord y = 0; y < n; ++y)
        for (Coord x = 0; x < n; ++x) out.push_back({x, y});
    return out;
}

std::vector<Pattern> streamed(const RuleSet& rules, Coord radius) {
    std::vector<Pattern> out;
    enumerate_admissible(rules, radius, [&out](const AdmissiblePattern& a) {
        out.push_back(a.pattern);
        return true;
    });
    return out;
}

}  // namespace

TEST_SUITE("sft") {

TEST_CASE("compile_wang") {
    CHECK(compile_wang({{{"c", "c", "c", "c"}}}).forbidden().empty());

    const RuleSet empty = fixtures::rules("empty_wang");
    CHECK(empty.forbidden().size() == 8);
    CHECK(count_admissible_square(empty, 2) == 0);

    // all colors distinct per side: 2 t^2 minus matching pairs (2 + 2 here)
    const RuleSet cb = fixtures::rules("checkerboard_wang");
    CHECK(cb.forbidden().size() == 4);
    CHECK(cb.alphabet() == std::vector<std::string>{"0", "1"});
    CHECK_THROWS_AS(compile_wang({}), PreconditionError);
}

TEST_CASE("rule set basics") {
    const RuleSet h = fixtures::rules("hconst");
    CHECK(h.interaction_radius() == 1);
    const RuleSet t = h.transposed();
    CHECK(t.forbidden()[0].at({0, 1}).has_value());
    CHECK_THROWS_AS(RuleSet({"a", "a"}, {}), PreconditionError);
    CHECK_THROWS_AS(RuleSet({"a"}, {Pattern({{{0, 0}, 3}})}), PreconditionError);
}

TEST_CASE("enumerate_admissible examples") {
    CHECK(streamed(fixtures::rules("one_symbol"), 1).size() == 1);
    CHECK(streamed(fixtures::rules("full_shift"), 1).size() == 512);
    const auto rows = streamed(fixtures::rules("hconst"), 2);
    CHECK(rows.size() == 32);
    for (const auto& p : rows)
        for (const auto& [z, s] : p.cells()) CHECK(p.at({-2, z.y}) == s);
}

TEST_CASE("enumeration stops when asked and honors the budget") {
    int seen = 0;
    enumerate_admissible(fixtures::rules("full_shift"), 1, [&seen](const AdmissiblePattern&) { return ++seen < 3; });
    CHECK(seen == 3);
    SearchOptions tight;
    tight.node_budget = 100;
    CHECK_THROWS_AS(enumerate_admissible(
                        fixtures::rules("full_shift"), 2, [](const AdmissiblePattern&) { return true; }, tight),
                    BudgetExceeded);
    SearchOptions capped;
    capped.radius_cap = 3;
    CHECK_THROWS_AS(has_admissible(fixtures::rules("full_shift"), 4, capped), BudgetExceeded);
}

TEST_CASE("backtracking equals naive filtration") {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const RuleSet rules = random_small_rules(rng, 2, 4);
        for (Coord r = 0; r <= 1; ++r) {
            const auto expect = naive_admissible(rules, Ball{{0, 0}, r}.cells());
            const auto got = streamed(rules, r);
            CHECK(got == expect);
            CHECK(has_admissible(rules, r) == !expect.empty());
        }
    }
}

TEST_CASE("count_admissible_square examples") {
    for (Coord n = 1; n <= 4; ++n) CHECK(count_admissible_square(fixtures::rules("one_symbol"), n) == 1);
    for (Coord n = 1; n <= 4; ++n)
        CHECK(count_admissible_square(fixtures::rules("full_shift"), n) == Count(1) << (n * n));
    const Count expect[] = {2, 4, 8, 16, 32, 64};
    for (Coord n = 1; n <= 6; ++n) CHECK(count_admissible_square(fixtures::rules("hconst"), n) == expect[n - 1]);
    for (Coord n = 1; n <= 4; ++n)
        CHECK(count_admissible_square(fixtures::rules("hconst"), n) ==
              naive_admissible(fixtures::rules("hconst"), square(n)).size());
    CHECK(to_string(Count(1) << 100) == "1267650600228229401496703205376");
}

TEST_CASE("transfer counts equal brute force") {
    Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        const RuleSet rules = random_small_rules(rng, 2, 4);
        for (Coord n = 1; n <= 3; ++n)
            CHECK(count_admissible_square(rules, n) == naive_admissible(rules, square(n)).size());
    }
}

TEST_CASE("Wang seams never mismatch") {
    Rng rng(33);
    for (int i = 0; i < 20; ++i) {
        WangTileSet set;
        const auto t = draw(rng, 1, 3);
        const std::string colors[] = {"r", "g", "b"};
        for (Coord k = 0; k < t; ++k)
            set.tiles.push_back({colors[draw(rng, 0, 2)], colors[draw(rng, 0, 2)], colors[draw(rng, 0, 2)],
                                 colors[draw(rng, 0, 2)]});
        const RuleSet rules = compile_wang(set);
        enumerate_admissible(rules, 1, [&](const AdmissiblePattern& a) {
            for (const auto& [z, s] : a.pattern.cells()) {
                if (auto e = a.pattern.at(z + Vec2{1, 0})) CHECK(set.tiles[s].east == set.tiles[*e].west);
                if (auto n = a.pattern.at(z + Vec2{0, 1})) CHECK(set.tiles[s].north == set.tiles[*n].south);
            }
            return true;
        });
    }
}

TEST_CASE("has_concentric_witness examples") {
    const std::vector<PrefixRequirement> one{{{{1, 0}}, 1}};
    CHECK_FALSE(has_concentric_witness(fixtures::rules("one_symbol"), one).has_value());

    const auto w = has_concentric_witness(fixtures::rules("full_shift"), one);
    REQUIRE(w.has_value());
    CHECK(verify_witness(fixtures::rules("full_shift"), one, *w));
    const auto& a = w->avoidances[0].at(PeriodVector(1, 0));
    CHECK(w->pattern.pattern.at(a.z) != w->pattern.pattern.at(a.end()));

    const std::vector<PrefixRequirement> two{{{{0, 1}}, 1}, {{{0, 1}, {1, 0}}, 2}};
    CHECK_FALSE(has_concentric_witness(fixtures::rules("hconst"), two).has_value());
    const std::vector<PrefixRequirement> vertical{{{{0, 1}}, 2}};
    CHECK(has_concentric_witness(fixtures::rules("hconst"), vertical).has_value());

    const std::vector<PrefixRequirement> descending{{{{0, 1}}, 2}, {{{0, 1}}, 1}};
    CHECK_THROWS_AS(has_concentric_witness(fixtures::rules("full_shift"), descending), PreconditionError);
}

TEST_CASE("verify_witness rejects tampering") {
    const RuleSet rules = fixtures::rules("full_shift");
    const std::vector<PrefixRequirement> req{{{{1, 0}, {0, 1}}, 2}};
    auto w = *has_concentric_witness(rules, req);
    CHECK(verify_witness(rules, req, w));
    auto bad = w;
    bad.avoidances[0].erase(PeriodVector(1, 0));
    CHECK_FALSE(verify_witness(rules, req, bad));
    auto moved = w;
    moved.avoidances[0].at(PeriodVector(0, 1)).z = {2, 2};
    CHECK_FALSE(verify_witness(rules, req, moved));
}

TEST_CASE("tori and admissibility of periodic configs") {
    const RuleSet cb = fixtures::rules("checkerboard_wang");
    CHECK_FALSE(find_torus(cb, Lattice({1, 0}, {0, 1})).has_value());
    const auto x = find_torus(cb, Lattice({1, 1}, {0, 2}));
    REQUIRE(x.has_value());
    CHECK(is_admissible(cb, *x));
    CHECK(x->at({0, 0}) != x->at({1, 0}));
    CHECK(enumerate_tori(cb, Lattice({2, 0}, {0, 2})).size() == 2);
    CHECK_FALSE(is_admissible(fixtures::rules("hconst"), fixtures::spot()));
    CHECK(is_admissible(fixtures::rules("full_shift"), fixtures::spot()));
    CHECK_FALSE(is_admissible(fixtures::rules("hconst"), fixtures::checkerboard()));
}

TEST_CASE("parallel first solution matches sequential, result and budget") {
    Rng rng(34);
    for (int i = 0; i < 40; ++i) {
        const RuleSet rules = random_small_rules(rng, 2, 4);
        const Lattice l({draw(rng, 1, 3), draw(rng, 0, 2)}, {0, draw(rng, 1, 3)});
        for (std::uint64_t budget : {5ull, 20ull, 1000ull}) {
            SearchOptions one, four;
            one.node_budget = four.node_budget = budget;
            four.jobs = 4;
            std::optional<PeriodicConfig> a, b;
            bool ta = false, tb = false;
            try {
                a = find_torus(rules, l, one);
            } catch (const BudgetExceeded&) {
                ta = true;
            }
            try {
                b = find_torus(rules, l, four);
            } catch (const BudgetExceeded&) {
                tb = true;
            }
            CHECK(ta == tb);
            CHECK(a.has_value() == b.has_value());
            if (a && b)
                for (Vec2 z : l.domain()) CHECK(a->at(z) == b->at(z));
        }
    }
}

}
