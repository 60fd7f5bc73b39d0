#include "shiftlab/random.hpp"

#include <set>

namespace shiftlab {

Coord draw(Rng& rng, Coord lo, Coord hi) {
    if (hi < lo) throw PreconditionError("empty draw range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Coord>(rng() % span);
}

namespace {

std::vector<std::string> numbered(Symbol k) {
    std::vector<std::string> out;
    for (Symbol s = 0; s < k; ++s) out.push_back(std::to_string(s));
    return out;
}

}  // namespace

PeriodicConfig random_periodic_config(Rng& rng, Symbol max_symbols, Coord max_area) {
    const Coord area = draw(rng, 1, max_area);
    std::vector<Coord> divisors;
    for (Coord d = 1; d <= area; ++d)
        if (area % d == 0) divisors.push_back(d);
    const Coord a = divisors[static_cast<std::size_t>(draw(rng, 0, static_cast<Coord>(divisors.size()) - 1))];
    const Coord c = area / a;
    const Coord b = draw(rng, 0, a - 1);
    const Coord k = draw(rng, 2, std::max<Coord>(2, max_symbols));
    return PeriodicConfig::periodic({a, 0}, {b, c}, [&](Vec2) { return static_cast<Symbol>(draw(rng, 0, k - 1)); });
}

GatherCase random_gather_case(Rng& rng, const PeriodSet& pool, Symbol max_symbols, Coord max_area) {
    while (true) {
        PeriodicConfig x = random_periodic_config(rng, max_symbols, max_area);
        std::vector<PeriodVector> avoided;
        for (const auto& p : pool)
            if (!x.has_period(p)) avoided.push_back(p);
        if (avoided.empty()) continue;
        std::vector<PeriodVector> chosen;
        while (chosen.empty())
            for (const auto& p : avoided)
                if (draw(rng, 0, 1) == 1) chosen.push_back(p);
        return {std::move(x), PeriodSet(std::move(chosen))};
    }
}

RuleSet random_domino_rules(Rng& rng, Symbol max_symbols, std::size_t max_forbidden) {
    const auto k = static_cast<Symbol>(draw(rng, 1, std::max<Coord>(1, max_symbols)));
    const auto count = static_cast<std::size_t>(draw(rng, 0, static_cast<Coord>(max_forbidden)));
    std::set<std::tuple<int, Symbol, Symbol>> seen;
    std::vector<Pattern> forbidden;
    for (std::size_t i = 0; i < count; ++i) {
        const int vertical = static_cast<int>(draw(rng, 0, 1));
        const auto s = static_cast<Symbol>(draw(rng, 0, k - 1));
        const auto t = static_cast<Symbol>(draw(rng, 0, k - 1));
        if (!seen.emplace(vertical, s, t).second) continue;
        const Vec2 step = vertical ? Vec2{0, 1} : Vec2{1, 0};
        forbidden.emplace_back(std::vector<Pattern::Cell>{{{0, 0}, s}, {step, t}});
    }
    return RuleSet(numbered(k), std::move(forbidden));
}

RuleSet random_small_rules(Rng& rng, Symbol max_symbols, std::size_t max_forbidden) {
    const auto k = static_cast<Symbol>(draw(rng, 1, std::max<Coord>(1, max_symbols)));
    const auto count = static_cast<std::size_t>(draw(rng, 0, static_cast<Coord>(max_forbidden)));
    const Vec2 square[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    std::vector<Pattern> forbidden;
    for (std::size_t i = 0; i < count; ++i) {
        const auto size = static_cast<std::size_t>(draw(rng, 1, 3));
        std::vector<Pattern::Cell> cells;
        std::set<std::size_t> used;
        while (used.size() < size) used.insert(static_cast<std::size_t>(draw(rng, 0, 3)));
        for (auto u : used) cells.emplace_back(square[u], static_cast<Symbol>(draw(rng, 0, k - 1)));
        forbidden.emplace_back(std::move(cells));
    }
    return RuleSet(numbered(k), std::move(forbidden));
}

}  // namespace shiftlab
