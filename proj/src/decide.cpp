#include "shiftlab/decide.hpp"

#include <numeric>
#include <stdexcept>

namespace shiftlab {

PeriodSet semidecide_periods(std::size_t n) { return canonical_periods(n + 1); }

std::vector<PrefixRequirement> semidecide_prefixes(std::size_t n, BoundTable* table) {
    const PeriodSet all = semidecide_periods(n);
    std::vector<PrefixRequirement> out;
    for (std::size_t k = 0; k <= n; ++k) {
        PeriodSet prefix = all.prefix(k);
        const Coord g = g_bound(prefix, table);
        out.push_back({std::move(prefix), g});
    }
    return out;
}

Verdict aperiodic_semidecide(const RuleSet& rules, std::size_t nmax, const SearchOptions& options) {
    if (nmax < 1) throw PreconditionError("nmax must be at least 1");
    BoundTable table;
    AperiodicEvidence evidence;
    for (std::size_t n = 1; n <= nmax; ++n) {
        try {
            auto prefixes = semidecide_prefixes(n, &table);
            const Coord outer = prefixes.back().radius;
            auto witness = has_concentric_witness(rules, prefixes, options);
            if (!witness) {
                if (has_admissible(rules, outer, options)) return NoAperiodicPoint{n, std::move(prefixes)};
                for (Coord r = 0;; ++r)
                    if (!has_admissible(rules, r, options)) return EmptyShift{n, r};
            }
            evidence.n = n;
            evidence.prefixes.push_back(std::move(prefixes));
            evidence.witnesses.push_back(std::move(*witness));
        } catch (const BudgetExceeded& e) {
            return BudgetExhausted{n, e.stage, e.kind};
        } catch (const std::overflow_error&) {
            return BudgetExhausted{n, "bounds", "overflow"};
        }
    }
    return evidence;
}

std::optional<TorusConfig> periodic_search(const RuleSet& rules, Coord max_area, const SearchOptions& options) {
    try {
        for (Coord area = 1; area <= max_area; ++area)
            for (Coord a = 1; a <= area; ++a) {
                if (area % a != 0) continue;
                const Coord c = area / a;
                for (Coord b = 0; b < c; ++b) {
                    const Vec2 p{a, b}, q{0, c};
                    if (auto x = find_torus(rules, Lattice(p, q), options))
                        return TorusConfig{PeriodVector(p.x, p.y), PeriodVector(q.x, q.y), std::move(*x)};
                }
            }
    } catch (const BudgetExceeded&) {
    }
    return std::nullopt;
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Empty: return "Empty";
        case Classification::HasAperiodicEvidence: return "HasAperiodicEvidence";
        case Classification::AllPointsPeriodic: return "AllPointsPeriodic";
        case Classification::Unknown: return "Unknown";
    }
    return "Unknown";
}

bool same_config(const PeriodicConfig& x, const PeriodicConfig& y) {
    if (x.kind() != PeriodicConfig::Kind::Lattice || y.kind() != PeriodicConfig::Kind::Lattice)
        throw PreconditionError("same_config compares lattice-periodic configurations");
    // area * Z^2 lies in every lattice of that area.
    const Coord side = lcm(x.lattice().area(), y.lattice().area());
    for (Coord j = 0; j < side; ++j)
        for (Coord i = 0; i < side; ++i)
            if (x.at({i, j}) != y.at({i, j})) return false;
    return true;
}

namespace {

struct Fiber {
    PeriodVector p;
    StripAutomaton automaton;
    std::vector<std::size_t> cycle;
    bool finite;
};

void build_cover(const RuleSet& rules, std::size_t n, const SearchOptions& options, ClassifyResult& out) {
    std::vector<Fiber> fibers;
    for (const auto& p : lcm_reduce(semidecide_periods(n))) {
        StripAutomaton a = slice(rules, p, options);
        auto cycle = find_cycle(a);
        if (!cycle) continue;
        const bool finite = finitely_many_walks(a);
        fibers.push_back({p, std::move(a), std::move(*cycle), finite});
    }

    // Drop a finite fiber when each of its points has another kept period.
    std::vector<bool> kept(fibers.size(), true);
    for (std::size_t i = fibers.size(); i-- > 0;) {
        if (!fibers[i].finite) continue;
        bool covered = true;
        for (const auto& cycle : component_cycles(fibers[i].automaton)) {
            const PeriodicConfig x = unslice(fibers[i].automaton, cycle).config;
            bool other = false;
            for (std::size_t j = 0; j < fibers.size() && !other; ++j)
                other = j != i && kept[j] && x.has_period(fibers[j].p);
            if (!other) {
                covered = false;
                break;
            }
        }
        if (covered) kept[i] = false;
    }

    PeriodCover cover;
    std::vector<PeriodVector> periods;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (!kept[i]) continue;
        periods.push_back(fibers[i].p);
        cover.fibers.push_back(
            {fibers[i].p, fibers[i].automaton.vertex_count(), fibers[i].cycle, fibers[i].finite});
        out.presentation.push_back(fibers[i].automaton);
    }
    cover.periods = PeriodSet(std::move(periods));
    cover.halting_step = n;
    cover.certified = true;
    out.cover = std::move(cover);

    for (std::size_t i = 0; i < fibers.size(); ++i)
        for (std::size_t j = i + 1; j < fibers.size(); ++j)
            for (auto& x : enumerate_tori(rules, Lattice(fibers[i].p.vec(), fibers[j].p.vec()), options)) {
                bool seen = false;
                for (const auto& y : out.overlaps) seen = seen || same_config(x, y);
                if (!seen) out.overlaps.push_back(std::move(x));
            }
}

}  // namespace

ClassifyResult classify(const RuleSet& rules, const ClassifyOptions& options) {
    ClassifyResult out;
    out.verdict = aperiodic_semidecide(rules, options.nmax, options.search);
    out.periodic = periodic_search(rules, options.max_area, options.search);
    if (std::holds_alternative<EmptyShift>(out.verdict)) {
        out.kind = Classification::Empty;
    } else if (std::holds_alternative<AperiodicEvidence>(out.verdict)) {
        out.kind = Classification::HasAperiodicEvidence;
    } else if (const auto* b = std::get_if<BudgetExhausted>(&out.verdict)) {
        out.kind = Classification::Unknown;
        out.note = "budget exhausted at n=" + std::to_string(b->n) + " in " + b->stage + " (" + b->kind + ")";
    } else {
        const auto& halt = std::get<NoAperiodicPoint>(out.verdict);
        try {
            build_cover(rules, halt.n, options.search, out);
            out.kind = Classification::AllPointsPeriodic;
        } catch (const BudgetExceeded& e) {
            out.kind = Classification::Unknown;
            out.cover.reset();
            out.presentation.clear();
            out.overlaps.clear();
            out.note = std::string("cover certification: ") + e.what();
        }
    }
    return out;
}

}  // namespace shiftlab
