#include "shiftlab/sft.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace shiftlab {

std::string to_string(Count c) {
    if (c == 0) return "0";
    std::string s;
    while (c > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
        c /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

RuleSet::RuleSet(std::vector<std::string> alphabet, std::vector<Pattern> forbidden)
    : alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
    if (alphabet_.empty()) throw PreconditionError("alphabet must be nonempty");
    std::set<std::string> seen;
    for (const auto& a : alphabet_)
        if (!seen.insert(a).second) throw PreconditionError("duplicate alphabet symbol '" + a + "'");
    for (const auto& p : forbidden_) {
        if (p.empty()) throw PreconditionError("forbidden patterns must be nonempty");
        for (const auto& [z, s] : p.cells())
            if (s >= alphabet_.size()) throw PreconditionError("forbidden pattern uses a symbol outside the alphabet");
        normalized_.push_back(p.normalized());
    }
}

Coord RuleSet::interaction_radius() const {
    Coord r = 0;
    for (const auto& p : normalized_) r = std::max(r, norm(p.bounds().second));
    return r;
}

RuleSet RuleSet::transposed() const {
    std::vector<Pattern> out;
    for (const auto& p : forbidden_) {
        std::vector<Pattern::Cell> cells;
        for (const auto& [z, s] : p.cells()) cells.emplace_back(Vec2{z.y, z.x}, s);
        out.emplace_back(std::move(cells));
    }
    return RuleSet(alphabet_, std::move(out));
}

RuleSet compile_wang(const WangTileSet& tiles) {
    if (tiles.tiles.empty()) throw PreconditionError("Wang tile set must be nonempty");
    std::vector<std::string> alphabet;
    for (std::size_t i = 0; i < tiles.tiles.size(); ++i) alphabet.push_back(std::to_string(i));
    std::vector<Pattern> forbidden;
    const auto n = static_cast<Symbol>(tiles.tiles.size());
    for (Symbol t = 0; t < n; ++t)
        for (Symbol u = 0; u < n; ++u)
            if (tiles.tiles[t].east != tiles.tiles[u].west)
                forbidden.emplace_back(std::vector<Pattern::Cell>{{{0, 0}, t}, {{1, 0}, u}});
    for (Symbol t = 0; t < n; ++t)
        for (Symbol u = 0; u < n; ++u)
            if (tiles.tiles[t].north != tiles.tiles[u].south)
                forbidden.emplace_back(std::vector<Pattern::Cell>{{{0, 0}, t}, {{0, 1}, u}});
    return RuleSet(std::move(alphabet), std::move(forbidden));
}

ConstraintSearch::ConstraintSearch(std::size_t cells, Symbol alphabet_size)
    : domains_(cells), forbidden_at_(cells), checks_at_(cells) {
    std::vector<Symbol> all(alphabet_size);
    for (Symbol s = 0; s < alphabet_size; ++s) all[s] = s;
    std::fill(domains_.begin(), domains_.end(), all);
}

void ConstraintSearch::forbid(std::vector<std::pair<std::size_t, Symbol>> cells) {
    if (cells.empty()) throw PreconditionError("empty forbidden requirement");
    std::sort(cells.begin(), cells.end());
    std::vector<std::pair<std::size_t, Symbol>> merged;
    for (const auto& c : cells) {
        if (c.first >= domains_.size()) throw PreconditionError("requirement cell out of range");
        if (!merged.empty() && merged.back().first == c.first) {
            if (merged.back().second != c.second) return;  // can never match
            continue;
        }
        merged.push_back(c);
    }
    const std::size_t last = merged.back().first;
    forbidden_at_[last].push_back({std::move(merged)});
}

void ConstraintSearch::add_checkpoint(std::size_t index, Check ok) {
    if (index >= checks_at_.size()) throw PreconditionError("checkpoint index out of range");
    checks_at_[index].push_back(std::move(ok));
}

void ConstraintSearch::fix(std::size_t index, Symbol s) {
    if (index >= domains_.size()) throw PreconditionError("fixed cell out of range");
    domains_[index] = {s};
}

ConstraintSearch::Outcome ConstraintSearch::run(const Visitor& visit, std::uint64_t budget,
                                                const std::string& stage) const {
    Outcome out;
    const std::size_t n = domains_.size();
    std::vector<Symbol> assign(n);
    if (n == 0) {
        out.stopped = !visit(assign);
        return out;
    }
    auto consistent = [&](std::size_t i) {
        for (const auto& req : forbidden_at_[i]) {
            bool all = true;
            for (const auto& [cell, s] : req.cells)
                if (assign[cell] != s) {
                    all = false;
                    break;
                }
            if (all) return false;
        }
        for (const auto& check : checks_at_[i])
            if (!check(std::span<const Symbol>(assign.data(), n))) return false;
        return true;
    };
    std::vector<std::size_t> pos(n, 0);
    std::size_t i = 0;
    while (true) {
        if (pos[i] < domains_[i].size()) {
            assign[i] = domains_[i][pos[i]++];
            if (++out.nodes > budget) throw BudgetExceeded(stage, "nodes");
            if (!consistent(i)) continue;
            if (i + 1 == n) {
                if (!visit(assign)) {
                    out.stopped = true;
                    return out;
                }
                continue;
            }
            pos[++i] = 0;
        } else {
            if (i == 0) break;
            --i;
        }
    }
    return out;
}

std::optional<std::vector<Symbol>> ConstraintSearch::first_solution(std::uint64_t budget, unsigned jobs,
                                                                    const std::string& stage) const {
    auto search_one = [&](const ConstraintSearch& s, std::uint64_t& nodes, bool& exceeded) {
        std::optional<std::vector<Symbol>> found;
        try {
            nodes = s.run(
                         [&found](Assignment a) {
                             found.emplace(a.begin(), a.end());
                             return false;
                         },
                         budget, stage)
                        .nodes;
        } catch (const BudgetExceeded&) {
            exceeded = true;
        }
        return found;
    };
    if (domains_.empty()) {
        std::uint64_t nodes = 0;
        bool exceeded = false;
        return search_one(*this, nodes, exceeded);
    }

    // Subtrees of cell 0, searched independently and merged in order; the
    // merge reproduces the cumulative node count of a sequential search.
    const auto& first = domains_.front();
    struct Part {
        std::optional<std::vector<Symbol>> found;
        std::uint64_t nodes = 0;
        bool exceeded = false;
    };
    std::vector<Part> parts(first.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < parts.size();) {
            ConstraintSearch sub = *this;
            sub.fix(0, first[k]);
            parts[k].found = search_one(sub, parts[k].nodes, parts[k].exceeded);
        }
    };
    const unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(parts.size())));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::uint64_t total = 0;
    for (auto& part : parts) {
        if (part.exceeded || total + part.nodes > budget) throw BudgetExceeded(stage, "nodes");
        if (part.found) return std::move(part.found);
        total += part.nodes;
    }
    return std::nullopt;
}

void forbid_in_rectangle(ConstraintSearch& search, const RuleSet& rules, Vec2 lo, Vec2 hi) {
    const Coord width = hi.x - lo.x + 1;
    for (const auto& p : rules.normalized()) {
        const Vec2 ext = p.bounds().second;
        for (Coord y = lo.y; y + ext.y <= hi.y; ++y)
            for (Coord x = lo.x; x + ext.x <= hi.x; ++x) {
                std::vector<std::pair<std::size_t, Symbol>> req;
                for (const auto& [d, s] : p.cells())
                    req.emplace_back(static_cast<std::size_t>((y + d.y - lo.y) * width + (x + d.x - lo.x)), s);
                search.forbid(std::move(req));
            }
    }
}

void forbid_on_torus(ConstraintSearch& search, const RuleSet& rules, const Lattice& lattice) {
    const auto domain = lattice.domain();
    for (const auto& p : rules.normalized())
        for (Vec2 anchor : domain) {
            std::vector<std::pair<std::size_t, Symbol>> req;
            for (const auto& [d, s] : p.cells()) req.emplace_back(lattice.index(anchor + d), s);
            search.forbid(std::move(req));
        }
}

namespace {

ConstraintSearch ball_search(const RuleSet& rules, Coord radius, const SearchOptions& options,
                             const std::string& stage) {
    if (radius < 0) throw PreconditionError("ball radius must be nonnegative");
    if (radius > options.radius_cap) throw BudgetExceeded(stage, "radius");
    const auto side = static_cast<std::size_t>(2 * radius + 1);
    ConstraintSearch search(side * side, rules.alphabet_size());
    forbid_in_rectangle(search, rules, {-radius, -radius}, {radius, radius});
    return search;
}

Pattern ball_pattern(Coord radius, std::span<const Symbol> a) {
    std::vector<Pattern::Cell> cells;
    cells.reserve(a.size());
    std::size_t k = 0;
    for (Vec2 z : Ball{{0, 0}, radius}.cells()) cells.emplace_back(z, a[k++]);
    return Pattern(std::move(cells));
}

std::size_t ball_index(Coord radius, Vec2 z) {
    return static_cast<std::size_t>((z.y + radius) * (2 * radius + 1) + (z.x + radius));
}

// First avoidance (row-major base) of p with both endpoints in B(0, r).
std::optional<Avoidance> first_inner_avoidance(Coord outer, Coord r, const PeriodVector& p,
                                               std::span<const Symbol> a) {
    const Ball inner{{0, 0}, r};
    for (Coord y = -r; y <= r; ++y)
        for (Coord x = -r; x <= r; ++x) {
            const Vec2 z{x, y}, w = z + p.vec();
            if (inner.contains(w) && a[ball_index(outer, z)] != a[ball_index(outer, w)]) return Avoidance{z, p};
        }
    return std::nullopt;
}

}  // namespace

void enumerate_admissible(const RuleSet& rules, Coord radius,
                          const std::function<bool(const AdmissiblePattern&)>& visit, const SearchOptions& options) {
    const ConstraintSearch search = ball_search(rules, radius, options, "enumerate_admissible");
    search.run([&](ConstraintSearch::Assignment a) { return visit({radius, ball_pattern(radius, a)}); },
               options.node_budget, "enumerate_admissible");
}

bool has_admissible(const RuleSet& rules, Coord radius, const SearchOptions& options) {
    const ConstraintSearch search = ball_search(rules, radius, options, "admissible check");
    return search.first_solution(options.node_budget, options.jobs, "admissible check").has_value();
}

std::optional<ConcentricWitness> has_concentric_witness(const RuleSet& rules,
                                                        std::span<const PrefixRequirement> prefixes,
                                                        const SearchOptions& options) {
    if (prefixes.empty()) throw PreconditionError("no prefix requirements");
    for (std::size_t k = 1; k < prefixes.size(); ++k)
        if (prefixes[k].radius < prefixes[k - 1].radius) throw PreconditionError("prefix radii must ascend");
    const Coord outer = prefixes.back().radius;
    ConstraintSearch search = ball_search(rules, outer, options, "witness search");
    for (const auto& req : prefixes) {
        const Coord r = req.radius;
        const PeriodSet periods = req.periods;
        search.add_checkpoint(ball_index(outer, {r, r}), [outer, r, periods](ConstraintSearch::Assignment a) {
            for (const auto& p : periods)
                if (!first_inner_avoidance(outer, r, p, a)) return false;
            return true;
        });
    }
    const auto found = search.first_solution(options.node_budget, options.jobs, "witness search");
    if (!found) return std::nullopt;
    ConcentricWitness w{{outer, ball_pattern(outer, *found)}, {}};
    for (const auto& req : prefixes) {
        AvoidanceMap m;
        for (const auto& p : req.periods) m.emplace(p, *first_inner_avoidance(outer, req.radius, p, *found));
        w.avoidances.push_back(std::move(m));
    }
    return w;
}

bool verify_witness(const RuleSet& rules, std::span<const PrefixRequirement> prefixes,
                    const ConcentricWitness& witness) {
    const Pattern& pat = witness.pattern.pattern;
    const Ball outer{{0, 0}, witness.pattern.radius};
    if (pat.size() != static_cast<std::size_t>(outer.cell_count())) return false;
    for (const auto& [z, s] : pat.cells())
        if (!outer.contains(z) || s >= rules.alphabet_size()) return false;
    if (!is_locally_admissible(rules, pat)) return false;
    if (witness.avoidances.size() != prefixes.size()) return false;
    for (std::size_t k = 0; k < prefixes.size(); ++k) {
        const Ball inner{{0, 0}, prefixes[k].radius};
        if (!outer.contains(inner)) return false;
        for (const auto& p : prefixes[k].periods) {
            auto it = witness.avoidances[k].find(p);
            if (it == witness.avoidances[k].end()) return false;
            const Avoidance& a = it->second;
            if (!inner.contains_pair(a) || pat.at(a.z) == pat.at(a.end())) return false;
        }
    }
    return true;
}

Count count_admissible_square(const RuleSet& rules, Coord n, const SearchOptions& options) {
    if (n < 1) throw PreconditionError("square side must be positive");
    if (n > options.radius_cap) throw BudgetExceeded("count_admissible_square", "radius");
    Coord height = 1;
    for (const auto& p : rules.normalized()) {
        const Vec2 ext = p.bounds().second;
        if (ext.x < n && ext.y < n) height = std::max(height, ext.y + 1);
    }
    const auto width = static_cast<std::size_t>(n);
    const auto keep = static_cast<std::size_t>(height - 1);  // rows carried in the state

    std::map<std::vector<Symbol>, Count> states{{{}, 1}};
    std::uint64_t nodes = 0;
    for (Coord row = 0; row < n; ++row) {
        std::map<std::vector<Symbol>, Count> next;
        for (const auto& [state, count] : states) {
            const std::size_t prev_rows = state.size() / width;
            ConstraintSearch search((prev_rows + 1) * width, rules.alphabet_size());
            for (std::size_t i = 0; i < state.size(); ++i) search.fix(i, state[i]);
            forbid_in_rectangle(search, rules, {0, 0}, {n - 1, static_cast<Coord>(prev_rows)});
            const auto outcome = search.run(
                [&](ConstraintSearch::Assignment a) {
                    const std::size_t rows = prev_rows + 1;
                    const std::size_t drop = rows > keep ? rows - keep : 0;
                    std::vector<Symbol> key(a.begin() + static_cast<std::ptrdiff_t>(drop * width), a.end());
                    Count& slot = next[std::move(key)];
                    if (slot + count < slot) throw std::overflow_error("pattern count overflow");
                    slot += count;
                    return true;
                },
                options.node_budget - nodes, "count_admissible_square");
            nodes += outcome.nodes;
        }
        if (next.size() > options.node_budget) throw BudgetExceeded("count_admissible_square", "states");
        states = std::move(next);
    }
    Count total = 0;
    for (const auto& [state, count] : states) {
        if (total + count < total) throw std::overflow_error("pattern count overflow");
        total += count;
    }
    return total;
}

bool is_locally_admissible(const RuleSet& rules, const Pattern& pattern) {
    for (const auto& p : rules.normalized()) {
        const Vec2 first = p.cells().front().first;
        for (const auto& [z, s] : pattern.cells()) {
            if (s != p.cells().front().second) continue;
            const Vec2 anchor = z - first;
            bool match = true;
            for (const auto& [d, t] : p.cells()) {
                const auto have = pattern.at(anchor + d);
                if (!have || *have != t) {
                    match = false;
                    break;
                }
            }
            if (match) return false;
        }
    }
    return true;
}

bool is_admissible(const RuleSet& rules, const PeriodicConfig& x) {
    auto matches = [&x](const Pattern& p, Vec2 anchor) {
        for (const auto& [d, s] : p.cells())
            if (x.at(anchor + d) != s) return false;
        return true;
    };
    for (const auto& p : rules.normalized()) {
        if (x.kind() == PeriodicConfig::Kind::Lattice) {
            for (Vec2 anchor : x.lattice().domain())
                if (matches(p, anchor)) return false;
        } else {
            if (matches(p, {1 << 30, 1 << 30}) &&
                std::all_of(p.cells().begin(), p.cells().end(),
                            [&x](const auto& c) { return c.second == x.background(); }))
                return false;
            for (Vec2 z : x.domain_cells())
                for (const auto& [d, s] : p.cells())
                    if (matches(p, z - d)) return false;
        }
    }
    return true;
}

std::optional<PeriodicConfig> find_torus(const RuleSet& rules, const Lattice& lattice, const SearchOptions& options) {
    ConstraintSearch search(static_cast<std::size_t>(lattice.area()), rules.alphabet_size());
    forbid_on_torus(search, rules, lattice);
    auto found = search.first_solution(options.node_budget, options.jobs, "torus search");
    if (!found) return std::nullopt;
    return PeriodicConfig::periodic(lattice, std::move(*found));
}

std::vector<PeriodicConfig> enumerate_tori(const RuleSet& rules, const Lattice& lattice,
                                           const SearchOptions& options) {
    ConstraintSearch search(static_cast<std::size_t>(lattice.area()), rules.alphabet_size());
    forbid_on_torus(search, rules, lattice);
    std::vector<PeriodicConfig> out;
    search.run(
        [&](ConstraintSearch::Assignment a) {
            out.push_back(PeriodicConfig::periodic(lattice, std::vector<Symbol>(a.begin(), a.end())));
            return true;
        },
        options.node_budget, "torus enumeration");
    return out;
}

}  // namespace shiftlab
