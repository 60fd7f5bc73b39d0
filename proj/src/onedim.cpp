#include "shiftlab/onedim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>

namespace shiftlab {

namespace {

struct WrappedCell {
    Coord row, col;
    Symbol s;
};

// Cells of p anchored at column a, folded into columns [0, w).
std::vector<WrappedCell> wrap(const Pattern& p, Coord a, Coord w, Coord s) {
    std::vector<WrappedCell> out;
    for (const auto& [d, sym] : p.cells()) {
        const Coord x = a + d.x;
        const Coord k = floor_div(x, w);
        out.push_back({d.y - k * s, x - k * w, sym});
    }
    return out;
}

std::pair<Coord, Coord> row_range(const std::vector<WrappedCell>& cells) {
    Coord lo = cells.front().row, hi = lo;
    for (const auto& c : cells) {
        lo = std::min(lo, c.row);
        hi = std::max(hi, c.row);
    }
    return {lo, hi};
}

}  // namespace

std::size_t StripAutomaton::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.size();
    return n;
}

std::vector<StripAutomaton::Row> StripAutomaton::band_rows(std::size_t v) const {
    std::vector<Row> rows;
    const auto w = static_cast<std::size_t>(width_);
    for (Coord r = 0; r < height_; ++r) {
        auto first = bands_[v].begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * w);
        rows.emplace_back(first, first + static_cast<std::ptrdiff_t>(w));
    }
    return rows;
}

StripAutomaton::Row StripAutomaton::bottom_row(std::size_t v) const { return band_rows(v).front(); }

StripAutomaton::Row StripAutomaton::label(std::size_t v) const { return band_rows(v).back(); }

std::optional<std::size_t> StripAutomaton::find_vertex(const std::vector<Row>& rows) const {
    std::vector<Symbol> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    auto it = std::lower_bound(bands_.begin(), bands_.end(), flat);
    if (it == bands_.end() || *it != flat) return std::nullopt;
    return static_cast<std::size_t>(it - bands_.begin());
}

StripAutomaton slice(const RuleSet& rules, const PeriodVector& p, const SearchOptions& options) {
    StripAutomaton a(rules, p);
    const RuleSet eff = p.dx() == 0 ? rules.transposed() : rules;
    if (p.dx() == 0) {
        a.transposed_ = true;
        a.width_ = p.dy() < 0 ? -p.dy() : p.dy();
        a.shear_ = 0;
    } else {
        const PeriodVector q = p.dx() < 0 ? -p : p;
        a.width_ = q.dx();
        a.shear_ = q.dy();
    }
    const Coord w = a.width_, s = a.shear_;

    std::vector<std::vector<WrappedCell>> wrapped;
    for (const auto& pat : eff.normalized())
        for (Coord col = 0; col < w; ++col) {
            wrapped.push_back(wrap(pat, col, w, s));
            const auto [lo, hi] = row_range(wrapped.back());
            a.height_ = std::max(a.height_, hi - lo + 1);
        }
    const Coord h = a.height_;
    if (checked_mul(w, h) > options.radius_cap * options.radius_cap)
        throw BudgetExceeded("slice", "band size");

    ConstraintSearch search(static_cast<std::size_t>(w * h), eff.alphabet_size());
    for (const auto& cells : wrapped) {
        const auto [lo, hi] = row_range(cells);
        for (Coord base = 0; base + (hi - lo) < h; ++base) {
            std::vector<std::pair<std::size_t, Symbol>> req;
            for (const auto& c : cells)
                req.emplace_back(static_cast<std::size_t>((c.row - lo + base) * w + c.col), c.s);
            search.forbid(std::move(req));
        }
    }
    search.run(
        [&a](ConstraintSearch::Assignment band) {
            if (a.bands_.size() >= slice_vertex_cap) throw BudgetExceeded("slice", "vertices");
            a.bands_.emplace_back(band.begin(), band.end());
            return true;
        },
        options.node_budget, "slice");

    // Edge u -> v when the top h-1 rows of u are the bottom h-1 rows of v.
    const auto overlap = static_cast<std::ptrdiff_t>((h - 1) * w);
    std::map<std::vector<Symbol>, std::vector<std::size_t>> by_bottom;
    for (std::size_t v = 0; v < a.bands_.size(); ++v)
        by_bottom[{a.bands_[v].begin(), a.bands_[v].begin() + overlap}].push_back(v);
    a.succ_.resize(a.bands_.size());
    for (std::size_t u = 0; u < a.bands_.size(); ++u) {
        auto it = by_bottom.find({a.bands_[u].end() - overlap, a.bands_[u].end()});
        if (it != by_bottom.end()) a.succ_[u] = it->second;
    }
    return a;
}

std::optional<std::vector<std::size_t>> find_cycle(const StripAutomaton& a) {
    const std::size_t n = a.vertex_count();
    enum : char { White, Gray, Black };
    std::vector<char> color(n, White);
    for (std::size_t start = 0; start < n; ++start) {
        if (color[start] != White) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
        color[start] = Gray;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i == a.successors(v).size()) {
                color[v] = Black;
                stack.pop_back();
                continue;
            }
            const std::size_t t = a.successors(v)[i++];
            if (color[t] == Gray) {
                std::vector<std::size_t> cycle;
                auto it = std::find_if(stack.begin(), stack.end(), [t](const auto& e) { return e.first == t; });
                for (; it != stack.end(); ++it) cycle.push_back(it->first);
                return cycle;
            }
            if (color[t] == White) {
                color[t] = Gray;
                stack.emplace_back(t, 0);
            }
        }
    }
    return std::nullopt;
}

bool automaton_nonempty(const StripAutomaton& a) { return find_cycle(a).has_value(); }

std::vector<std::size_t> strong_components(const StripAutomaton& a, std::size_t* count) {
    // Iterative Tarjan.
    const std::size_t n = a.vertex_count();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset), stack;
    std::vector<bool> on_stack(n, false);
    std::size_t next_index = 0, next_comp = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < a.successors(v).size()) {
                const std::size_t t = a.successors(v)[i++];
                if (index[t] == unset) {
                    index[t] = low[t] = next_index++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    call.emplace_back(t, 0);
                } else if (on_stack[t]) {
                    low[v] = std::min(low[v], index[t]);
                }
                continue;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::size_t t;
                do {
                    t = stack.back();
                    stack.pop_back();
                    on_stack[t] = false;
                    comp[t] = next_comp;
                } while (t != done);
                ++next_comp;
            }
        }
    }
    if (count) *count = next_comp;
    return comp;
}

namespace {

std::vector<bool> cyclic_vertices(const StripAutomaton& a, const std::vector<std::size_t>& comp,
                                  std::size_t count) {
    std::vector<std::size_t> size(count, 0);
    for (auto c : comp) ++size[c];
    std::vector<bool> out(a.vertex_count(), false);
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        const auto& s = a.successors(v);
        out[v] = size[comp[v]] > 1 || std::find(s.begin(), s.end(), v) != s.end();
    }
    return out;
}

std::vector<bool> reach(const std::vector<std::vector<std::size_t>>& adj, const std::vector<bool>& from) {
    std::vector<bool> seen = from;
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < from.size(); ++v)
        if (from[v]) queue.push_back(v);
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (auto t : adj[v])
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
    }
    return seen;
}

}  // namespace

std::vector<bool> essential_vertices(const StripAutomaton& a) {
    std::size_t count = 0;
    const auto comp = strong_components(a, &count);
    const auto cyclic = cyclic_vertices(a, comp, count);
    std::vector<std::vector<std::size_t>> fwd(a.vertex_count()), back(a.vertex_count());
    for (std::size_t v = 0; v < a.vertex_count(); ++v)
        for (auto t : a.successors(v)) {
            fwd[v].push_back(t);
            back[t].push_back(v);
        }
    const auto from_cycle = reach(fwd, cyclic);
    const auto to_cycle = reach(back, cyclic);
    std::vector<bool> out(a.vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = from_cycle[v] && to_cycle[v];
    return out;
}

bool finitely_many_walks(const StripAutomaton& a) {
    std::size_t count = 0;
    const auto comp = strong_components(a, &count);
    const auto cyclic = cyclic_vertices(a, comp, count);
    const auto ess = essential_vertices(a);
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        if (!ess[v]) continue;
        if (!cyclic[v]) return false;
        std::size_t out = 0;
        for (auto t : a.successors(v)) out += ess[t] ? 1 : 0;
        if (out != 1) return false;
    }
    return true;
}

std::vector<std::vector<std::size_t>> component_cycles(const StripAutomaton& a) {
    std::size_t count = 0;
    const auto comp = strong_components(a, &count);
    const auto cyclic = cyclic_vertices(a, comp, count);
    std::vector<bool> done(count, false);
    std::vector<std::vector<std::size_t>> out;
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        if (!cyclic[v] || done[comp[v]]) continue;
        done[comp[v]] = true;
        // Shortest cycle through v inside its component.
        std::vector<std::size_t> parent(a.vertex_count(), unset);
        std::deque<std::size_t> queue{v};
        std::size_t last = unset;
        while (!queue.empty() && last == unset) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (auto t : a.successors(u)) {
                if (comp[t] != comp[v]) continue;
                if (t == v) {
                    last = u;
                    break;
                }
                if (parent[t] == unset) {
                    parent[t] = u;
                    queue.push_back(t);
                }
            }
        }
        std::vector<std::size_t> cycle;
        for (std::size_t u = last; u != v; u = parent[u]) cycle.push_back(u);
        cycle.push_back(v);
        std::reverse(cycle.begin(), cycle.end());
        out.push_back(std::move(cycle));
    }
    return out;
}

TorusConfig unslice(const StripAutomaton& a, const std::vector<std::size_t>& cycle) {
    if (cycle.empty()) throw PreconditionError("empty cycle");
    const auto n = cycle.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (cycle[k] >= a.vertex_count()) throw PreconditionError("cycle vertex out of range");
        const auto& s = a.successors(cycle[k]);
        if (std::find(s.begin(), s.end(), cycle[(k + 1) % n]) == s.end())
            throw PreconditionError("vertex sequence is not a cycle of the automaton");
    }
    std::vector<StripAutomaton::Row> rows;
    for (auto v : cycle) rows.push_back(a.bottom_row(v));
    const Coord w = a.width(), s = a.shear(), len = static_cast<Coord>(n);
    auto eff = [&](Vec2 z) {
        const Coord k = floor_div(z.x, w);
        return rows[static_cast<std::size_t>(floor_mod(z.y - k * s, len))][static_cast<std::size_t>(z.x - k * w)];
    };
    const Vec2 q = a.from_effective({0, len});
    auto config =
        PeriodicConfig::periodic(a.period().vec(), q, [&](Vec2 z) { return eff(a.to_effective(z)); });
    if (!is_admissible(a.rules(), config)) throw InternalError("unsliced configuration is not admissible");
    return {a.period(), PeriodVector(q.x, q.y), std::move(config)};
}

std::vector<StripAutomaton::Row> project_rows(const StripAutomaton& a, const PeriodicConfig& x, Coord j0,
                                              Coord count) {
    std::vector<StripAutomaton::Row> out;
    for (Coord j = j0; j < j0 + count; ++j) {
        StripAutomaton::Row row;
        for (Coord r = 0; r < a.width(); ++r) row.push_back(x.at(a.from_effective({r, j})));
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<TorusConfig> two_periodic_search(const RuleSet& rules, const PeriodVector& p, Coord hmax,
                                               const SearchOptions& options) {
    if (hmax < 1) throw PreconditionError("hmax must be positive");
    for (Coord h = 1; h <= hmax; ++h) {
        const Vec2 q = p.dx() == 0 ? Vec2{h, 0} : Vec2{0, h};
        if (auto x = find_torus(rules, Lattice(p.vec(), q), options))
            return TorusConfig{p, PeriodVector(q.x, q.y), std::move(*x)};
    }
    return std::nullopt;
}

namespace {

// Whether w occurs in some bi-infinite walk of a.
bool occurs_in_fiber(const StripAutomaton& a, const Pattern& w) {
    const auto essential = essential_vertices(a);
    const Coord width = a.width(), s = a.shear(), h = a.band_height();
    std::vector<std::pair<Vec2, Symbol>> cells;
    Coord min_x = 0;
    bool first = true;
    for (const auto& [z, sym] : w.cells()) {
        const Vec2 e = a.to_effective(z);
        cells.emplace_back(e, sym);
        min_x = first ? e.x : std::min(min_x, e.x);
        first = false;
    }
    for (Coord t = 0; t < width; ++t) {
        std::map<std::pair<Coord, Coord>, Symbol> req;
        bool consistent = true;
        for (const auto& [e, sym] : cells) {
            const Coord x = e.x - min_x + t;
            const Coord k = floor_div(x, width);
            auto [it, inserted] = req.emplace(std::make_pair(e.y - k * s, x - k * width), sym);
            if (!inserted && it->second != sym) consistent = false;
        }
        if (!consistent) continue;
        Coord lo = req.begin()->first.first, hi = lo;
        for (const auto& [rc, sym] : req) {
            lo = std::min(lo, rc.first);
            hi = std::max(hi, rc.first);
        }
        const Coord layers = std::max<Coord>(1, hi - lo + 1 - h + 1);
        auto matches = [&](std::size_t v, Coord layer) {
            const auto rows = a.band_rows(v);
            for (const auto& [rc, sym] : req) {
                const Coord r = rc.first - lo - layer;
                if (r >= 0 && r < h && rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(rc.second)] != sym)
                    return false;
            }
            return true;
        };
        std::vector<bool> current(a.vertex_count(), false);
        for (std::size_t v = 0; v < a.vertex_count(); ++v) current[v] = essential[v] && matches(v, 0);
        for (Coord layer = 1; layer < layers; ++layer) {
            std::vector<bool> next(a.vertex_count(), false);
            for (std::size_t v = 0; v < a.vertex_count(); ++v)
                if (current[v])
                    for (auto u : a.successors(v))
                        if (!next[u] && essential[u] && matches(u, layer)) next[u] = true;
            current = std::move(next);
        }
        if (std::find(current.begin(), current.end(), true) != current.end()) return true;
    }
    return false;
}

}  // namespace

bool extension_decide(const RuleSet& rules, const PeriodCover& cover, const Pattern& w,
                      const SearchOptions& options) {
    if (!cover.certified) throw PreconditionError("extension_decide needs a certified period cover");
    for (const auto& [z, s] : w.cells())
        if (s >= rules.alphabet_size()) return false;
    for (const auto& p : cover.periods) {
        const StripAutomaton a = slice(rules, p, options);
        if (w.empty() ? automaton_nonempty(a) : occurs_in_fiber(a, w)) return true;
    }
    return false;
}

void write_adjacency(std::ostream& os, const StripAutomaton& a) {
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        os << v << '\t';
        const auto row = a.label(v);
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << a.rules().alphabet()[row[i]];
        os << '\t';
        const auto& s = a.successors(v);
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
        os << '\n';
    }
}

}  // namespace shiftlab
