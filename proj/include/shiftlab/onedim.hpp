#pragma once

// Slicing a period-p fiber into a one-dimensional SFT presented as a graph
// of bands, and the decision procedures that run on that graph.
//
// Geometry: p is normalized to (w, s) with w > 0. A period-p configuration
// is determined by its rows R_j = x(0..w-1, j), since
// x(r + k*w, j) = R_{j - k*s}[r]. A vertex is h consecutive rows (a band)
// in which no wrapped forbidden pattern occurs; edges shift the band up by
// one row. When p is vertical the roles of x and y are exchanged.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/sft.hpp"

namespace shiftlab {

struct TorusConfig {
    PeriodVector p;
    PeriodVector q;
    PeriodicConfig config;
};

class StripAutomaton {
public:
    using Row = std::vector<Symbol>;

    /// Original period and rule set.
    const PeriodVector& period() const { return period_; }
    const RuleSet& rules() const { return rules_; }
    /// True when slicing runs along columns (p vertical).
    bool transposed() const { return transposed_; }
    Coord width() const { return width_; }
    Coord shear() const { return shear_; }
    Coord band_height() const { return height_; }

    std::size_t vertex_count() const { return bands_.size(); }
    std::size_t edge_count() const;
    /// Rows of the band, bottom first, each of length width().
    std::vector<Row> band_rows(std::size_t v) const;
    Row bottom_row(std::size_t v) const;
    /// The row an edge into v emits: the top row of v.
    Row label(std::size_t v) const;
    const std::vector<std::size_t>& successors(std::size_t v) const { return succ_[v]; }
    std::optional<std::size_t> find_vertex(const std::vector<Row>& rows) const;

    /// Effective (sliced) coordinates of an original cell, and back.
    Vec2 to_effective(Vec2 z) const { return transposed_ ? Vec2{z.y, z.x} : z; }
    Vec2 from_effective(Vec2 z) const { return to_effective(z); }
    /// Original-coordinate step that moves one row up in the slicing.
    Vec2 row_step() const { return transposed_ ? Vec2{1, 0} : Vec2{0, 1}; }

private:
    friend StripAutomaton slice(const RuleSet&, const PeriodVector&, const SearchOptions&);
    StripAutomaton(RuleSet rules, PeriodVector period) : rules_(std::move(rules)), period_(period) {}

    RuleSet rules_;
    PeriodVector period_;
    bool transposed_ = false;
    Coord width_ = 1, shear_ = 0, height_ = 1;
    std::vector<std::vector<Symbol>> bands_;  // row-major, bottom row first
    std::vector<std::vector<std::size_t>> succ_;
};

/// Vertex cap for slicing; beyond it slice throws BudgetExceeded.
inline constexpr std::size_t slice_vertex_cap = 1u << 20;

StripAutomaton slice(const RuleSet& rules, const PeriodVector& p, const SearchOptions& options = {});

bool automaton_nonempty(const StripAutomaton& a);
/// First cycle found by depth-first search from the lowest vertex ids.
std::optional<std::vector<std::size_t>> find_cycle(const StripAutomaton& a);

/// Strongly connected components in a deterministic order; component id
/// per vertex.
std::vector<std::size_t> strong_components(const StripAutomaton& a, std::size_t* count = nullptr);
/// Vertices on some bi-infinite walk: reachable from a cycle and reaching one.
std::vector<bool> essential_vertices(const StripAutomaton& a);
/// Whether the automaton has only finitely many bi-infinite walks.
bool finitely_many_walks(const StripAutomaton& a);
/// One cycle per cyclic component (finite case: one per periodic orbit).
std::vector<std::vector<std::size_t>> component_cycles(const StripAutomaton& a);

/// The configuration with periods p and L row steps obtained by stacking
/// the bottom rows of the cycle.
TorusConfig unslice(const StripAutomaton& a, const std::vector<std::size_t>& cycle);

/// Rows j0 .. j0+count-1 of a period-p configuration in sliced coordinates.
std::vector<StripAutomaton::Row> project_rows(const StripAutomaton& a, const PeriodicConfig& x, Coord j0,
                                              Coord count);

/// First admissible torus with periods p and (0, h) (or (h, 0) for
/// vertical p), h = 1..hmax.
std::optional<TorusConfig> two_periodic_search(const RuleSet& rules, const PeriodVector& p, Coord hmax,
                                               const SearchOptions& options = {});

struct FiberCertificate {
    PeriodVector period;
    std::size_t vertices = 0;
    std::vector<std::size_t> cycle;  // a witness walk, proving X_p nonempty
    bool finite = false;
};

struct PeriodCover {
    PeriodSet periods;
    std::vector<FiberCertificate> fibers;  // aligned with periods
    std::size_t halting_step = 0;
    bool certified = false;
};

/// Whether w occurs in some point of the SFT, given a certified cover.
bool extension_decide(const RuleSet& rules, const PeriodCover& cover, const Pattern& w,
                      const SearchOptions& options = {});

/// Debug export: one line per vertex, "id<TAB>top row<TAB>succ,succ".
void write_adjacency(std::ostream& os, const StripAutomaton& a);

}  // namespace shiftlab
