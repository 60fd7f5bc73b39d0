#pragma once

// SFT presentations and bounded searches over locally admissible patterns.
//
// "Locally admissible" means: no forbidden pattern occurs fully inside the
// searched shape. Such a pattern need not extend to a configuration.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/engine.hpp"

namespace shiftlab {

__extension__ using Count = unsigned __int128;
std::string to_string(Count c);

struct SearchOptions {
    std::uint64_t node_budget = 100'000'000;
    Coord radius_cap = 64;
    unsigned jobs = 1;
};

class RuleSet {
public:
    RuleSet(std::vector<std::string> alphabet, std::vector<Pattern> forbidden);

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    Symbol alphabet_size() const { return static_cast<Symbol>(alphabet_.size()); }
    /// Forbidden patterns as declared.
    const std::vector<Pattern>& forbidden() const { return forbidden_; }
    /// Forbidden patterns translated to a (0, 0) bounding-box corner.
    const std::vector<Pattern>& normalized() const { return normalized_; }
    /// Max L-infinity diameter of a forbidden shape (0 when none).
    Coord interaction_radius() const;
    /// Swap the roles of x and y in every forbidden pattern.
    RuleSet transposed() const;

private:
    std::vector<std::string> alphabet_;
    std::vector<Pattern> forbidden_;
    std::vector<Pattern> normalized_;
};

struct WangTile {
    std::string north, east, south, west;
};

struct WangTileSet {
    std::vector<WangTile> tiles;
};

/// Tiles become symbols "0".."t-1"; every mismatched horizontal or vertical
/// domino is forbidden.
RuleSet compile_wang(const WangTileSet& tiles);

/// Depth-first search over assignments of cells 0..n-1 (in index order,
/// symbols ascending), pruning as soon as a forbidden cell combination is
/// complete. Each tried assignment counts as one node.
class ConstraintSearch {
public:
    using Assignment = std::span<const Symbol>;
    using Visitor = std::function<bool(Assignment)>;  // false stops the search
    using Check = std::function<bool(Assignment)>;

    ConstraintSearch(std::size_t cells, Symbol alphabet_size);

    std::size_t cell_count() const { return domains_.size(); }
    /// Forbid the conjunction of (cell, symbol) requirements. Requirements
    /// that demand two symbols of one cell can never hold and are dropped.
    void forbid(std::vector<std::pair<std::size_t, Symbol>> cells);
    /// Run `ok` once cells 0..index are assigned; false prunes.
    void add_checkpoint(std::size_t index, Check ok);
    void fix(std::size_t index, Symbol s);

    struct Outcome {
        std::uint64_t nodes = 0;
        bool stopped = false;  // the visitor asked to stop
    };
    /// Throws BudgetExceeded(stage, "nodes") past `budget` nodes.
    Outcome run(const Visitor& visit, std::uint64_t budget, const std::string& stage) const;

    /// The first solution, searching the subtrees of cell 0 on up to `jobs`
    /// threads. Result and budget behavior are identical for every `jobs`.
    std::optional<std::vector<Symbol>> first_solution(std::uint64_t budget, unsigned jobs,
                                                      const std::string& stage) const;

private:
    struct Requirement {
        std::vector<std::pair<std::size_t, Symbol>> cells;
    };
    std::vector<std::vector<Symbol>> domains_;
    std::vector<std::vector<Requirement>> forbidden_at_;
    std::vector<std::vector<Check>> checks_at_;
};

/// Add every forbidden occurrence whose cells all fall in the rectangle
/// [lo, hi]; cell index is row-major within the rectangle.
void forbid_in_rectangle(ConstraintSearch& search, const RuleSet& rules, Vec2 lo, Vec2 hi);
/// Add every forbidden occurrence of the periodic configuration whose
/// fundamental domain (row-major) is being searched.
void forbid_on_torus(ConstraintSearch& search, const RuleSet& rules, const Lattice& lattice);

/// A pattern on B(0, radius), locally admissible.
struct AdmissiblePattern {
    Coord radius = 0;
    Pattern pattern;
};

/// Streams every locally admissible assignment of B(0, radius) in
/// row-major lexicographic order; `visit` returns false to stop.
void enumerate_admissible(const RuleSet& rules, Coord radius,
                          const std::function<bool(const AdmissiblePattern&)>& visit,
                          const SearchOptions& options = {});

/// Whether B(0, radius) has at least one locally admissible assignment.
bool has_admissible(const RuleSet& rules, Coord radius, const SearchOptions& options = {});

struct PrefixRequirement {
    PeriodSet periods;
    Coord radius = 0;
};

struct ConcentricWitness {
    AdmissiblePattern pattern;
    /// Per prefix: the first avoidance (row-major) of each period inside
    /// B(0, radius_k).
    std::vector<AvoidanceMap> avoidances;
};

/// First admissible pattern on the outermost ball in which, for every k,
/// each period of P_k has an avoidance with both endpoints in B(0, g_k).
std::optional<ConcentricWitness> has_concentric_witness(const RuleSet& rules,
                                                        std::span<const PrefixRequirement> prefixes,
                                                        const SearchOptions& options = {});

/// Re-verify a witness from scratch.
bool verify_witness(const RuleSet& rules, std::span<const PrefixRequirement> prefixes,
                    const ConcentricWitness& witness);

/// Locally admissible assignments of [0, n-1]^2, counted row by row over
/// states made of the last (pattern height - 1) rows.
Count count_admissible_square(const RuleSet& rules, Coord n, const SearchOptions& options = {});

/// Whether a pattern contains no forbidden pattern fully inside its shape.
bool is_locally_admissible(const RuleSet& rules, const Pattern& pattern);
/// Whether a lattice-periodic configuration contains no forbidden pattern.
bool is_admissible(const RuleSet& rules, const PeriodicConfig& x);

/// First admissible configuration periodic under the lattice, in
/// lexicographic order of the fundamental domain.
std::optional<PeriodicConfig> find_torus(const RuleSet& rules, const Lattice& lattice,
                                         const SearchOptions& options = {});
/// Every admissible configuration periodic under the lattice.
std::vector<PeriodicConfig> enumerate_tori(const RuleSet& rules, const Lattice& lattice,
                                           const SearchOptions& options = {});

}  // namespace shiftlab
