#pragma once

// The semi-algorithm for aperiodic points, the periodic-point search that
// complements it, and the classifier that combines the two.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftlab/onedim.hpp"
#include "shiftlab/sft.hpp"

namespace shiftlab {

/// No admissible pattern on the outer ball carries the concentric
/// avoidances at step n.
struct NoAperiodicPoint {
    std::size_t n = 0;
    std::vector<PrefixRequirement> prefixes;
};

/// Witnesses found at every step 1..n.
struct AperiodicEvidence {
    std::size_t n = 0;
    std::vector<std::vector<PrefixRequirement>> prefixes;  // per step
    std::vector<ConcentricWitness> witnesses;              // per step
};

/// Smallest radius whose ball has no locally admissible pattern.
struct EmptyShift {
    std::size_t n = 0;
    Coord radius = 0;
};

struct BudgetExhausted {
    std::size_t n = 0;
    std::string stage;
    std::string kind;
};

using Verdict = std::variant<NoAperiodicPoint, AperiodicEvidence, EmptyShift, BudgetExhausted>;

/// P_n: the first n + 1 periods of the canonical enumeration.
PeriodSet semidecide_periods(std::size_t n);
/// Prefix requirements (P_k, g(P_k)) for k = 0..n.
std::vector<PrefixRequirement> semidecide_prefixes(std::size_t n, BoundTable* table = nullptr);

Verdict aperiodic_semidecide(const RuleSet& rules, std::size_t nmax, const SearchOptions& options = {});

/// First admissible torus over lattices {(a, b), (0, c)}, 0 <= b < c, by
/// area a*c ascending (then a, b), up to max_area.
std::optional<TorusConfig> periodic_search(const RuleSet& rules, Coord max_area, const SearchOptions& options = {});

enum class Classification { Empty, HasAperiodicEvidence, AllPointsPeriodic, Unknown };
const char* to_string(Classification c);

struct ClassifyOptions {
    std::size_t nmax = 2;
    Coord max_area = 16;
    SearchOptions search;
};

struct ClassifyResult {
    Classification kind = Classification::Unknown;
    Verdict verdict;
    std::optional<TorusConfig> periodic;
    /// AllPointsPeriodic only.
    std::optional<PeriodCover> cover;
    std::vector<StripAutomaton> presentation;      // one automaton per cover period
    std::vector<PeriodicConfig> overlaps;          // points with two non-colinear periods among certified fibers
    std::string note;                              // why the result is Unknown, if it is
};

ClassifyResult classify(const RuleSet& rules, const ClassifyOptions& options = {});

/// Cells agree everywhere (both lattice-periodic).
bool same_config(const PeriodicConfig& x, const PeriodicConfig& y);

}  // namespace shiftlab
