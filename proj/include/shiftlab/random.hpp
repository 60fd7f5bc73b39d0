#pragma once

// Seeded generators for test corpora and the gather command. Draws use
// plain modulo reduction of mt19937_64 output so sequences are identical on
// every platform.

#include <cstdint>
#include <random>

#include "shiftlab/core.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/sft.hpp"

namespace shiftlab {

using Rng = std::mt19937_64;

/// Uniform-ish integer in [lo, hi].
Coord draw(Rng& rng, Coord lo, Coord hi);

/// Random lattice of area <= max_area, symbols from 0..k-1 with 2 <= k <= max_symbols.
PeriodicConfig random_periodic_config(Rng& rng, Symbol max_symbols, Coord max_area);

struct GatherCase {
    PeriodicConfig config;
    PeriodSet periods;
};

/// A fully periodic config and a nonempty subset of `pool` that it avoids.
/// Members of `pool` must be pairwise non-colinear.
GatherCase random_gather_case(Rng& rng, const PeriodSet& pool, Symbol max_symbols = 3, Coord max_area = 12);

/// Up to `max_forbidden` distinct dominoes (horizontal or vertical).
RuleSet random_domino_rules(Rng& rng, Symbol max_symbols, std::size_t max_forbidden);

/// Up to `max_forbidden` patterns of 1..3 cells inside [0,1]^2.
RuleSet random_small_rules(Rng& rng, Symbol max_symbols, std::size_t max_forbidden);

}  // namespace shiftlab
