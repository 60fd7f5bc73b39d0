#pragma once

// Pattern-count growth, and the three-dimensional configuration whose
// smallest vertical period grows with n while its local structure stays
// rigid.

#include <optional>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/sft.hpp"

namespace shiftlab {

struct ComplexityRow {
    Coord n = 0;
    Count count = 0;
    double log2_count = 0;
    double ratio = 0;  // log2_count / n^2
    /// log2 count <= sum_p (|p.dx| + |p.dy|) * n * log2 |alphabet|
    /// (only meaningful when a cover was supplied).
    bool within_cover_bound = false;
};

struct ComplexitySeries {
    bool has_cover = false;
    std::vector<ComplexityRow> rows;
};

ComplexitySeries complexity_series(const RuleSet& rules, Coord n_first, Coord n_last,
                                   const PeriodSet* cover = nullptr, const SearchOptions& options = {});

double log2_count(Count c);

/// A z-line of 1s at (0, 0, z) and x-lines of 1s at y = -n for z = 0 mod n,
/// on [-side, side]^3.
Window3D counterexample_window(Coord n, Coord side);

struct PeriodScan {
    Vec3 q;
    std::optional<Vec3> avoidance;  // first in-window cell c with w(c) != w(c + q)
};

struct MinPeriodReport {
    Coord n = 0;
    std::vector<PeriodScan> scans;  // all q with 0 < |q| < n, then (0, 0, n)
    /// Smallest k >= 1 with no in-window avoidance of (0, 0, k), scanning k <= 2n.
    std::optional<Coord> min_z_period;
    /// Every short q is avoided and (0, 0, n) is not.
    bool matches_generator = false;
};

/// Only in-window evidence: a q without an avoidance here may still be
/// avoided outside the window.
MinPeriodReport verify_min_period(const Window3D& w, Coord n);

std::optional<Vec3> find_avoidance_3d(const Window3D& w, Vec3 q);

/// Local structure: 1s have no 1-neighbor along y, every maximal run is a
/// segment along x or z (for n >= 2), at most one z-line column, and
/// x-line layers are exactly n apart.
bool check_line_structure(const Window3D& w, Coord n);

}  // namespace shiftlab
