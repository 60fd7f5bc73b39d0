#pragma once

// Avoidance gathering on concrete configurations and the computable bounds
// that control how far the gathered centers can drift.
//
// Convention: an avoidance is "in" a ball when its base cell z is. Every
// ball produced here satisfies the stronger property that both endpoints
// z and z + p lie inside, which is what makes the translation arguments
// composable.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "shiftlab/core.hpp"

namespace shiftlab {

/// Duplicate-free list of periods in canonical order (norm, then dx, dy).
class PeriodSet {
public:
    PeriodSet() = default;
    explicit PeriodSet(std::vector<PeriodVector> periods);
    PeriodSet(std::initializer_list<PeriodVector> periods);

    std::span<const PeriodVector> periods() const { return periods_; }
    std::size_t size() const { return periods_.size(); }
    bool empty() const { return periods_.empty(); }
    const PeriodVector& operator[](std::size_t i) const { return periods_[i]; }
    const PeriodVector& front() const { return periods_.front(); }
    const PeriodVector& back() const { return periods_.back(); }
    auto begin() const { return periods_.begin(); }
    auto end() const { return periods_.end(); }

    bool contains(const PeriodVector& p) const;
    bool pairwise_noncolinear() const;
    /// Elements [first, last] of the canonical order.
    PeriodSet range(std::size_t first, std::size_t last) const;
    /// The first i + 1 elements.
    PeriodSet prefix(std::size_t i) const { return range(0, i); }
    /// Sum of norms (overflow checked).
    Coord norm_sum() const;

    bool operator==(const PeriodSet&) const = default;
    auto operator<=>(const PeriodSet& o) const { return periods_ <=> o.periods_; }

private:
    std::vector<PeriodVector> periods_;
};

std::ostream& operator<<(std::ostream& os, const PeriodSet& set);

/// All nonzero vectors of norm <= n, canonical order.
PeriodSet periods_up_to_norm(Coord n);
/// The first `count` vectors of the canonical enumeration of Z^2 \ {0}.
PeriodSet canonical_periods(std::size_t count);

/// Replace each colinearity class by the least common integer multiple of
/// its members, sign-normalized (dx > 0, or dx == 0 and dy > 0).
PeriodSet lcm_reduce(const PeriodSet& periods);

/// Memoized f, f' and g values. Safe to share between threads.
class BoundTable {
public:
    Coord f_prime(const PeriodSet& periods, Coord r);
    Coord g(const PeriodSet& periods);

private:
    std::mutex mutex_;
    std::map<std::pair<PeriodSet, Coord>, Coord> f_prime_;
    std::map<PeriodSet, Coord> g_;
};

/// Upper bound on the drift of the gathered center: if both input centers
/// lie in B(z, r), the center returned by gather_pair is within this
/// distance of z. Nondecreasing in r and never below r.
Coord f_bound(const PeriodVector& p0, const PeriodVector& pn, Coord r);

/// The recursion over contiguous canonical sub-ranges: r for singletons,
/// otherwise f_bound(first, last, max(f'(without first), f'(without last))).
Coord f_prime(const PeriodSet& periods, Coord r, BoundTable* table = nullptr);

/// g({p}) = |p|; g(P_n) = g(P_{n-1}) + f'(P'_{n-1}, S_n) + S_n with
/// S_n the norm sum of P'_n, over canonical prefixes.
Coord g_bound(const PeriodSet& periods, BoundTable* table = nullptr);

/// g of the lcm reduction of all periods of norm <= n. Writes a note to
/// `warn` when the value exceeds `warn_threshold`.
Coord g_prime(Coord n, Coord warn_threshold = 1'000'000, std::ostream* warn = nullptr);

using AvoidanceMap = std::map<PeriodVector, Avoidance>;

struct Gathered {
    Ball ball;
    AvoidanceMap avoidances;
};

/// Translate `a` along pn and `b` along p0 until a translation uncovers a
/// new avoidance or the two balls sit next to each other; returns a ball
/// holding avoidances of every period carried by either input.
/// `a` must carry p0 and `b` must carry pn; every supplied avoidance must
/// verify with both endpoints inside its ball.
Gathered gather_pair(const PeriodicConfig& x, const Gathered& a, const Gathered& b, const PeriodVector& p0,
                     const PeriodVector& pn);

/// A ball of radius <= sum of norms holding avoidances of every period.
/// Periods must be pairwise non-colinear and all avoided by x.
Gathered gather_ball(const PeriodicConfig& x, const PeriodSet& periods);

/// As gather_ball, starting from a ball `known` in which every period has
/// an avoidance base; the result center is within f_prime(periods,
/// known.radius) of known.center.
Gathered gather_near(const PeriodicConfig& x, const PeriodSet& periods, const Ball& known);

/// From an avoidance of a nonzero integer multiple of `base`, the first
/// step (z + m*base, z + (m+1)*base) that is an avoidance of `base`.
Avoidance to_base_avoidance(const PeriodicConfig& x, const Avoidance& multiple, const PeriodVector& base);

struct ConcentricLevel {
    std::size_t index = 0;  // prefix P_index
    Ball ball;               // B(center, g(P_index))
    AvoidanceMap avoidances;
};

struct ConcentricResult {
    Vec2 center;
    std::vector<ConcentricLevel> levels;
};

/// One center whose nested balls B(center, g(P_i)) hold avoidances of each
/// prefix P_i. `seed` must have radius <= the norm sum of lcm_reduce(P) and
/// contain (both endpoints) an avoidance of each period of lcm_reduce(P).
ConcentricResult concentric(const PeriodicConfig& x, const PeriodSet& periods, const Ball& seed,
                            BoundTable* table = nullptr);

}  // namespace shiftlab
