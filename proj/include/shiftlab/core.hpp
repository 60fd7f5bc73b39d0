#pragma once

// Grids, periods, avoidances and finitely described configurations of Z^2,
// plus the small Z^3 window type used by the counterexample generator.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/errors.hpp"

namespace shiftlab {

using Coord = std::int64_t;
using Symbol = std::uint32_t;

Coord checked_add(Coord a, Coord b);
Coord checked_mul(Coord a, Coord b);

/// Floor division and nonnegative remainder (b > 0).
constexpr Coord floor_div(Coord a, Coord b) {
    Coord q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
constexpr Coord floor_mod(Coord a, Coord b) { return a - floor_div(a, b) * b; }

Coord gcd(Coord a, Coord b);
Coord lcm(Coord a, Coord b);

struct Vec2 {
    Coord x = 0;
    Coord y = 0;

    constexpr Vec2() = default;
    constexpr Vec2(Coord x_, Coord y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(Coord k) const { return {x * k, y * k}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
    constexpr bool is_zero() const { return x == 0 && y == 0; }
};

/// Row-major order: by y, then by x. This is the enumeration order of
/// every cell scan in the library.
struct RowMajorLess {
    constexpr bool operator()(Vec2 a, Vec2 b) const {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

constexpr Coord norm(Vec2 v) {
    const Coord ax = v.x < 0 ? -v.x : v.x;
    const Coord ay = v.y < 0 ? -v.y : v.y;
    return ax > ay ? ax : ay;
}

constexpr Coord det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr bool colinear(Vec2 a, Vec2 b) { return det(a, b) == 0; }

std::ostream& operator<<(std::ostream& os, Vec2 v);
std::string to_string(Vec2 v);

/// A nonzero integer vector, ordered canonically: by uniform norm, then
/// lexicographically by (dx, dy).
class PeriodVector {
public:
    PeriodVector(Coord dx, Coord dy);
    explicit PeriodVector(Vec2 v) : PeriodVector(v.x, v.y) {}

    Coord dx() const { return v_.x; }
    Coord dy() const { return v_.y; }
    Vec2 vec() const { return v_; }
    Coord norm() const { return shiftlab::norm(v_); }

    PeriodVector operator-() const { return PeriodVector(-v_); }

    /// Sign-normalized representative: dx > 0, or dx == 0 and dy > 0.
    bool is_positive() const { return v_.x > 0 || (v_.x == 0 && v_.y > 0); }
    PeriodVector positive() const { return is_positive() ? *this : -*this; }

    /// The primitive vector of the same direction and sign.
    PeriodVector primitive() const;

    bool operator==(const PeriodVector&) const = default;
    std::strong_ordering operator<=>(const PeriodVector& o) const;

private:
    Vec2 v_;
};

inline Coord norm(const PeriodVector& p) { return p.norm(); }
std::ostream& operator<<(std::ostream& os, const PeriodVector& p);
std::string to_string(const PeriodVector& p);

/// The ordered pair (z, z + p); in the witnessing configuration the two
/// symbols differ.
struct Avoidance {
    Vec2 z;
    PeriodVector p;

    Vec2 end() const { return z + p.vec(); }
    /// The same pair read as an avoidance of -p.
    Avoidance reversed() const { return {end(), -p}; }
    bool operator==(const Avoidance&) const = default;
};

/// L-infinity ball.
struct Ball {
    Vec2 center;
    Coord radius = 0;

    bool contains(Vec2 z) const { return norm(z - center) <= radius; }
    /// Both endpoints lie in the ball.
    bool contains_pair(const Avoidance& a) const { return contains(a.z) && contains(a.end()); }
    bool contains(const Ball& b) const { return norm(b.center - center) + b.radius <= radius; }
    Coord cell_count() const { return (2 * radius + 1) * (2 * radius + 1); }
    /// Cells in row-major order.
    std::vector<Vec2> cells() const;
    bool operator==(const Ball&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Ball& b);

/// A finite assignment; cells are kept sorted in row-major order and unique.
class Pattern {
public:
    using Cell = std::pair<Vec2, Symbol>;

    Pattern() = default;
    explicit Pattern(std::vector<Cell> cells);

    std::span<const Cell> cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    std::optional<Symbol> at(Vec2 z) const;
    /// Translate so the lowest-left corner of the bounding box is (0, 0).
    Pattern normalized() const;
    Pattern translated(Vec2 v) const;
    /// Bounding box as (min corner, max corner); pattern must be nonempty.
    std::pair<Vec2, Vec2> bounds() const;
    bool operator==(const Pattern&) const = default;

private:
    std::vector<Cell> cells_;
};

/// Full-rank sublattice of Z^2 in Hermite form {(a, 0), (b, c)}, 0 <= b < a.
/// The fundamental domain is [0, a) x [0, c).
class Lattice {
public:
    Lattice() = default;
    Lattice(Vec2 u, Vec2 v);

    Coord width() const { return a_; }
    Coord height() const { return c_; }
    Coord shear() const { return b_; }
    Coord area() const { return a_ * c_; }
    std::vector<Vec2> basis() const { return {{a_, 0}, {b_, c_}}; }
    bool contains(Vec2 z) const { return reduce(z).is_zero(); }

    Vec2 reduce(Vec2 z) const;
    /// Row-major index of reduce(z) in the fundamental domain.
    std::size_t index(Vec2 z) const {
        const Vec2 r = reduce(z);
        return static_cast<std::size_t>(r.y * a_ + r.x);
    }
    /// Fundamental domain cells, row-major.
    std::vector<Vec2> domain() const;

private:
    Coord a_ = 1, b_ = 0, c_ = 1;
};

/// A finitely described configuration of Z^2: either periodic along a
/// full-rank lattice, or a constant background with a finite perturbation.
class PeriodicConfig {
public:
    enum class Kind { Lattice, Perturbed };

    /// Periodic under the lattice spanned by u and v (must be independent);
    /// `fill` is called once per cell of the fundamental domain.
    static PeriodicConfig periodic(Vec2 u, Vec2 v, const std::function<Symbol(Vec2)>& fill);
    /// Periodic under <u, v>; every cell of the fundamental domain must be
    /// covered, and cells congruent modulo the lattice must agree.
    static PeriodicConfig periodic_from_cells(Vec2 u, Vec2 v, const std::vector<Pattern::Cell>& cells);
    static PeriodicConfig periodic(const Lattice& lattice, std::vector<Symbol> domain_symbols);
    static PeriodicConfig constant(Symbol s);
    static PeriodicConfig perturbed(Symbol background, const std::vector<Pattern::Cell>& cells);

    Kind kind() const { return kind_; }
    Symbol at(Vec2 z) const;

    /// Period lattice (Lattice kind only).
    const Lattice& lattice() const { return lattice_; }
    /// Fundamental domain in row-major order (Lattice kind) or the
    /// perturbation support (Perturbed kind).
    std::vector<Vec2> domain_cells() const;
    Symbol background() const { return background_; }

    /// The configuration y with y(z) = x(z + v).
    PeriodicConfig shifted(Vec2 v) const;

    /// First avoidance of p in a scan that is exhaustive for this
    /// description; nullopt iff p is a period.
    std::optional<Avoidance> find_avoidance(const PeriodVector& p) const;
    bool has_period(const PeriodVector& p) const { return !find_avoidance(p).has_value(); }

    /// Number of distinct symbols appearing (max symbol + 1).
    Symbol symbol_bound() const;

private:
    PeriodicConfig() = default;
    Kind kind_ = Kind::Lattice;
    Lattice lattice_;
    std::vector<Symbol> cells_;
    Symbol background_ = 0;
    std::map<Vec2, Symbol, RowMajorLess> support_;
};

Symbol symbol_at(const PeriodicConfig& x, Vec2 z);
bool is_avoidance(const PeriodicConfig& x, Vec2 z, const PeriodVector& p);

/// All avoidances with base z inside the ball, per period, row-major.
std::map<PeriodVector, std::vector<Avoidance>> scan_avoidances(const PeriodicConfig& x, const Ball& ball,
                                                               std::span<const PeriodVector> periods);

struct Vec3 {
    Coord x = 0, y = 0, z = 0;
    constexpr Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr bool operator==(const Vec3&) const = default;
    constexpr auto operator<=>(const Vec3&) const = default;
};

constexpr Coord norm(Vec3 v) {
    Coord m = 0;
    for (Coord c : {v.x, v.y, v.z}) m = std::max(m, c < 0 ? -c : c);
    return m;
}
std::ostream& operator<<(std::ostream& os, Vec3 v);

/// Binary assignment of the cube [-side, side]^3.
class Window3D {
public:
    explicit Window3D(Coord side);

    Coord side() const { return side_; }
    bool in_window(Vec3 c) const { return norm(c) <= side_; }
    std::uint8_t at(Vec3 c) const { return cells_[index(c)]; }
    void set(Vec3 c, std::uint8_t value) { cells_[index(c)] = value; }
    /// Text export: one z-layer per block, rows of 0/1 with y descending.
    void write_layers(std::ostream& os) const;

private:
    std::size_t index(Vec3 c) const;
    Coord side_;
    std::vector<std::uint8_t> cells_;
};

}  // namespace shiftlab
