#include "shiftlab/core.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace shiftlab {

Coord checked_add(Coord a, Coord b) {
    Coord r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

Coord checked_mul(Coord a, Coord b) {
    Coord r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

Coord gcd(Coord a, Coord b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        Coord t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Coord lcm(Coord a, Coord b) {
    if (a == 0 || b == 0) return 0;
    const Coord g = gcd(a, b);
    return checked_mul(a < 0 ? -a : a, (b < 0 ? -b : b) / g);
}

std::ostream& operator<<(std::ostream& os, Vec2 v) { return os << '(' << v.x << ',' << v.y << ')'; }

std::string to_string(Vec2 v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

PeriodVector::PeriodVector(Coord dx, Coord dy) : v_(dx, dy) {
    if (v_.is_zero()) throw PreconditionError("period vector must be nonzero");
}

PeriodVector PeriodVector::primitive() const {
    const Coord g = gcd(v_.x, v_.y);
    return PeriodVector(v_.x / g, v_.y / g);
}

std::strong_ordering PeriodVector::operator<=>(const PeriodVector& o) const {
    if (auto c = norm() <=> o.norm(); c != 0) return c;
    if (auto c = v_.x <=> o.v_.x; c != 0) return c;
    return v_.y <=> o.v_.y;
}

std::ostream& operator<<(std::ostream& os, const PeriodVector& p) { return os << p.vec(); }

std::string to_string(const PeriodVector& p) { return to_string(p.vec()); }

std::vector<Vec2> Ball::cells() const {
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(cell_count()));
    for (Coord y = center.y - radius; y <= center.y + radius; ++y)
        for (Coord x = center.x - radius; x <= center.x + radius; ++x) out.emplace_back(x, y);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Ball& b) {
    return os << "B(" << b.center << ',' << b.radius << ')';
}

Pattern::Pattern(std::vector<Cell> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end(),
              [](const Cell& a, const Cell& b) { return RowMajorLess{}(a.first, b.first); });
    for (std::size_t i = 1; i < cells_.size(); ++i)
        if (cells_[i].first == cells_[i - 1].first)
            throw PreconditionError("pattern assigns cell " + to_string(cells_[i].first) + " twice");
}

std::optional<Symbol> Pattern::at(Vec2 z) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), z,
                               [](const Cell& c, Vec2 v) { return RowMajorLess{}(c.first, v); });
    if (it != cells_.end() && it->first == z) return it->second;
    return std::nullopt;
}

std::pair<Vec2, Vec2> Pattern::bounds() const {
    if (cells_.empty()) throw PreconditionError("bounds of an empty pattern");
    Vec2 lo = cells_.front().first, hi = lo;
    for (const auto& [z, s] : cells_) {
        lo = {std::min(lo.x, z.x), std::min(lo.y, z.y)};
        hi = {std::max(hi.x, z.x), std::max(hi.y, z.y)};
    }
    return {lo, hi};
}

Pattern Pattern::translated(Vec2 v) const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const auto& [z, s] : cells_) out.emplace_back(z + v, s);
    return Pattern(std::move(out));
}

Pattern Pattern::normalized() const {
    if (cells_.empty()) return *this;
    return translated(-bounds().first);
}

Lattice::Lattice(Vec2 u, Vec2 v) {
    const Coord d = det(u, v);
    if (d == 0) throw PreconditionError("lattice generators " + to_string(u) + ", " + to_string(v) +
                                        " are not linearly independent");
    // Extended gcd on the y components.
    Coord r0 = u.y, r1 = v.y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const Coord q = floor_div(r0, r1);
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    c_ = r0;
    a_ = (d < 0 ? -d : d) / c_;
    b_ = floor_mod(checked_add(checked_mul(s0, u.x), checked_mul(t0, v.x)), a_);
}

Vec2 Lattice::reduce(Vec2 z) const {
    const Coord k = floor_div(z.y, c_);
    return {floor_mod(z.x - k * b_, a_), z.y - k * c_};
}

std::vector<Vec2> Lattice::domain() const {
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(area()));
    for (Coord y = 0; y < c_; ++y)
        for (Coord x = 0; x < a_; ++x) out.emplace_back(x, y);
    return out;
}

PeriodicConfig PeriodicConfig::periodic(const Lattice& lattice, std::vector<Symbol> domain_symbols) {
    if (domain_symbols.size() != static_cast<std::size_t>(lattice.area()))
        throw PreconditionError("domain size does not match the lattice");
    PeriodicConfig x;
    x.lattice_ = lattice;
    x.cells_ = std::move(domain_symbols);
    return x;
}

PeriodicConfig PeriodicConfig::periodic(Vec2 u, Vec2 v, const std::function<Symbol(Vec2)>& fill) {
    const Lattice lattice(u, v);
    std::vector<Symbol> cells;
    for (Vec2 z : lattice.domain()) cells.push_back(fill(z));
    return periodic(lattice, std::move(cells));
}

PeriodicConfig PeriodicConfig::periodic_from_cells(Vec2 u, Vec2 v, const std::vector<Pattern::Cell>& cells) {
    const Lattice lattice(u, v);
    std::vector<std::optional<Symbol>> slots(static_cast<std::size_t>(lattice.area()));
    for (const auto& [z, s] : cells) {
        auto& slot = slots[lattice.index(z)];
        if (slot && *slot != s)
            throw PreconditionError("cell " + to_string(z) + " conflicts with a congruent cell modulo the lattice");
        slot = s;
    }
    std::vector<Symbol> out;
    out.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i])
            throw PreconditionError("fundamental domain cell " + to_string(lattice.domain()[i]) + " is unassigned");
        out.push_back(*slots[i]);
    }
    return periodic(lattice, std::move(out));
}

PeriodicConfig PeriodicConfig::constant(Symbol s) {
    return periodic({1, 0}, {0, 1}, [s](Vec2) { return s; });
}

PeriodicConfig PeriodicConfig::perturbed(Symbol background, const std::vector<Pattern::Cell>& cells) {
    PeriodicConfig x;
    x.kind_ = Kind::Perturbed;
    x.background_ = background;
    for (const auto& [z, s] : cells) {
        auto [it, inserted] = x.support_.emplace(z, s);
        if (!inserted && it->second != s) throw PreconditionError("cell " + to_string(z) + " assigned twice");
    }
    std::erase_if(x.support_, [background](const auto& kv) { return kv.second == background; });
    return x;
}

Symbol PeriodicConfig::at(Vec2 z) const {
    if (kind_ == Kind::Perturbed) {
        auto it = support_.find(z);
        return it == support_.end() ? background_ : it->second;
    }
    return cells_[lattice_.index(z)];
}

std::vector<Vec2> PeriodicConfig::domain_cells() const {
    std::vector<Vec2> out;
    if (kind_ == Kind::Perturbed) {
        for (const auto& kv : support_) out.push_back(kv.first);
        return out;
    }
    return lattice_.domain();
}

PeriodicConfig PeriodicConfig::shifted(Vec2 v) const {
    if (kind_ == Kind::Perturbed) {
        std::vector<Pattern::Cell> cells;
        for (const auto& [z, s] : support_) cells.emplace_back(z - v, s);
        return perturbed(background_, cells);
    }
    std::vector<Symbol> cells;
    for (Vec2 z : lattice_.domain()) cells.push_back(at(z + v));
    return periodic(lattice_, std::move(cells));
}

std::optional<Avoidance> PeriodicConfig::find_avoidance(const PeriodVector& p) const {
    // Lattice kind: every cell is congruent to a domain cell. Perturbed kind:
    // the support cell extremal in direction p always witnesses, so scanning
    // the support is exhaustive.
    for (Vec2 z : domain_cells())
        if (at(z) != at(z + p.vec())) return Avoidance{z, p};
    return std::nullopt;
}

Symbol PeriodicConfig::symbol_bound() const {
    Symbol m = background_;
    for (Symbol s : cells_) m = std::max(m, s);
    for (const auto& kv : support_) m = std::max(m, kv.second);
    return m + 1;
}

Symbol symbol_at(const PeriodicConfig& x, Vec2 z) { return x.at(z); }

bool is_avoidance(const PeriodicConfig& x, Vec2 z, const PeriodVector& p) { return x.at(z) != x.at(z + p.vec()); }

std::map<PeriodVector, std::vector<Avoidance>> scan_avoidances(const PeriodicConfig& x, const Ball& ball,
                                                               std::span<const PeriodVector> periods) {
    if (ball.radius < 0) throw PreconditionError("ball radius must be nonnegative");
    std::map<PeriodVector, std::vector<Avoidance>> out;
    for (const auto& p : periods) out[p];
    const auto cells = ball.cells();
    for (auto& [p, list] : out)
        for (Vec2 z : cells)
            if (is_avoidance(x, z, p)) list.push_back({z, p});
    return out;
}

std::ostream& operator<<(std::ostream& os, Vec3 v) { return os << '(' << v.x << ',' << v.y << ',' << v.z << ')'; }

Window3D::Window3D(Coord side) : side_(side) {
    if (side < 1) throw PreconditionError("window side must be positive");
    const auto w = static_cast<std::size_t>(2 * side + 1);
    cells_.assign(w * w * w, 0);
}

std::size_t Window3D::index(Vec3 c) const {
    if (!in_window(c)) throw PreconditionError("cell outside window");
    const Coord w = 2 * side_ + 1;
    return static_cast<std::size_t>(((c.z + side_) * w + (c.y + side_)) * w + (c.x + side_));
}

void Window3D::write_layers(std::ostream& os) const {
    for (Coord z = -side_; z <= side_; ++z) {
        os << "z=" << z << '\n';
        for (Coord y = side_; y >= -side_; --y) {
            for (Coord x = -side_; x <= side_; ++x) os << static_cast<int>(at({x, y, z}));
            os << '\n';
        }
    }
}

}  // namespace shiftlab
