#include "shiftlab/engine.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace shiftlab {

PeriodSet::PeriodSet(std::vector<PeriodVector> periods) : periods_(std::move(periods)) {
    std::sort(periods_.begin(), periods_.end());
    periods_.erase(std::unique(periods_.begin(), periods_.end()), periods_.end());
}

PeriodSet::PeriodSet(std::initializer_list<PeriodVector> periods)
    : PeriodSet(std::vector<PeriodVector>(periods)) {}

bool PeriodSet::contains(const PeriodVector& p) const {
    return std::binary_search(periods_.begin(), periods_.end(), p);
}

bool PeriodSet::pairwise_noncolinear() const {
    for (std::size_t i = 0; i < periods_.size(); ++i)
        for (std::size_t j = i + 1; j < periods_.size(); ++j)
            if (colinear(periods_[i].vec(), periods_[j].vec())) return false;
    return true;
}

PeriodSet PeriodSet::range(std::size_t first, std::size_t last) const {
    if (first > last || last >= periods_.size()) throw PreconditionError("period range out of bounds");
    PeriodSet out;
    out.periods_.assign(periods_.begin() + static_cast<std::ptrdiff_t>(first),
                        periods_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    return out;
}

Coord PeriodSet::norm_sum() const {
    Coord s = 0;
    for (const auto& p : periods_) s = checked_add(s, p.norm());
    return s;
}

std::ostream& operator<<(std::ostream& os, const PeriodSet& set) {
    os << '{';
    for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
    return os << '}';
}

PeriodSet periods_up_to_norm(Coord n) {
    std::vector<PeriodVector> out;
    for (Coord dx = -n; dx <= n; ++dx)
        for (Coord dy = -n; dy <= n; ++dy)
            if (dx != 0 || dy != 0) out.emplace_back(dx, dy);
    return PeriodSet(std::move(out));
}

PeriodSet canonical_periods(std::size_t count) {
    Coord n = 1;
    while (static_cast<std::size_t>((2 * n + 1) * (2 * n + 1) - 1) < count) ++n;
    const PeriodSet all = periods_up_to_norm(n);
    return count == 0 ? PeriodSet{} : all.prefix(count - 1);
}

PeriodSet lcm_reduce(const PeriodSet& periods) {
    std::map<PeriodVector, Coord> classes;  // positive primitive direction -> lcm of multipliers
    for (const auto& p : periods) {
        const PeriodVector dir = p.positive().primitive();
        const Coord k = gcd(p.dx(), p.dy());
        auto [it, inserted] = classes.emplace(dir, k);
        if (!inserted) it->second = lcm(it->second, k);
    }
    std::vector<PeriodVector> out;
    for (const auto& [dir, k] : classes) out.emplace_back(checked_mul(dir.dx(), k), checked_mul(dir.dy(), k));
    return PeriodSet(std::move(out));
}

namespace {

// Nearest integer to n / d, ties rounded up.
Coord round_div(Coord n, Coord d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return floor_div(checked_add(checked_mul(2, n), d), checked_mul(2, d));
}

// Largest |coefficient| the translation step can need when the two centers
// are at most `dist` apart: |det(other, delta)| <= 2 |other| |delta|, plus
// one half for rounding.
Coord coefficient_cap(Coord other_norm, Coord dist, Coord abs_det) {
    const Coord num = checked_add(checked_mul(checked_mul(4, other_norm), dist), abs_det);
    return num / checked_mul(2, abs_det);
}

}  // namespace

Coord f_bound(const PeriodVector& p0, const PeriodVector& pn, Coord r) {
    if (r < 0) throw PreconditionError("f_bound radius must be nonnegative");
    const Coord d = det(p0.vec(), pn.vec());
    if (d == 0) throw PreconditionError("f_bound periods " + to_string(p0) + " and " + to_string(pn) +
                                        " are colinear");
    const Coord abs_d = d < 0 ? -d : d;
    const Coord dist = checked_mul(2, r);
    const Coord i_max = coefficient_cap(p0.norm(), dist, abs_d);  // steps along pn
    const Coord j_max = coefficient_cap(pn.norm(), dist, abs_d);  // steps along p0
    return checked_add(r, std::max(checked_mul(i_max, pn.norm()), checked_mul(j_max, p0.norm())));
}

Coord BoundTable::f_prime(const PeriodSet& periods, Coord r) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = f_prime_.find({periods, r}); it != f_prime_.end()) return it->second;
    }
    Coord value;
    if (periods.size() == 1) {
        value = r;
    } else {
        const std::size_t n = periods.size() - 1;
        const Coord inner = std::max(f_prime(periods.range(1, n), r), f_prime(periods.range(0, n - 1), r));
        value = f_bound(periods.front(), periods.back(), inner);
    }
    std::lock_guard lock(mutex_);
    f_prime_.emplace(std::make_pair(periods, r), value);
    return value;
}

Coord BoundTable::g(const PeriodSet& periods) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = g_.find(periods); it != g_.end()) return it->second;
    }
    if (periods.empty()) throw PreconditionError("g_bound of an empty period set");
    Coord value = periods.front().norm();
    for (std::size_t n = 1; n < periods.size(); ++n) {
        const Coord s_n = lcm_reduce(periods.prefix(n)).norm_sum();
        value = checked_add(checked_add(value, f_prime(lcm_reduce(periods.prefix(n - 1)), s_n)), s_n);
    }
    std::lock_guard lock(mutex_);
    g_.emplace(periods, value);
    return value;
}

Coord f_prime(const PeriodSet& periods, Coord r, BoundTable* table) {
    if (periods.empty()) throw PreconditionError("f_prime of an empty period set");
    if (!periods.pairwise_noncolinear()) throw PreconditionError("f_prime periods must be pairwise non-colinear");
    if (r < 0) throw PreconditionError("f_prime radius must be nonnegative");
    BoundTable local;
    return (table ? *table : local).f_prime(periods, r);
}

Coord g_bound(const PeriodSet& periods, BoundTable* table) {
    BoundTable local;
    return (table ? *table : local).g(periods);
}

Coord g_prime(Coord n, Coord warn_threshold, std::ostream* warn) {
    if (n < 1) throw PreconditionError("g_prime requires n >= 1");
    const Coord value = g_bound(lcm_reduce(periods_up_to_norm(n)));
    if (warn && value > warn_threshold)
        *warn << "warning: g'(" << n << ") = " << value << " exceeds " << warn_threshold << '\n';
    return value;
}

namespace {

void verify_carried(const PeriodicConfig& x, const Gathered& g, const char* which) {
    for (const auto& [p, a] : g.avoidances) {
        if (!(a.p == p) || !is_avoidance(x, a.z, p))
            throw PreconditionError(std::string(which) + " ball claims an avoidance of " + to_string(p) +
                                    " that does not verify");
        if (!g.ball.contains_pair(a))
            throw PreconditionError(std::string(which) + " ball does not contain its avoidance of " + to_string(p));
    }
}

AvoidanceMap translated(const AvoidanceMap& m, Vec2 v) {
    AvoidanceMap out;
    for (const auto& [p, a] : m) out.emplace(p, Avoidance{a.z + v, p});
    return out;
}

void verify_result(const PeriodicConfig& x, const Gathered& g) {
    for (const auto& [p, a] : g.avoidances)
        if (!is_avoidance(x, a.z, p) || !g.ball.contains_pair(a))
            throw InternalError("gathered avoidance of " + to_string(p) + " failed verification");
}

// One translation of `ball` by step. Returns the first base z (row-major)
// with x(z) != x(z + step), as an avoidance of `period` (= +-step).
std::optional<Avoidance> translation_defect(const PeriodicConfig& x, const Ball& ball, Vec2 step,
                                            const PeriodVector& period) {
    for (Vec2 z : ball.cells()) {
        if (x.at(z) != x.at(z + step)) {
            if (step == period.vec()) return Avoidance{z, period};
            return Avoidance{z + step, period};
        }
    }
    return std::nullopt;
}

struct Walker {
    Gathered start;
    Vec2 step;               // +-translation vector
    PeriodVector period;     // the period whose avoidance a defect yields
    Coord target = 0;        // number of steps
    Coord done = 0;
    Vec2 center() const { return start.ball.center + step * done; }
};

}  // namespace

Gathered gather_pair(const PeriodicConfig& x, const Gathered& a, const Gathered& b, const PeriodVector& p0,
                     const PeriodVector& pn) {
    const Coord d = det(p0.vec(), pn.vec());
    if (d == 0) throw PreconditionError("gather_pair periods must be non-colinear");
    if (!a.avoidances.contains(p0)) throw PreconditionError("first ball carries no avoidance of " + to_string(p0));
    if (!b.avoidances.contains(pn)) throw PreconditionError("second ball carries no avoidance of " + to_string(pn));
    verify_carried(x, a, "first");
    verify_carried(x, b, "second");

    // Solve i*pn - j*p0 ~= delta, rounding each coefficient.
    const Vec2 delta = b.ball.center - a.ball.center;
    const Coord i = round_div(det(p0.vec(), delta), d);
    const Coord j = round_div(det(pn.vec(), delta), d);
    const Coord abs_d = d < 0 ? -d : d;
    if (std::abs(i) > coefficient_cap(p0.norm(), norm(delta), abs_d) ||
        std::abs(j) > coefficient_cap(pn.norm(), norm(delta), abs_d))
        throw InternalError("translation count exceeds its derived cap");

    Walker wa{a, i >= 0 ? pn.vec() : -pn.vec(), pn, std::abs(i)};
    Walker wb{b, j >= 0 ? p0.vec() : -p0.vec(), p0, std::abs(j)};

    auto early = [&](const Walker& w, const Avoidance& found) {
        Gathered out{{w.center(), w.start.ball.radius + w.period.norm()},
                     translated(w.start.avoidances, w.step * w.done)};
        out.avoidances.insert_or_assign(w.period, found);
        verify_result(x, out);
        return out;
    };

    while (wa.done < wa.target || wb.done < wb.target) {
        for (Walker* w : {&wa, &wb}) {
            if (w->done >= w->target) continue;
            const Ball here{w->center(), w->start.ball.radius};
            if (auto found = translation_defect(x, here, w->step, w->period)) return early(*w, *found);
            ++w->done;
        }
    }

    // Both balls are now copies sitting within the residual of each other.
    const Vec2 ca = wa.center(), cb = wb.center();
    const Coord ra = a.ball.radius, rb = b.ball.radius;
    const Coord dist = norm(ca - cb);
    const Coord radius = std::max(ra + pn.norm(), rb + p0.norm());
    Vec2 center;
    if (dist + ra <= radius)
        center = cb;
    else if (dist + rb <= radius)
        center = ca;
    else
        throw InternalError("translated balls did not meet within the residual bound");

    Gathered out{{center, radius}, translated(a.avoidances, wa.step * wa.done)};
    for (const auto& [p, av] : translated(b.avoidances, wb.step * wb.done)) out.avoidances.emplace(p, av);
    verify_result(x, out);
    return out;
}

namespace {

// Induction over contiguous canonical sub-ranges, memoized.
template <class Locate>
Gathered gather_range(const PeriodicConfig& x, const PeriodSet& periods, std::size_t lo, std::size_t hi,
                      const Locate& locate, std::map<std::pair<std::size_t, std::size_t>, Gathered>& memo) {
    if (auto it = memo.find({lo, hi}); it != memo.end()) return it->second;
    Gathered out;
    if (lo == hi) {
        const PeriodVector& p = periods[lo];
        const Avoidance a = locate(p);
        out = {{a.z, p.norm()}, {{p, a}}};
    } else {
        const Gathered first = gather_range(x, periods, lo, hi - 1, locate, memo);
        const Gathered second = gather_range(x, periods, lo + 1, hi, locate, memo);
        out = gather_pair(x, first, second, periods[lo], periods[hi]);
    }
    memo.emplace(std::make_pair(lo, hi), out);
    return out;
}

template <class Locate>
Gathered gather_all(const PeriodicConfig& x, const PeriodSet& periods, const Locate& locate) {
    if (periods.empty()) throw PreconditionError("cannot gather an empty period set");
    if (!periods.pairwise_noncolinear()) throw PreconditionError("gathered periods must be pairwise non-colinear");
    std::map<std::pair<std::size_t, std::size_t>, Gathered> memo;
    return gather_range(x, periods, 0, periods.size() - 1, locate, memo);
}

}  // namespace

Gathered gather_ball(const PeriodicConfig& x, const PeriodSet& periods) {
    for (const auto& p : periods)
        if (!x.find_avoidance(p)) throw PreconditionError("period " + to_string(p) + " not avoided");
    return gather_all(x, periods, [&x](const PeriodVector& p) { return *x.find_avoidance(p); });
}

namespace {

Gathered gather_near_with(const PeriodicConfig& x, const PeriodSet& periods, const AvoidanceMap& known) {
    return gather_all(x, periods, [&known](const PeriodVector& p) { return known.at(p); });
}

}  // namespace

Gathered gather_near(const PeriodicConfig& x, const PeriodSet& periods, const Ball& known) {
    AvoidanceMap found;
    const auto cells = known.cells();
    for (const auto& p : periods) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](Vec2 z) { return is_avoidance(x, z, p); });
        if (it == cells.end())
            throw PreconditionError("period " + to_string(p) + " not avoided in the known ball");
        found.emplace(p, Avoidance{*it, p});
    }
    return gather_near_with(x, periods, found);
}

Avoidance to_base_avoidance(const PeriodicConfig& x, const Avoidance& multiple, const PeriodVector& base) {
    if (!is_avoidance(x, multiple.z, multiple.p)) throw PreconditionError("input pair is not an avoidance");
    const Vec2 v = multiple.p.vec(), q = base.vec();
    if (!colinear(v, q)) throw PreconditionError("avoidance period is not a multiple of the base period");
    const Coord m = q.x != 0 ? v.x / q.x : v.y / q.y;
    if (q * m != v) throw PreconditionError("avoidance period is not an integer multiple of the base period");
    const Avoidance forward = m > 0 ? multiple : multiple.reversed();
    for (Coord k = 0; k < std::abs(m); ++k) {
        const Vec2 z = forward.z + q * k;
        if (is_avoidance(x, z, base)) return {z, base};
    }
    throw InternalError("no step of the multiple avoidance is an avoidance of the base");
}

namespace {

// The first avoidance of q with both endpoints in the ball.
std::optional<Avoidance> avoidance_inside(const PeriodicConfig& x, const Ball& ball, const PeriodVector& q) {
    for (Vec2 z : ball.cells()) {
        const Avoidance a{z, q};
        if (ball.contains(a.end()) && is_avoidance(x, z, q)) return a;
    }
    return std::nullopt;
}

// Avoidances of every p in `periods`, derived from the colinear multiples in
// `reduced_avoidances`.
AvoidanceMap bases_from(const PeriodicConfig& x, const PeriodSet& periods, const AvoidanceMap& reduced_avoidances) {
    AvoidanceMap out;
    for (const auto& p : periods) {
        auto it = std::find_if(reduced_avoidances.begin(), reduced_avoidances.end(),
                               [&](const auto& kv) { return colinear(kv.first.vec(), p.vec()); });
        if (it == reduced_avoidances.end()) throw InternalError("no reduced period covers " + to_string(p));
        out.emplace(p, to_base_avoidance(x, it->second, p));
    }
    return out;
}

struct ConcentricRun {
    const PeriodicConfig& x;
    const PeriodSet& periods;
    BoundTable& table;
    std::vector<ConcentricLevel> levels;

    // `seed` holds, with both endpoints inside, the avoidances of P'_n.
    Vec2 run(std::size_t n, const Ball& seed, const AvoidanceMap& reduced) {
        const PeriodSet prefix = periods.prefix(n);
        if (n == 0) {
            const Avoidance a = bases_from(x, prefix, reduced).begin()->second;
            levels[0] = {0, {a.z, table.g(prefix)}, {{a.p, a}}};
            return a.z;
        }
        const PeriodSet lower = lcm_reduce(periods.prefix(n - 1));
        const AvoidanceMap lower_av = bases_from(x, lower, reduced);
        const Gathered near = gather_near_with(x, lower, lower_av);
        if (norm(near.ball.center - seed.center) > table.f_prime(lower, lcm_reduce(prefix).norm_sum()))
            throw InternalError("gathered center drifted beyond f_prime");
        const Vec2 center = run(n - 1, near.ball, near.avoidances);

        const Ball ball{center, table.g(prefix)};
        if (!ball.contains(seed)) throw InternalError("prefix ball does not contain its seed");
        ConcentricLevel level{n, ball, bases_from(x, prefix, reduced)};
        for (const auto& [p, a] : level.avoidances)
            if (!ball.contains_pair(a)) throw InternalError("prefix avoidance escaped its ball");
        levels[n] = std::move(level);
        return center;
    }
};

}  // namespace

ConcentricResult concentric(const PeriodicConfig& x, const PeriodSet& periods, const Ball& seed, BoundTable* table) {
    if (periods.empty()) throw PreconditionError("concentric needs a nonempty period set");
    const PeriodSet reduced = lcm_reduce(periods);
    if (seed.radius > reduced.norm_sum())
        throw PreconditionError("seed radius exceeds the norm sum of the reduced periods");
    AvoidanceMap reduced_av;
    for (const auto& q : reduced) {
        auto a = avoidance_inside(x, seed, q);
        if (!a) throw PreconditionError("seed holds no avoidance of " + to_string(q));
        reduced_av.emplace(q, *a);
    }
    BoundTable local;
    ConcentricRun run{x, periods, table ? *table : local, std::vector<ConcentricLevel>(periods.size())};
    const Vec2 center = run.run(periods.size() - 1, seed, reduced_av);
    if (norm(center - seed.center) > run.table.g(periods))
        throw InternalError("concentric center drifted beyond g_bound");
    return {center, std::move(run.levels)};
}

}  // namespace shiftlab
