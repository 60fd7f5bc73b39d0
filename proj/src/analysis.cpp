#include "shiftlab/analysis.hpp"

#include <cmath>
#include <set>

namespace shiftlab {

double log2_count(Count c) {
    if (c == 0) throw PreconditionError("log of a zero count");
    return static_cast<double>(std::log2(static_cast<long double>(c)));
}

ComplexitySeries complexity_series(const RuleSet& rules, Coord n_first, Coord n_last, const PeriodSet* cover,
                                   const SearchOptions& options) {
    if (n_first < 1 || n_last < n_first) throw PreconditionError("invalid n range");
    ComplexitySeries out;
    out.has_cover = cover != nullptr;
    Coord weight = 0;
    if (cover)
        for (const auto& p : *cover) weight += (p.dx() < 0 ? -p.dx() : p.dx()) + (p.dy() < 0 ? -p.dy() : p.dy());
    const double per_cell = std::log2(static_cast<double>(rules.alphabet_size()));
    for (Coord n = n_first; n <= n_last; ++n) {
        ComplexityRow row;
        row.n = n;
        row.count = count_admissible_square(rules, n, options);
        row.log2_count = row.count == 0 ? 0.0 : log2_count(row.count);
        row.ratio = row.log2_count / static_cast<double>(n * n);
        row.within_cover_bound =
            cover && row.log2_count <= static_cast<double>(weight * n) * per_cell + 1e-9;
        out.rows.push_back(row);
    }
    return out;
}

Window3D counterexample_window(Coord n, Coord side) {
    if (n < 1) throw PreconditionError("n must be positive");
    Window3D w(side);
    for (Coord z = -side; z <= side; ++z) {
        w.set({0, 0, z}, 1);
        if (n <= side && floor_mod(z, n) == 0)
            for (Coord x = -side; x <= side; ++x) w.set({x, -n, z}, 1);
    }
    return w;
}

std::optional<Vec3> find_avoidance_3d(const Window3D& w, Vec3 q) {
    const Coord s = w.side();
    for (Coord z = -s; z <= s; ++z)
        for (Coord y = -s; y <= s; ++y)
            for (Coord x = -s; x <= s; ++x) {
                const Vec3 c{x, y, z}, d = c + q;
                if (w.in_window(d) && w.at(c) != w.at(d)) return c;
            }
    return std::nullopt;
}

MinPeriodReport verify_min_period(const Window3D& w, Coord n) {
    if (n < 1) throw PreconditionError("n must be positive");
    MinPeriodReport r;
    r.n = n;
    bool short_all_avoided = true;
    for (Coord z = -(n - 1); z <= n - 1; ++z)
        for (Coord y = -(n - 1); y <= n - 1; ++y)
            for (Coord x = -(n - 1); x <= n - 1; ++x) {
                const Vec3 q{x, y, z};
                if (q == Vec3{}) continue;
                auto a = find_avoidance_3d(w, q);
                short_all_avoided = short_all_avoided && a.has_value();
                r.scans.push_back({q, a});
            }
    const Vec3 gen{0, 0, n};
    r.scans.push_back({gen, find_avoidance_3d(w, gen)});
    for (Coord k = 1; k <= 2 * n; ++k)
        if (!find_avoidance_3d(w, {0, 0, k})) {
            r.min_z_period = k;
            break;
        }
    r.matches_generator = short_all_avoided && !r.scans.back().avoidance;
    return r;
}

bool check_line_structure(const Window3D& w, Coord n) {
    const Coord s = w.side();
    auto one = [&w](Vec3 c) { return w.in_window(c) && w.at(c) == 1; };
    std::set<std::pair<Coord, Coord>> z_columns;
    std::set<std::pair<Coord, Coord>> x_layers;  // (y, z)
    for (Coord z = -s; z <= s; ++z)
        for (Coord y = -s; y <= s; ++y)
            for (Coord x = -s; x <= s; ++x) {
                const Vec3 c{x, y, z};
                if (!one(c)) continue;
                if (one({x, y + 1, z}) || one({x, y - 1, z})) return false;
                const bool along_x = one({x + 1, y, z}) || one({x - 1, y, z});
                const bool along_z = one({x, y, z + 1}) || one({x, y, z - 1});
                if (n >= 2 && along_x && along_z) return false;
                if (along_z && !along_x) z_columns.emplace(x, y);
                if (along_x) x_layers.emplace(y, z);
            }
    if (z_columns.size() > 1) return false;
    std::optional<std::pair<Coord, Coord>> prev;
    for (const auto& layer : x_layers) {
        if (prev) {
            if (layer.first != prev->first) return false;  // a single plane
            if (layer.second - prev->second != n) return false;
        }
        prev = layer;
    }
    return true;
}

}  // namespace shiftlab
