#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "shiftlab/analysis.hpp"
#include "shiftlab/decide.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/onedim.hpp"
#include "shiftlab/random.hpp"

using namespace shiftlab;

namespace {

enum class Format { Report, Lines };

// Everything is written to a buffer and only flushed on success.
struct Out {
    Format format = Format::Report;
    std::ostringstream os;

    bool lines() const { return format == Format::Lines; }

    template <class... T>
    void record(const T&... fields) {
        std::size_t i = 0;
        ((os << (i++ ? "\t" : "") << fields), ...);
        os << '\n';
    }
};

struct Common {
    std::string format = "report";
    std::uint64_t budget = SearchOptions{}.node_budget;
    Coord radius_cap = SearchOptions{}.radius_cap;
    unsigned jobs = 1;

    SearchOptions search() const { return {budget, radius_cap, jobs}; }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "report | lines")->check(CLI::IsMember({"report", "lines"}));
    cmd->add_option("--budget", c.budget, "search node budget")->check(CLI::PositiveNumber);
    cmd->add_option("--radius-cap", c.radius_cap, "largest ball radius searched")->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

std::string row_text(const RuleSet& rules, const std::vector<Symbol>& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + rules.alphabet()[row[i]];
    return s;
}

std::string join_ids(const std::vector<std::size_t>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
    return s;
}

std::string set_text(const PeriodSet& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

std::string fixed(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string torus_text(const TorusConfig& t) { return to_string(t.p) + " " + to_string(t.q); }

// classify

int run_classify(const std::string& path, std::size_t nmax, Coord max_area, const Common& c, Out& out) {
    const RuleSet rules = load_rules(path);
    ClassifyOptions opts{nmax, max_area, c.search()};
    const ClassifyResult r = classify(rules, opts);

    std::string verdict_line;
    if (const auto* v = std::get_if<NoAperiodicPoint>(&r.verdict)) {
        verdict_line = "NoAperiodicPoint at n=" + std::to_string(v->n);
        if (r.cover) verdict_line += "; cover=" + set_text(r.cover->periods);
        if (out.lines()) {
            out.record("verdict", "NoAperiodicPoint", "n=" + std::to_string(v->n));
            for (std::size_t k = 0; k < v->prefixes.size(); ++k)
                out.record("radius", k, v->prefixes[k].radius);
        } else {
            out.os << "verdict: " << verdict_line << '\n';
            out.os << "prefix radii:";
            for (std::size_t k = 0; k < v->prefixes.size(); ++k)
                out.os << " g(P_" << k << ")=" << v->prefixes[k].radius;
            out.os << '\n';
        }
    } else if (const auto* v = std::get_if<AperiodicEvidence>(&r.verdict)) {
        if (out.lines()) {
            out.record("verdict", "AperiodicEvidence", "n=" + std::to_string(v->n));
        } else {
            out.os << "verdict: AperiodicEvidence up to n=" << v->n << '\n';
        }
        for (std::size_t i = 0; i < v->witnesses.size(); ++i) {
            const auto& w = v->witnesses[i];
            const bool ok = verify_witness(rules, v->prefixes[i], w);
            if (out.lines()) {
                out.record("witness", "n=" + std::to_string(i + 1), "radius=" + std::to_string(w.pattern.radius),
                           ok ? "verified" : "FAILED");
                for (std::size_t k = 0; k < w.avoidances.size(); ++k)
                    for (const auto& [p, a] : w.avoidances[k])
                        out.record("avoidance", "n=" + std::to_string(i + 1), k, to_string(p), to_string(a.z));
            } else {
                out.os << "witness n=" << i + 1 << ": radius " << w.pattern.radius << ", "
                       << (ok ? "verified" : "FAILED verification") << '\n';
                for (std::size_t k = 0; k < w.avoidances.size(); ++k) {
                    out.os << "  P_" << k << " in B(0," << v->prefixes[i][k].radius << "):";
                    for (const auto& [p, a] : w.avoidances[k]) out.os << ' ' << p << '@' << a.z;
                    out.os << '\n';
                }
            }
        }
    } else if (const auto* v = std::get_if<EmptyShift>(&r.verdict)) {
        if (out.lines())
            out.record("verdict", "EmptyShift", "n=" + std::to_string(v->n), "radius=" + std::to_string(v->radius));
        else
            out.os << "verdict: EmptyShift (no admissible pattern on a ball of radius " << v->radius << ")\n";
    } else if (const auto* v = std::get_if<BudgetExhausted>(&r.verdict)) {
        if (out.lines())
            out.record("verdict", "BudgetExhausted", "n=" + std::to_string(v->n), v->stage, v->kind);
        else
            out.os << "verdict: BudgetExhausted at n=" << v->n << " in " << v->stage << " (" << v->kind << ")\n";
    }

    if (out.lines()) {
        if (r.periodic)
            out.record("torus", to_string(r.periodic->p), to_string(r.periodic->q));
        else
            out.record("torus", "none", "max_area=" + std::to_string(max_area));
    } else {
        out.os << "periodic search: "
               << (r.periodic ? "torus with periods " + torus_text(*r.periodic)
                              : "no torus up to area " + std::to_string(max_area))
               << '\n';
    }

    std::string cls = to_string(r.kind);
    if (r.kind == Classification::AllPointsPeriodic) cls += " n=" + std::to_string(r.cover->halting_step);
    if (out.lines()) {
        if (r.cover) {
            for (const auto& f : r.cover->fibers)
                out.record("cover", to_string(f.period), "vertices=" + std::to_string(f.vertices),
                           "cycle=" + join_ids(f.cycle), f.finite ? "finite" : "infinite");
            out.record("overlaps", r.overlaps.size());
        }
        if (!r.note.empty()) out.record("note", r.note);
        out.record("classification", cls);
    } else {
        out.os << "classification: " << cls << '\n';
        if (r.cover) {
            for (const auto& f : r.cover->fibers)
                out.os << "  fiber " << f.period << ": vertices=" << f.vertices << " cycle=" << join_ids(f.cycle)
                       << (f.finite ? " (finitely many points)" : "") << '\n';
            out.os << "  presentation: " << r.presentation.size() << " strip automata\n";
            out.os << "  overlap points: " << r.overlaps.size() << '\n';
        }
        if (!r.note.empty()) out.os << "note: " << r.note << '\n';
    }
    return std::holds_alternative<BudgetExhausted>(r.verdict) || r.kind == Classification::Unknown ? 2 : 0;
}

// gather

int run_gather(const std::string& path, std::optional<std::uint64_t> seed, const std::string& periods_text,
               Out& out) {
    const PeriodSet pool{{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    std::optional<PeriodicConfig> x;
    PeriodSet periods;
    std::vector<std::string> alphabet;
    if (seed) {
        Rng rng(*seed);
        auto gc = random_gather_case(rng, pool);
        x = std::move(gc.config);
        periods = std::move(gc.periods);
        for (Symbol s = 0; s < x->symbol_bound(); ++s) alphabet.push_back(std::to_string(s));
    } else {
        auto in = load_config(path);
        x = std::move(in.config);
        alphabet = std::move(in.alphabet);
    }
    if (!periods_text.empty()) periods = parse_period_list(periods_text);
    if (periods.empty()) throw PreconditionError("no periods given (use --periods)");

    auto sym = [&](Vec2 z) { return alphabet.at(x->at(z)); };
    if (x->kind() == PeriodicConfig::Kind::Lattice) {
        const auto b = x->lattice().basis();
        std::string domain;
        for (Vec2 z : x->lattice().domain()) domain += (domain.empty() ? "" : " ") + sym(z);
        if (out.lines()) {
            out.record("config", "lattice", to_string(b[0]), to_string(b[1]), domain);
        } else {
            out.os << "config: lattice " << b[0] << ' ' << b[1] << ", domain row-major [" << domain << "]\n";
        }
    } else {
        if (out.lines())
            out.record("config", "perturbed", alphabet.at(x->background()), x->domain_cells().size());
        else
            out.os << "config: background " << alphabet.at(x->background()) << " with "
                   << x->domain_cells().size() << " perturbed cells\n";
    }
    if (out.lines())
        out.record("periods", set_text(periods));
    else
        out.os << "periods: " << periods << '\n';

    auto table_rows = [&](const std::string& tag, const AvoidanceMap& m) {
        for (const auto& [p, a] : m) {
            if (out.lines())
                out.record(tag, to_string(p), to_string(a.z), sym(a.z), sym(a.end()));
            else
                out.os << "  " << std::left << std::setw(8) << to_string(p) << " z=" << std::setw(10)
                       << to_string(a.z) << " x(z)=" << sym(a.z) << " x(z+p)=" << sym(a.end()) << '\n';
        }
    };

    const PeriodSet reduced = lcm_reduce(periods);
    const PeriodSet& direct = periods.pairwise_noncolinear() ? periods : reduced;
    const Gathered g = gather_ball(*x, direct);
    if (out.lines()) {
        out.record("gather", set_text(direct), to_string(g.ball.center), g.ball.radius, direct.norm_sum());
    } else {
        out.os << "gather_ball " << direct << ": center " << g.ball.center << " radius " << g.ball.radius
               << " (bound " << direct.norm_sum() << ")\n";
    }
    table_rows("avoid", g.avoidances);

    const Gathered seed_ball = direct == reduced ? g : gather_ball(*x, reduced);
    BoundTable table;
    const ConcentricResult c = concentric(*x, periods, seed_ball.ball, &table);
    const Coord drift = norm(c.center - seed_ball.ball.center);
    const Coord bound = g_bound(periods, &table);
    if (out.lines()) {
        out.record("concentric", to_string(c.center), drift, bound);
    } else {
        out.os << "concentric: center " << c.center << " displacement " << drift << " (bound " << bound << ")\n";
    }
    for (const auto& level : c.levels) {
        if (out.lines())
            out.record("level", level.index, level.ball.radius);
        else
            out.os << " P_" << level.index << " in " << level.ball << ":\n";
        table_rows("level-avoid", level.avoidances);
    }
    return 0;
}

// slice

int run_slice(const std::string& path, const std::string& period, bool adjacency, const Common& c, Out& out) {
    const RuleSet rules = load_rules(path);
    const PeriodVector p = parse_period(period);
    const StripAutomaton a = slice(rules, p, c.search());
    const auto cycle = find_cycle(a);
    const bool finite = finitely_many_walks(a);
    if (out.lines()) {
        out.record("slice", to_string(p), "width=" + std::to_string(a.width()), "shear=" + std::to_string(a.shear()),
                   "height=" + std::to_string(a.band_height()), a.transposed() ? "columns" : "rows");
        out.record("nonempty", cycle ? "true" : "false", "vertices=" + std::to_string(a.vertex_count()),
                   "edges=" + std::to_string(a.edge_count()));
        if (cycle) {
            out.record("cycle", join_ids(*cycle));
            const auto t = unslice(a, *cycle);
            out.record("torus", to_string(t.p), to_string(t.q));
        }
        out.record("finite", finite ? "true" : "false");
    } else {
        out.os << "period " << p << ": width " << a.width() << ", shear " << a.shear() << ", band height "
               << a.band_height() << (a.transposed() ? ", sliced along columns" : "") << '\n';
        out.os << "nonempty: " << (cycle ? "true" : "false") << "; vertices=" << a.vertex_count()
               << "; edges=" << a.edge_count() << '\n';
        if (cycle) {
            const auto t = unslice(a, *cycle);
            out.os << "cycle: " << join_ids(*cycle) << " (length " << cycle->size() << "), torus periods "
                   << torus_text(t) << '\n';
            out.os << "rows:";
            for (auto v : *cycle) out.os << " [" << row_text(rules, a.bottom_row(v)) << ']';
            out.os << '\n';
        }
        out.os << "finitely many points: " << (finite ? "yes" : "no") << '\n';
    }
    if (adjacency) {
        if (out.lines()) {
            for (std::size_t v = 0; v < a.vertex_count(); ++v)
                out.record("vertex", v, row_text(rules, a.label(v)), join_ids(a.successors(v)));
        } else {
            out.os << "adjacency (id, top row, successors):\n";
            write_adjacency(out.os, a);
        }
    }
    return 0;
}

// entropy

int run_entropy(const std::string& path, const std::string& range, const std::string& cover_text,
                const Common& c, Out& out) {
    const RuleSet rules = load_rules(path);
    const auto [lo, hi] = parse_range(range);
    std::optional<PeriodSet> cover;
    if (!cover_text.empty()) cover = parse_period_list(cover_text);
    const auto series = complexity_series(rules, lo, hi, cover ? &*cover : nullptr, c.search());
    std::string counts;
    for (const auto& r : series.rows) counts += (counts.empty() ? "" : ",") + to_string(r.count);
    if (out.lines()) {
        for (const auto& r : series.rows)
            out.record("count", r.n, to_string(r.count), fixed(r.log2_count), fixed(r.ratio),
                       series.has_cover ? (r.within_cover_bound ? "within" : "exceeds") : "-");
    } else {
        out.os << "counts: " << counts << '\n';
        out.os << "n\tcount\tlog2\tlog2/n^2";
        if (series.has_cover) out.os << "\tcover bound " << *cover;
        out.os << '\n';
        for (const auto& r : series.rows) {
            out.os << r.n << '\t' << to_string(r.count) << '\t' << fixed(r.log2_count) << '\t' << fixed(r.ratio);
            if (series.has_cover) out.os << '\t' << (r.within_cover_bound ? "within" : "exceeds");
            out.os << '\n';
        }
    }
    return 0;
}

// counterexample

int run_counterexample(Coord n, std::optional<Coord> side_opt, bool layers, Out& out) {
    const Coord side = side_opt.value_or(3 * n);
    const Window3D w = counterexample_window(n, side);
    const auto report = verify_min_period(w, n);
    const bool lines_ok = check_line_structure(w, n);
    std::size_t avoided = 0;
    for (std::size_t i = 0; i + 1 < report.scans.size(); ++i) avoided += report.scans[i].avoidance ? 1 : 0;
    const std::size_t shorter = report.scans.size() - 1;
    const auto& gen = report.scans.back();
    const std::string min_text = report.min_z_period ? "(0,0," + std::to_string(*report.min_z_period) + ")"
                                                     : "none up to (0,0," + std::to_string(2 * n) + ")";
    if (out.lines()) {
        out.record("window", "n=" + std::to_string(n), "side=" + std::to_string(side));
        out.record("min_z_period", min_text);
        out.record("generator", "(0,0," + std::to_string(n) + ")", gen.avoidance ? "avoided" : "clean");
        out.record("short", avoided, shorter);
        for (std::size_t i = 0; i + 1 < report.scans.size(); ++i) {
            const auto& s = report.scans[i];
            std::ostringstream q, z;
            q << s.q;
            if (s.avoidance) z << *s.avoidance;
            out.record("scan", q.str(), s.avoidance ? z.str() : "inconclusive");
        }
        out.record("structure", lines_ok ? "ok" : "violated");
        out.record("matches_generator", report.matches_generator ? "true" : "false");
    } else {
        out.os << "window n=" << n << " side=" << side << '\n';
        out.os << "min z-period in window: " << min_text << '\n';
        out.os << "avoidance of (0,0," << n << ") in window: " << (gen.avoidance ? "found" : "none") << '\n';
        out.os << "shorter periods with an in-window avoidance: " << avoided << '/' << shorter << '\n';
        out.os << "line structure: " << (lines_ok ? "ok" : "violated") << '\n';
        out.os << "matches generator: " << (report.matches_generator ? "yes" : "no") << '\n';
        out.os << "(in-window evidence only)\n";
    }
    if (layers) w.write_layers(out.os);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shiftlab: two-dimensional SFT toolkit"};
    app.require_subcommand(1);
    Common common;

    std::string rules_path;
    std::size_t nmax = 2;
    Coord max_area = 16;
    auto* classify_cmd = app.add_subcommand("classify", "run the aperiodicity semi-algorithm and classifier");
    classify_cmd->add_option("rules", rules_path, "rule file")->required();
    classify_cmd->add_option("--nmax", nmax, "largest semi-algorithm step")->check(CLI::PositiveNumber);
    classify_cmd->add_option("--max-area", max_area, "largest torus area for the periodic search")
        ->check(CLI::PositiveNumber);
    add_common(classify_cmd, common);

    std::string config_path, periods_text;
    std::optional<std::uint64_t> seed;
    auto* gather_cmd = app.add_subcommand("gather", "gather avoidances on a periodic configuration");
    gather_cmd->add_option("config", config_path, "config file");
    gather_cmd->add_option("--periods", periods_text, "periods, e.g. \"(1,0) (0,1)\"");
    gather_cmd->add_option("--seed", seed, "use a seeded random configuration instead of a file");
    add_common(gather_cmd, common);

    std::string period = "1,0";
    bool adjacency = false;
    auto* slice_cmd = app.add_subcommand("slice", "build the strip automaton of a period fiber");
    slice_cmd->add_option("rules", rules_path, "rule file")->required();
    slice_cmd->add_option("--period", period, "period vector dx,dy");
    slice_cmd->add_flag("--adjacency", adjacency, "print the vertex adjacency list");
    add_common(slice_cmd, common);

    std::string range = "1..6", cover_text;
    auto* entropy_cmd = app.add_subcommand("entropy", "count admissible squares");
    entropy_cmd->add_option("rules", rules_path, "rule file")->required();
    entropy_cmd->add_option("--n", range, "side range a..b");
    entropy_cmd->add_option("--cover", cover_text, "period cover for the growth bound");
    add_common(entropy_cmd, common);

    Coord ce_n = 2;
    std::optional<Coord> side;
    bool layers = false;
    auto* ce_cmd = app.add_subcommand("counterexample", "generate and scan the 3D counterexample window");
    ce_cmd->add_option("--n", ce_n, "vertical period")->check(CLI::PositiveNumber);
    ce_cmd->add_option("--side", side, "window half-width (default 3n)")->check(CLI::PositiveNumber);
    ce_cmd->add_flag("--layers", layers, "print the window z-layer by z-layer");
    add_common(ce_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    Out out;
    out.format = common.format == "lines" ? Format::Lines : Format::Report;
    if (out.lines()) out.os << "shiftlab-v1\n";
    int code = 0;
    try {
        if (*classify_cmd) {
            code = run_classify(rules_path, nmax, max_area, common, out);
        } else if (*gather_cmd) {
            if (config_path.empty() && !seed) throw PreconditionError("gather needs a config file or --seed");
            code = run_gather(config_path, seed, periods_text, out);
        } else if (*slice_cmd) {
            code = run_slice(rules_path, period, adjacency, common, out);
        } else if (*entropy_cmd) {
            code = run_entropy(rules_path, range, cover_text, common, out);
        } else {
            code = run_counterexample(ce_n, side, layers, out);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cout << out.os.str();
    return code;
}
