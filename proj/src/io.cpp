#include "shiftlab/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

namespace shiftlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

Coord to_coord(const std::string& s) {
    Coord v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw PreconditionError("bad integer '" + s + "'");
    return v;
}

// Splits "directive: rest" after comment stripping; nullopt for blank lines.
std::optional<std::pair<std::string, std::string>> split_line(std::string line, int lineno) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) return std::nullopt;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected 'directive: ...'");
    return std::make_pair(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
}

const std::regex& cell_regex() {
    static const std::regex re(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*=\s*([^\s()=]+))");
    return re;
}

std::vector<std::pair<Vec2, std::string>> parse_cells(const std::string& rest, int lineno) {
    std::vector<std::pair<Vec2, std::string>> out;
    std::string leftover;
    auto it = std::sregex_iterator(rest.begin(), rest.end(), cell_regex());
    std::size_t pos = 0;
    for (; it != std::sregex_iterator(); ++it) {
        leftover += rest.substr(pos, static_cast<std::size_t>(it->position()) - pos);
        pos = static_cast<std::size_t>(it->position() + it->length());
        try {
            out.emplace_back(Vec2{to_coord((*it)[1]), to_coord((*it)[2])}, (*it)[3]);
        } catch (const PreconditionError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    leftover += rest.substr(pos);
    if (!trim(leftover).empty()) throw ParseError(lineno, "unexpected text '" + trim(leftover) + "'");
    if (out.empty()) throw ParseError(lineno, "expected at least one (x,y)=symbol cell");
    return out;
}

std::map<std::string, Symbol> index_alphabet(const std::vector<std::string>& alphabet, int lineno) {
    std::map<std::string, Symbol> out;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (!out.emplace(alphabet[i], static_cast<Symbol>(i)).second)
            throw ParseError(lineno, "duplicate alphabet symbol '" + alphabet[i] + "'");
    return out;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    return in;
}

}  // namespace

RuleSet parse_rules(std::istream& in) {
    std::optional<std::vector<std::string>> alphabet;
    std::map<std::string, Symbol> index;
    std::vector<Pattern> forbidden;
    std::vector<WangTile> tiles;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto parts = split_line(line, lineno);
        if (!parts) continue;
        const auto& [directive, rest] = *parts;
        if (directive == "alphabet") {
            if (alphabet) throw ParseError(lineno, "alphabet declared twice");
            if (!tiles.empty()) throw ParseError(lineno, "alphabet cannot be combined with wang tiles");
            alphabet = tokens(rest);
            if (alphabet->empty()) throw ParseError(lineno, "empty alphabet");
            index = index_alphabet(*alphabet, lineno);
        } else if (directive == "forbid") {
            if (!alphabet) throw ParseError(lineno, "forbid before alphabet");
            std::vector<Pattern::Cell> cells;
            for (const auto& [z, name] : parse_cells(rest, lineno)) {
                auto it = index.find(name);
                if (it == index.end()) throw ParseError(lineno, "symbol '" + name + "' not in alphabet");
                cells.emplace_back(z, it->second);
            }
            try {
                forbidden.emplace_back(std::move(cells));
            } catch (const PreconditionError& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (directive == "wang") {
            if (alphabet) throw ParseError(lineno, "wang tiles cannot be combined with alphabet/forbid");
            const auto t = tokens(rest);
            if (t.size() != 4) throw ParseError(lineno, "wang tile needs 4 colors: north east south west");
            tiles.push_back({t[0], t[1], t[2], t[3]});
        } else {
            throw ParseError(lineno, "unknown directive '" + directive + "'");
        }
    }
    if (!tiles.empty()) return compile_wang({tiles});
    if (!alphabet) throw ParseError(lineno, "no alphabet or wang tiles declared");
    return RuleSet(*alphabet, std::move(forbidden));
}

RuleSet load_rules(const std::string& path) {
    auto in = open(path);
    return parse_rules(in);
}

Vec2 parse_vec(const std::string& text) {
    static const std::regex re(R"(\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw PreconditionError("bad vector '" + text + "'");
    return {to_coord(m[1]), to_coord(m[2])};
}

PeriodVector parse_period(const std::string& text) {
    const Vec2 v = parse_vec(text);
    return PeriodVector(v.x, v.y);
}

PeriodSet parse_period_list(const std::string& text) {
    static const std::regex re(R"(\(?\s*-?\d+\s*,\s*-?\d+\s*\)?)");
    std::vector<PeriodVector> out;
    std::string leftover;
    std::size_t pos = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
        leftover += text.substr(pos, static_cast<std::size_t>(it->position()) - pos);
        pos = static_cast<std::size_t>(it->position() + it->length());
        out.push_back(parse_period(it->str()));
    }
    leftover += text.substr(pos);
    for (char c : leftover)
        if (c != ' ' && c != ';' && c != '\t') throw PreconditionError("bad period list '" + text + "'");
    if (out.empty()) throw PreconditionError("empty period list");
    return PeriodSet(std::move(out));
}

std::pair<Coord, Coord> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const Coord v = to_coord(trim(text));
        return {v, v};
    }
    const Coord lo = to_coord(trim(text.substr(0, dots))), hi = to_coord(trim(text.substr(dots + 2)));
    if (lo > hi) throw PreconditionError("empty range '" + text + "'");
    return {lo, hi};
}

ConfigInput parse_config(std::istream& in) {
    std::optional<std::vector<std::string>> alphabet;
    std::map<std::string, Symbol> index;
    std::optional<std::pair<Vec2, Vec2>> lattice;
    std::optional<std::string> background;
    std::vector<std::pair<Vec2, std::string>> cells;
    std::vector<int> cell_lines;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto parts = split_line(line, lineno);
        if (!parts) continue;
        const auto& [directive, rest] = *parts;
        if (directive == "alphabet") {
            if (alphabet) throw ParseError(lineno, "alphabet declared twice");
            alphabet = tokens(rest);
            if (alphabet->empty()) throw ParseError(lineno, "empty alphabet");
            index = index_alphabet(*alphabet, lineno);
        } else if (directive == "lattice") {
            if (lattice) throw ParseError(lineno, "lattice declared twice");
            static const std::regex re(
                R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
            std::smatch m;
            if (!std::regex_match(rest, m, re)) throw ParseError(lineno, "expected 'lattice: (a,b) (c,d)'");
            lattice = std::make_pair(Vec2{to_coord(m[1]), to_coord(m[2])}, Vec2{to_coord(m[3]), to_coord(m[4])});
        } else if (directive == "background") {
            if (background) throw ParseError(lineno, "background declared twice");
            const auto t = tokens(rest);
            if (t.size() != 1) throw ParseError(lineno, "expected one background symbol");
            background = t[0];
        } else if (directive == "cell") {
            for (auto& c : parse_cells(rest, lineno)) {
                cells.push_back(std::move(c));
                cell_lines.push_back(lineno);
            }
        } else {
            throw ParseError(lineno, "unknown directive '" + directive + "'");
        }
    }
    if (lattice && background) throw ParseError(lineno, "lattice and background are mutually exclusive");
    if (!lattice && !background) throw ParseError(lineno, "missing lattice (or background)");

    ConfigInput out;
    Symbol max_symbol = 0;
    auto symbol = [&](const std::string& name, int at) -> Symbol {
        if (alphabet) {
            auto it = index.find(name);
            if (it == index.end()) throw ParseError(at, "symbol '" + name + "' not in alphabet");
            return it->second;
        }
        Coord v;
        try {
            v = to_coord(name);
        } catch (const PreconditionError&) {
            throw ParseError(at, "symbol '" + name + "' is not a number and no alphabet was declared");
        }
        if (v < 0 || v > 1'000'000) throw ParseError(at, "symbol '" + name + "' out of range");
        max_symbol = std::max(max_symbol, static_cast<Symbol>(v));
        return static_cast<Symbol>(v);
    };
    std::vector<Pattern::Cell> resolved;
    for (std::size_t i = 0; i < cells.size(); ++i)
        resolved.emplace_back(cells[i].first, symbol(cells[i].second, cell_lines[i]));
    try {
        if (lattice) {
            out.config = PeriodicConfig::periodic_from_cells(lattice->first, lattice->second, resolved);
        } else {
            out.config = PeriodicConfig::perturbed(symbol(*background, lineno), resolved);
        }
    } catch (const PreconditionError& e) {
        throw ParseError(lineno, e.what());
    }
    if (alphabet) {
        out.alphabet = *alphabet;
    } else {
        for (Symbol s = 0; s <= max_symbol; ++s) out.alphabet.push_back(std::to_string(s));
    }
    return out;
}

ConfigInput load_config(const std::string& path) {
    auto in = open(path);
    return parse_config(in);
}

}  // namespace shiftlab
