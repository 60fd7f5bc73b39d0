#pragma once

// Text formats.
//
// Rule file:
//   alphabet: a b c
//   forbid: (dx,dy)=sym (dx,dy)=sym ...
//   wang: north east south west        (instead of alphabet/forbid)
//
// Config file:
//   alphabet: a b                      (optional; else symbols are 0, 1, ...)
//   lattice: (a,b) (c,d)
//   cell: (x,y)=sym ...
// or, for a finite perturbation of a constant background:
//   background: sym
//   cell: (x,y)=sym ...
//
// '#' starts a comment. Unknown directives are errors.

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/sft.hpp"

namespace shiftlab {

RuleSet parse_rules(std::istream& in);
RuleSet load_rules(const std::string& path);

struct ConfigInput {
    std::vector<std::string> alphabet;
    PeriodicConfig config = PeriodicConfig::constant(0);
};

ConfigInput parse_config(std::istream& in);
ConfigInput load_config(const std::string& path);

/// "1,0" or "(1,0)".
Vec2 parse_vec(const std::string& text);
PeriodVector parse_period(const std::string& text);
/// Periods separated by spaces or ';', e.g. "(1,0) (0,1)" or "1,0;0,1".
PeriodSet parse_period_list(const std::string& text);
/// "a..b" or a single number.
std::pair<Coord, Coord> parse_range(const std::string& text);

}  // namespace shiftlab
