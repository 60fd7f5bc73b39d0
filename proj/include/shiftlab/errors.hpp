#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shiftlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller-supplied object violates an operation's precondition.
struct PreconditionError : Error {
    using Error::Error;
};

/// A configured search budget (node count, state count, radius cap) tripped.
struct BudgetExceeded : Error {
    BudgetExceeded(std::string stage, std::string kind)
        : Error("budget exceeded in " + stage + " (" + kind + ")"),
          stage(std::move(stage)), kind(std::move(kind)) {}
    std::string stage;
    std::string kind;
};

/// Line-oriented input file errors.
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// An internal consistency guard fired (a bound or construction bug).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace shiftlab
