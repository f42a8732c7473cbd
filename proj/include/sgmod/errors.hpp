/**
 * @file sgmod/errors.hpp
 * @brief Exception types shared across the library.
 * @copyright Apache License 2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace sgmod {

/// Invalid mathematical input: mismatched moduli, a matrix that is not a
/// module map, structure constants that fail the ring axioms, and so on.
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration or search exceeded a configured cap.  Callers that decide
/// properties catch this and degrade to an Unknown verdict instead of lying.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// The ideal is not zero-dimensional, so the quotient is infinite and no
/// finite ring can be built from it.
struct NotZeroDimensional : InvalidInput {
    explicit NotZeroDimensional(const std::string& what) : InvalidInput(what) {}
};

/// A witness constructor was handed a module that is not projective.
struct NotProjective : InvalidInput {
    explicit NotProjective(const std::string& what) : InvalidInput(what) {}
};

/// A periodic complex failed complete-resolution verification where one was
/// required.
struct NotComplete : InvalidInput {
    explicit NotComplete(const std::string& what) : InvalidInput(what) {}
};

/// Script-level failure: parse errors, unknown identifiers, bad arguments.
struct ScriptError : std::runtime_error {
    ScriptError(const std::string& what, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

} // namespace sgmod
