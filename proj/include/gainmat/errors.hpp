#pragma once

#include <stdexcept>
#include <string>

namespace gainmat {

// Base for all library errors so callers can catch one type.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Mixing two distinct quadratic contexts (sqrt(2) with sqrt(3)) in one computation.
struct context_error : error {
    explicit context_error(const std::string& what) : error(what) {}
};

// Dimension mismatch in a matrix or vector operation.
struct shape_error : error {
    explicit shape_error(const std::string& what) : error(what) {}
};

// Malformed or out-of-range user input (JSON documents, gain strings, rationals).
struct input_error : error {
    explicit input_error(const std::string& what) : error(what) {}
};

// Valid input outside the supported families/modes (e.g. dihedral rigidity).
struct unsupported_error : error {
    explicit unsupported_error(const std::string& what) : error(what) {}
};

// Enumeration would exceed the configured size budget.
struct budget_error : error {
    explicit budget_error(const std::string& what) : error(what) {}
};

// An internal invariant failed (e.g. the two rank oracles disagree).
struct internal_error : error {
    explicit internal_error(const std::string& what) : error(what) {}
};

}  // namespace gainmat
