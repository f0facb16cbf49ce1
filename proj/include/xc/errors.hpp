#pragma once

#include <stdexcept>
#include <string>

namespace xc {

// Bad user-supplied data: dimensions, parameters, malformed files.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A claimed-valid inequality or factorization fails an exact check.
struct validity_error : std::runtime_error {
    explicit validity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A cooperative work budget (time, candidate cap) ran out.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An H-representation describes an unbounded set where a polytope is required.
struct unbounded_error : std::runtime_error {
    explicit unbounded_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A system claimed to be an extension of a polytope is not one.
struct not_an_extension_error : std::runtime_error {
    explicit not_an_extension_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Floating-point routine failed to converge or produced nonsense.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace xc
