#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace odm {

struct UnknownGeneratorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AlgebraMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Expression or polynomial text did not match the grammar.
struct SyntaxError : std::runtime_error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t byte_offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
};

struct DivisionByZeroConstant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPolynomialError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentConstraintsError : std::runtime_error {
    /// Rendered form of the irreducible residual that blocks the solve.
    std::string residual;
    InconsistentConstraintsError(const std::string& msg, std::string res)
        : std::runtime_error(msg), residual(std::move(res)) {}
};

struct DegreeTooLowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KappaPoleError : std::runtime_error {
    /// Rendered offending terms (negative power of the commutativity dial).
    std::vector<std::string> offending_terms;
    KappaPoleError(const std::string& msg, std::vector<std::string> terms)
        : std::runtime_error(msg), offending_terms(std::move(terms)) {}
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RepresentationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace odm
