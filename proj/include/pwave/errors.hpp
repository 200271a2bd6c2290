#pragma once

#include <stdexcept>
#include <string>

namespace pwave {

// Malformed configuration or arguments.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A hypothesis the construction requires does not hold for the given problem.
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical-regime failure: lost contraction, resonance, non-convergence.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pwave
