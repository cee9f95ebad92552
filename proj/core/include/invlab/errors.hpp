#pragma once

#include <stdexcept>
#include <string>

namespace invlab {

// Misconfigured session or input (mismatched discriminants, unknown system,
// parameters outside the ring).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric evaluation hit the collision set (rho = 0 with a negative rho power).
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Implicit solver failed to reach tolerance.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace invlab
