#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chainavoid {

// Thrown when an operation's stated precondition does not hold.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a search or enumeration exceeds its configured budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an invariant that should hold by construction is observed to fail.
class counterexample_error : public std::runtime_error {
public:
    explicit counterexample_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace chainavoid
