#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockbound {

// Thrown when an operation would exceed a configured work/memory budget
// (composition enumeration caps, brute-force caps, attack trial budgets).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by strict-mode text parsers; carries the 1-based offending line.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace blockbound
