#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace epochbc {

using Vertex = std::uint64_t;
using Count = std::uint64_t;

inline constexpr std::uint32_t kUnreached = UINT32_MAX;

// Malformed input data (edge lists, score files, config files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or unsatisfiable run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Communication backend failure (collective mismatch, router shutdown).
class BackendFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated caller contract (wrong thread, wrong epoch, re-entrant call).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const char *what) {
    if (!cond)
        throw ContractViolation(what);
}

} // namespace epochbc
