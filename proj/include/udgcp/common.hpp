#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace udgcp {

inline constexpr std::size_t NONE = std::numeric_limits<std::size_t>::max();

/// Malformed input (duplicate points, unreadable files, degenerate geometry).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed; carries a diagnostic.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AdjList = std::vector<std::vector<int>>;

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvariantError(what);
}

}  // namespace udgcp
