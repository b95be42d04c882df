#pragma once

#include <cstdint>
#include <vector>

#include "udgcp/common.hpp"

namespace udgcp {

using Cycle = std::vector<int>;

struct OracleResult {
    int value = 0;
    std::vector<Cycle> cycles;  // one optimal packing
};

struct OracleOptions {
    int limit_n = 16;
    bool induced_only = true;  // false: enumerate every simple cycle through the pivot
};

/// Exact maximum number of vertex-disjoint cycles. Throws InputError when n > limit.
OracleResult max_cycle_packing(const AdjList& adj, const OracleOptions& opt = {});

/// All optimal packings (as sorted lists of canonical cycles), up to max_count of them.
std::vector<std::vector<Cycle>> all_optimal_packings(const AdjList& adj, std::size_t max_count = 100000,
                                                     const OracleOptions& opt = {});

/// Each cycle has >= 3 distinct vertices, consecutive vertices adjacent, closing edge present;
/// vertex sets pairwise disjoint.
bool verify_solution(const AdjList& adj, const std::vector<Cycle>& cycles);

/// Rotate/reflect so the smallest vertex comes first and the second entry is the smaller neighbour.
Cycle canonical_cycle(Cycle c);

}  // namespace udgcp
