#pragma once

#include <string>
#include <vector>

#include "udgcp/plane.hpp"

namespace udgcp {

struct LevelTree {
    int root = -1;
    std::vector<int> parent;       // -1 at the root
    std::vector<int> parent_edge;  // edge to the parent
    std::vector<double> lv;
    std::vector<int> depth;
};

/// Minimum cycle-weight path tree; ties broken toward the smaller parent id.
LevelTree build_level_tree(const PlaneGraph& h, int root);

struct CycleSeparatorResult {
    std::vector<int> cycle;        // vertex sequence
    std::vector<int> cycle_edges;  // cycle_edges[i] joins cycle[i] and cycle[i+1 mod len]
    double balance_ratio = 0;
    double weight = 0;
    std::string kind;  // face, fundamental, sequence, region
    // fundamental cycle data
    int root = -1, u = -1, v = -1, edge = -1, top = -1;
    bool fallback = false;       // the case analysis pick failed its audit
    bool equality_hit = false;   // some b(C^r) hit exactly 1/3 or 2/3
};

struct CycleSequence {
    std::vector<double> levels;
    std::vector<std::vector<int>> cycles;
    std::vector<std::vector<int>> cycle_edges;
    std::vector<double> weights;
    double cstar = 0;
    double lmin = 0, lmax = 0;
    int t = 0;
    int level_violations = 0;  // vertices on C_l breaking lv(parent) < l <= lv
};

/// max over components of h minus the cycle vertices of their b weight, over b(h)
double balance_ratio_of(const PlaneGraph& h, const std::vector<int>& cycle);
double cycle_weight_of(const PlaneGraph& h, const std::vector<int>& cycle);
/// Distinct vertices, consecutive ones joined by the listed distinct edges.
bool is_simple_cycle(const PlaneGraph& h, const std::vector<int>& cycle, const std::vector<int>& edges);
double cstar_of(const PlaneGraph& h);

CycleSeparatorResult fundamental_cycle_separator(const PlaneGraph& h, const LevelTree& lt);
CycleSequence build_cycle_sequence(const PlaneGraph& h, const LevelTree& lt, const CycleSeparatorResult& s);
CycleSeparatorResult balanced_small_separator(const PlaneGraph& h);

}  // namespace udgcp
