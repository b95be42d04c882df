#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "udgcp/oracle.hpp"
#include "udgcp/sc_decomp.hpp"
#include "udgcp/solution_structure.hpp"
#include "udgcp/udg.hpp"

namespace udgcp {

enum class Mode { Standard, Refined };
const char* mode_name(Mode m);

/// Partial-solution signature over a vertex set U (lazy form). Solution edges
/// are fixed only once both ends are in U, so the signature lists the vertices
/// still owed edges to the outside: `ends` of them (1 for a path end, 2 for a
/// vertex not yet joined to anything) and, for a path end, the vertex at the
/// other end of its path (itself when ends == 2). Vertices reserved for
/// triangles inside one cell are kept as a count mod 3 per cell.
///
/// Cycles are taken chordless (any packing shortcuts to one), so a path with
/// three or more vertices never has adjacent ends: its closing edge was already
/// passed over. A chordless cycle through three vertices of a clique cell is a
/// triangle inside it and goes to reservation; every other cycle meets a clique
/// cell in at most two consecutive vertices.
struct Signature {
    std::vector<int> pending;                  // sorted
    std::vector<int> ends;                     // parallel to pending
    std::vector<int> mate;                     // parallel to pending
    std::vector<std::pair<int, int>> residue;  // (cell index, 1 or 2), sorted
    std::vector<char> flags;                   // parallel to pending, may be empty: bits below
    static constexpr char kLonger = 1;         // path has >= 3 vertices
    static constexpr char kPaired = 2;         // path end whose path neighbour shares its clique cell
    bool empty() const { return pending.empty() && residue.empty(); }
    char flag(std::size_t i) const { return i < flags.size() ? flags[i] : 0; }
    bool is_longer(std::size_t i) const { return flag(i) & kLonger; }
    std::vector<int> key() const;
    bool operator==(const Signature&) const = default;
};

/// Cells usable for triangle reservation: at least 3 vertices, pairwise adjacent.
struct CellIndex {
    std::vector<int> cell;       // vertex -> index of its cell (every cell)
    std::vector<int> size;       // per cell index
    std::vector<char> clique;    // per cell index: reservation allowed
    static CellIndex build(const GridMap& map, const UnitDiskGraph& g);
};

/// Union of two disjoint vertex sets and the edges between them.
class MergeContext {
public:
    MergeContext(const UnitDiskGraph& g, const CellIndex& cells, const std::vector<int>& ua, const std::vector<int>& ub,
                 long long cap);
    /// Every signature over ua+ub obtained from a and b by choosing cross edges
    /// between their pending vertices. gain counts cycles closed and triangles
    /// completed; x lists the chosen edges. Branches that cannot reach `need`
    /// more cycles, counting those still possible outside the union, are cut.
    void combine(const Signature& a, const Signature& b,
                 const std::function<void(Signature&&, int gain, const std::vector<int>& x)>& out,
                 int need = std::numeric_limits<int>::min()) const;
    const std::vector<int>& vertices() const { return u_; }
    /// Neighbours of v outside the union.
    int outside_degree(int v) const { return outdeg_[v]; }

private:
    const UnitDiskGraph& g_;
    const CellIndex& cells_;
    std::vector<int> u_;
    std::vector<int> outdeg_;     // per vertex: neighbours outside the union (valid on u_)
    std::vector<int> outdeg_nc_;  // the same, not in the vertex's own clique cell
    std::vector<int> cell_in_;    // per cell index: vertices inside the union
    std::vector<char> in_u_, in_b_;
    long long cap_;
    int rim_ = 0;                    // outside vertices with a neighbour in the union
    mutable std::vector<int> mark_;  // scratch for counting outside neighbours
    mutable int stamp_ = 0;
    mutable std::vector<int> pos_;   // scratch: vertex -> index in the joint pending list
};

/// Options for a singleton U = {v}: unused, reserved (cell allows it), or owed two edges.
std::vector<Signature> singleton_signatures(const UnitDiskGraph& g, const CellIndex& cells, int v);

struct DPOptions {
    Mode mode = Mode::Standard;
    int z = 3;
    long long cap = -1;              // pending vertices per cell; negative: 3 beta^2
    std::size_t state_budget = 4000000;
    bool keep_tables = false;        // keep every node's signatures for inspection
    int lower_bound = 0;             // drop states that cannot reach this many cycles
    bool symmetry = true;            // standard mode: one state per orbit under swapping twins
};

struct DPStats {
    int steps = 0;
    std::size_t total_states = 0, max_states = 0;
    long long pruned = 0;            // refined combinations rejected
    long long bounded = 0;           // states dropped against the lower bound
    long long unknown_exits = 0;     // refined: exits without a boundary coordinate
    int completion_added = 0;        // triangles added after traceback (0 for an exact run)
    double seconds = 0;
    long long cap = 0;
};

struct DPRun {
    int value = 0;                   // -1: every state fell below the lower bound
    std::vector<Cycle> cycles;
    DPStats stats;
    std::vector<std::vector<Signature>> tables;  // per sc node, when kept
};

/// Exact maximum cycle packing by dynamic programming over the sc-decomposition.
DPRun run_dp(const Pipeline& p, const DPOptions& opt = {});

/// Signatures of the table at one sc node (runs the DP with tables kept).
std::vector<Signature> enumerate_valid_tuples(const Pipeline& p, int node, Mode mode = Mode::Standard, int z = 3);

/// Refined filter: exits of paths concretized at one merge, as boundary
/// coordinates of the child piece. Same-circle pairings must be K_{z,z}-free;
/// pairs across two circles need a 2-colouring with K_{z,z}-free cross-ordered
/// graph in each class.
struct BoundaryPair {
    int circle_a = 0, circle_b = 0;
    double pos_a = 0, pos_b = 0;
};
bool refined_pairs_ok(const std::vector<BoundaryPair>& pairs, int z);

struct SolveOptions {
    Mode mode = Mode::Standard;
    int z = 3;
    long long cap = -1;
    bool dense_shortcut = true;
    DenseOptions dense;
    PipelineOptions pipeline;
    std::size_t state_budget = 4000000;
};

struct SolveStats {
    int n = 0, m = 0, cleaned_n = 0, cleaned_m = 0;
    bool dense = false;
    bool z_too_small = false;
    double width = 0;
    double pipeline_seconds = 0, dp_seconds = 0;
    DPStats dp;
};

struct SolveResult {
    bool feasible = false;
    int value = -1;                  // max packing size; -1 when the dense shortcut answered
    std::vector<Cycle> cycles;       // k cycles when feasible, else an optimal packing
    SolveStats stats;
};

SolveResult solve(const UnitDiskGraph& g, int k, const SolveOptions& opt = {});

std::string certificate_json(const SolveResult& r, int k);
std::string stats_json(const SolveResult& r);

}  // namespace udgcp
