#pragma once

#include <vector>

#include "tmesh/exact.hpp"
#include "tmesh/mesh.hpp"

namespace tmesh {

using EdgeSet = std::vector<std::size_t>;

struct KPartition {
    std::vector<EdgeSet> parts;
    // Vertices of part i that are not on any edge of parts 0..i-1.
    std::vector<std::vector<Point>> reduced_vertices;
    // Per edge of the GT: vertex count after removing vertices shared with earlier parts.
    std::vector<std::size_t> reduced_count;
};

struct CompletePartition {
    EdgeSet cndc;      // sorted
    EdgeSet removed;   // removal sequence
    EdgeSet order;     // t-partition order of the removed edges with n(l_i bar) >= d+1
    std::size_t s() const { return cndc.size(); }
};

// Vertices of edge i not shared with any other edge in `within`.
std::size_t mono_count(const GT& g, std::size_t i, const std::vector<char>& within);

// Layered removal: every edge with m(l) >= d+1 about the current remainder is
// removed at once, then counts are recomputed.
CompletePartition complete_partition(const GT& g, std::size_t d);

// One edge at a time, sweeping in `sweep` order and recomputing after each removal.
CompletePartition complete_partition_sequential(const GT& g, std::size_t d, const EdgeSet& sweep);

struct Diagonalizability {
    bool diagonalizable;
    EdgeSet order;
};
Diagonalizability is_diagonalizable(const GT& g, std::size_t d);

KPartition k_partition(const GT& g, const std::vector<EdgeSet>& ordered_parts);

std::vector<ExactMatrix> phi_matrices(const GT& g, const KPartition& kp, std::size_t d);

struct RankIdentity {
    std::size_t lhs, rhs;
    bool holds;
};
RankIdentity rank_identity_check(const GT& g, std::size_t d);

GT sub_gt(const GT& g, const EdgeSet& edges);

}  // namespace tmesh
