#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmesh/exact.hpp"
#include "tmesh/mesh.hpp"
#include "tmesh/partition.hpp"

namespace tmesh {

// Symmetries of the rectangle applied to the rank-encoded mesh.
enum class Transform { Identity, Transpose, Rot90, Rot180, Rot270, MirrorX, MirrorY, AntiTranspose };
const char* transform_name(Transform t);
bool swaps_axes(Transform t);

struct IsoMap {
    Transform transform;
    // (index in extract_l_edges(a), index in extract_l_edges(b)), boundary edges included
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

std::optional<IsoMap> structurally_isomorphic(const TMesh& a, const TMesh& b);

enum class SearchStatus { Found, None, BudgetExceeded };

struct SimilarityResult {
    SearchStatus status;
    std::vector<std::size_t> map;  // edge i of a -> map[i] of b
    std::size_t nodes = 0;
};

SimilarityResult structurally_similar(const GT& a, const GT& b, std::size_t budget = 1000000);

struct MultiVertexGraph {
    struct Node {
        Point pos;
        std::size_t h_edge, v_edge;  // GT edge indices
    };
    struct Arc {
        std::size_t u, v, edge;
    };
    std::vector<Node> nodes;
    std::vector<Arc> arcs;
};

// Nonempty CNDC whose edges all carry at least d+2 vertices, the setting in
// which every multi-vertex has degree >= 2 and a key cycle exists.
bool key_cycle_applicable(const GT& g, const EdgeSet& cndc, std::size_t d);

// Throws ConsistencyError when a node has degree < 2 in a nonempty graph.
MultiVertexGraph multi_vertex_graph(const GT& g, const EdgeSet& cndc);

struct KeyCycle {
    std::vector<std::size_t> edges;       // GT indices, cyclic order
    std::vector<GEdge> geometry;          // the edges themselves
    std::vector<Point> shared;            // shared[i] = l_i meet l_{i+1}
    std::vector<Rational> from, to;       // along-edge coordinates of shared[i-1], shared[i]
    std::vector<std::vector<Rational>> monos;  // other vertices of each edge
};

std::optional<KeyCycle> minimal_key_cycle(const GT& g, const MultiVertexGraph& mvg);
KeyCycle make_key_cycle(const GT& g, const std::vector<std::size_t>& cyclic_edges);
bool has_key_pattern(const GT& g, const std::vector<std::size_t>& cyclic_edges);

// |1 - prod_i lagrange_ratio(monos_i, from_i, to_i)|; empty when some edge
// does not carry exactly d+2 vertices.
std::optional<Rational> key_cycle_det(const KeyCycle& kc, std::size_t d);
// Columns: monos of each edge in cycle order, then the shared vertices.
ExactMatrix assemble_key_matrix(const KeyCycle& kc, std::size_t d);
// e x e matrix left after eliminating the mono columns block by block via rref.
ExactMatrix reduced_key_matrix(const KeyCycle& kc, std::size_t d);

struct WitnessTarget {
    std::size_t edge;
    Rational coord;
};

struct WitnessOptions {
    std::optional<WitnessTarget> target;
    std::uint64_t seed = 0;
    std::size_t budget = 1000;
    std::size_t max_denominator = 6;
};

enum class WitnessStatus { StableByDiagonalizability, WitnessFound, Inconclusive };
enum class WitnessMethod { None, ClosedForm, Sampled };
const char* status_name(WitnessStatus s);
const char* method_name(WitnessMethod m);

struct Perturbation {
    std::size_t edge;
    Rational original, replacement;
};

struct WitnessReport {
    WitnessStatus status = WitnessStatus::Inconclusive;
    WitnessMethod method = WitnessMethod::None;
    std::vector<std::size_t> cycle;
    std::optional<std::size_t> target_edge;
    std::optional<Rational> original, witness, k;
    std::size_t rank_before = 0, rank_after = 0;
    std::size_t key_rank_before = 0, key_rank_after = 0;
    std::vector<Perturbation> perturbations;  // every coordinate change, target last
    std::size_t attempts = 0;
    std::optional<GT> witnessed;
};

WitnessReport witness_search(const GT& g, std::size_t d, const WitnessOptions& opts = {});

std::map<std::size_t, std::size_t> sample_similar(const GT& g, std::size_t d, std::size_t n,
                                                  std::uint64_t seed,
                                                  std::size_t max_denominator = 6);

// Seeded GT whose edges form a chordless cycle of e edges carrying d mono-vertices each.
GT random_key_cycle_gt(std::uint64_t seed, std::size_t e, std::size_t d);

}  // namespace tmesh
