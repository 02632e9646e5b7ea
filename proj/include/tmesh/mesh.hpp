#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmesh/exact.hpp"

namespace tmesh {

enum class Orient { H, V };

struct Point {
    Rational x, y;
    auto operator<=>(const Point& o) const
    {
        if (int c = cmp(x, o.x)) return c <=> 0;
        return cmp(y, o.y) <=> 0;
    }
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

struct Domain {
    Rational x0, y0, x1, y1;
};

// A horizontal segment lies on y = line over [lo, hi]; a vertical one on x = line.
struct Segment {
    Rational line, lo, hi;
    bool operator==(const Segment& o) const
    {
        return line == o.line && lo == o.lo && hi == o.hi;
    }
};

struct TMesh {
    Domain domain;
    std::vector<Segment> hsegments;
    std::vector<Segment> vsegments;
};

enum class EdgeKind { CrossCut, Ray, TEdge, Boundary };
const char* kind_name(EdgeKind k);

struct LEdge {
    Orient orient;
    Rational line;
    Rational lo, hi;
    EdgeKind kind;
    std::vector<Rational> vertices;  // coordinates along the edge, increasing

    Point at(const Rational& s) const
    {
        return orient == Orient::H ? Point{s, line} : Point{line, s};
    }
};

enum class VertexRole { Mono, Multi, Off };

struct Vertex {
    Point pos;
    bool interior;
    VertexRole role;
};

struct TComponent {
    std::vector<LEdge> edges;
    std::vector<std::vector<std::size_t>> blocks;
};

struct IntegralTComponent {
    std::vector<LEdge> t_edges;
    std::vector<LEdge> associated;
};

struct GEdge {
    Orient orient;
    Rational line;
    std::vector<Rational> vertices;

    Point at(const Rational& s) const
    {
        return orient == Orient::H ? Point{s, line} : Point{line, s};
    }
    const Rational& lo() const { return vertices.front(); }
    const Rational& hi() const { return vertices.back(); }
};

struct Intersection {
    std::size_t a, b;
    Point pos;
};

// Generalized T-connected component: edges with explicit vertex lists and no
// ambient mesh.
struct GT {
    std::vector<GEdge> edges;

    std::vector<Intersection> intersections() const;
    // For each edge, for each vertex, the other edges passing through it.
    std::vector<std::vector<std::vector<std::size_t>>> incidence() const;
    // Throws InvalidGeometry on unsorted vertices, overlapping collinear edges,
    // or a crossing missing from a vertex list.
    void check() const;
    std::vector<Point> points() const;
};

struct MeshStats {
    std::size_t c = 0, t = 0, n_v = 0, rays = 0;
};

struct ValidationIssue {
    std::string kind;  // "dangling-endpoint", "l-corner", "non-rectangular-cell", "overlap", ...
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

TMesh parse_mesh(const std::string& json_text);
// Schema only; no normalization or axiom checks.
TMesh parse_mesh_unchecked(const std::string& json_text);
std::string mesh_to_json(const TMesh& m);

// Sorts and merges touching collinear segments. Throws ParseError on overlap or
// segments leaving the domain or lying on its boundary.
TMesh normalize(TMesh m);

ValidationReport validate(const TMesh& m);

// Horizontal l-edges ordered by (y, x-start), then vertical ones by (x, y-start).
// Boundary l-edges included.
std::vector<LEdge> extract_l_edges(const TMesh& m);
std::vector<Vertex> vertices(const TMesh& m);
MeshStats mesh_stats(const TMesh& m);
TComponent t_component(const TMesh& m);
IntegralTComponent integral_component(const TMesh& m);
GT to_generalized(const TComponent& tc);
GT to_generalized(const TComponent& tc, const std::vector<std::size_t>& edge_subset);

GT parse_gt(const std::string& json_text);
std::string gt_to_json(const GT& g);

// t-edges with n(l) <= d+1
std::vector<std::size_t> vanishable_edges(const GT& g, std::size_t d);

struct RandomMeshParams {
    std::size_t refine_steps = 0;
    std::size_t degree = 0;  // 0 disables the vanishable-edge floor
    std::size_t lattice = 12;
};

TMesh random_mesh(std::uint64_t seed, const RandomMeshParams& params);

// Full-length cross-cuts plus a box of mutually crossing t-edges holding at most
// degree-2 cuts, so that non-diagonalizable components are common.
TMesh random_woven_mesh(std::uint64_t seed, std::size_t degree, std::size_t lattice = 16);

}  // namespace tmesh
