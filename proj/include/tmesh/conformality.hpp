#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tmesh/exact.hpp"
#include "tmesh/mesh.hpp"

namespace tmesh {

struct RowBlock {
    std::size_t edge;
    std::size_t first_row;
};

struct ConformalityMatrix {
    ExactMatrix matrix;
    std::vector<RowBlock> row_blocks;  // one block of d+1 rows per edge, input order
    std::vector<Point> columns;        // vertices, lexicographic by (x, y)
    std::size_t degree = 0;
};

// Rows p = 0..d of edge l read sum_i delta_i s_i^p = 0 over l's vertices,
// s_i the coordinate along l.
ConformalityMatrix build_matrix(const GT& g, std::size_t d);

std::size_t conformality_rank(const GT& g, std::size_t d);
std::size_t cvs_dim(const GT& g, std::size_t d);

struct Dimensions {
    MeshStats stats;
    std::size_t rank = 0;       // summed over connected blocks
    std::size_t spline = 0;     // (d+1)^2 + c(d+1) + n_v - rank
    bool diagonalizable = false;
    std::size_t diag = 0;       // (d+1)^2 + (c-t)(d+1) + n_v, when diagonalizable
    std::size_t s = 0;          // |CNDC|
    std::size_t rank_cndc = 0;
    std::size_t via_cndc = 0;   // (d+1)^2 + (c+s-t)(d+1) + n_v - rank(M_1)
    std::vector<std::string> warnings;
};

std::size_t spline_dim(const TMesh& m, std::size_t d);
std::size_t diag_dim(const TMesh& m, std::size_t d);  // throws NotDiagonalizable
std::size_t dim_via_cndc(const TMesh& m, std::size_t d);
Dimensions dimensions(const TMesh& m, std::size_t d);

}  // namespace tmesh
