#include "tmesh/conformality.hpp"

#include <algorithm>

#include "tmesh/partition.hpp"

namespace tmesh {

ConformalityMatrix build_matrix(const GT& g, std::size_t d)
{
    if (d < 1) throw PreconditionError("degree must be at least 1");
    ConformalityMatrix cm;
    cm.degree = d;
    cm.columns = g.points();
    cm.matrix = ExactMatrix(g.edges.size() * (d + 1), cm.columns.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        const std::size_t r0 = i * (d + 1);
        cm.row_blocks.push_back({i, r0});
        ExactMatrix v;
        try {
            v = vandermonde(e.vertices, d);
        } catch (const InvalidGeometry&) {
            throw InvalidGeometry("edge " + std::to_string(i) + " repeats a vertex coordinate");
        }
        for (std::size_t k = 0; k < e.vertices.size(); ++k) {
            auto it = std::lower_bound(cm.columns.begin(), cm.columns.end(), e.at(e.vertices[k]));
            auto col = static_cast<std::size_t>(it - cm.columns.begin());
            for (std::size_t p = 0; p <= d; ++p) cm.matrix(r0 + p, col) = v(p, k);
        }
    }
    return cm;
}

std::size_t conformality_rank(const GT& g, std::size_t d)
{
    return rank(build_matrix(g, d).matrix);
}

std::size_t cvs_dim(const GT& g, std::size_t d)
{
    auto cm = build_matrix(g, d);
    return cm.columns.size() - rank(cm.matrix);
}

Dimensions dimensions(const TMesh& m, std::size_t d)
{
    Dimensions out;
    out.stats = mesh_stats(m);
    const auto tc = t_component(m);
    for (const auto& block : tc.blocks) {
        GT g = to_generalized(tc, block);
        out.rank += conformality_rank(g, d);
        auto cp = complete_partition(g, d);
        out.s += cp.s();
        if (cp.s() > 0) out.rank_cndc += conformality_rank(sub_gt(g, cp.cndc), d);
        for (auto i : vanishable_edges(g, d)) {
            const auto& e = g.edges[i];
            out.warnings.push_back("vanishable t-edge " + std::string(e.orient == Orient::H ? "y=" : "x=") +
                                   to_string(e.line) + " has " + std::to_string(e.vertices.size()) +
                                   " vertices (<= d+1)");
        }
    }
    const auto& st = out.stats;
    // Signed arithmetic: the intermediate (c - t) may be negative.
    const long D = static_cast<long>(d) + 1;
    const long c = static_cast<long>(st.c), t = static_cast<long>(st.t),
               nv = static_cast<long>(st.n_v), s = static_cast<long>(out.s);
    out.spline = static_cast<std::size_t>(D * D + c * D + nv - static_cast<long>(out.rank));
    out.diagonalizable = out.s == 0;
    if (out.diagonalizable) out.diag = static_cast<std::size_t>(D * D + (c - t) * D + nv);
    out.via_cndc = static_cast<std::size_t>(D * D + (c + s - t) * D + nv -
                                            static_cast<long>(out.rank_cndc));
    return out;
}

std::size_t spline_dim(const TMesh& m, std::size_t d)
{
    const auto st = mesh_stats(m);
    const auto tc = t_component(m);
    std::size_t r = 0;
    for (const auto& block : tc.blocks) r += conformality_rank(to_generalized(tc, block), d);
    return (d + 1) * (d + 1) + st.c * (d + 1) + st.n_v - r;
}

std::size_t diag_dim(const TMesh& m, std::size_t d)
{
    const auto tc = t_component(m);
    for (const auto& block : tc.blocks)
        if (!is_diagonalizable(to_generalized(tc, block), d).diagonalizable)
            throw NotDiagonalizable("mesh is not diagonalizable for d=" + std::to_string(d));
    const auto st = mesh_stats(m);
    const long D = static_cast<long>(d) + 1;
    return static_cast<std::size_t>(D * D + (static_cast<long>(st.c) - static_cast<long>(st.t)) * D +
                                    static_cast<long>(st.n_v));
}

std::size_t dim_via_cndc(const TMesh& m, std::size_t d)
{
    return dimensions(m, d).via_cndc;
}

}  // namespace tmesh
