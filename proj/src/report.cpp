#include "tmesh/report.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "tmesh/conformality.hpp"
#include "tmesh/partition.hpp"

namespace tmesh {

json edge_json(const GEdge& e)
{
    json verts = json::array();
    for (const auto& v : e.vertices) verts.push_back(rational_to_json(v));
    return {{"orient", e.orient == Orient::H ? "h" : "v"},
            {"line", rational_to_json(e.line)},
            {"vertices", verts}};
}

json edge_json(const LEdge& e)
{
    json j = edge_json(GEdge{e.orient, e.line, e.vertices});
    j["kind"] = kind_name(e.kind);
    return j;
}

namespace {

json index_list(const std::vector<std::size_t>& v)
{
    json a = json::array();
    for (auto i : v) a.push_back(i);
    return a;
}

json block_report(const GT& g, std::size_t d, bool dump_matrix)
{
    json b;
    b["edges"] = json::array();
    for (const auto& e : g.edges) b["edges"].push_back(edge_json(e));
    auto cm = build_matrix(g, d);
    std::size_t r = rank(cm.matrix);
    b["rank"] = r;
    b["cvs_dim"] = cm.columns.size() - r;
    auto cp = complete_partition(g, d);
    b["cndc"] = index_list(cp.cndc);
    b["diagonalizable"] = cp.cndc.empty();
    b["order"] = index_list(cp.order);
    b["key_cycle"] = nullptr;
    b["key_cycle_det"] = nullptr;
    if (key_cycle_applicable(g, cp.cndc, d)) {
        auto kc = minimal_key_cycle(g, multi_vertex_graph(g, cp.cndc));
        if (kc) {
            b["key_cycle"] = index_list(kc->edges);
            if (auto det = key_cycle_det(*kc, d)) b["key_cycle_det"] = to_string(*det);
        }
    }
    if (dump_matrix) {
        json m;
        m["rows"] = matrix_to_json(cm.matrix);
        m["row_blocks"] = json::array();
        for (const auto& rb : cm.row_blocks)
            m["row_blocks"].push_back({{"edge", rb.edge}, {"first_row", rb.first_row}, {"rows", d + 1}});
        m["columns"] = json::array();
        for (const auto& p : cm.columns)
            m["columns"].push_back(json::array({rational_to_json(p.x), rational_to_json(p.y)}));
        b["matrix"] = m;
    }
    return b;
}

}  // namespace

json dimension_report(const TMesh& m, std::size_t d)
{
    auto dims = dimensions(m, d);
    json j;
    j["degree"] = d;
    j["general"] = dims.spline;
    j["diagonal"] = dims.diagonalizable ? json(dims.diag) : json(nullptr);
    j["cndc"] = dims.via_cndc;
    return j;
}

json analyze_report(const TMesh& m, std::size_t d, bool dump_matrix)
{
    auto dims = dimensions(m, d);
    json j;
    j["degree"] = d;
    j["stats"] = {{"c", dims.stats.c}, {"t", dims.stats.t}, {"n_v", dims.stats.n_v},
                  {"rays", dims.stats.rays}};
    j["blocks"] = json::array();
    auto tc = t_component(m);
    for (const auto& blk : tc.blocks) j["blocks"].push_back(block_report(to_generalized(tc, blk), d, dump_matrix));
    j["rank"] = dims.rank;
    j["s"] = dims.s;
    j["diagonalizable"] = dims.diagonalizable;
    j["dimension"] = dimension_report(m, d);
    j["dimension"].erase("degree");
    j["warnings"] = dims.warnings;
    return j;
}

json partition_report(const GT& g, std::size_t d)
{
    auto cp = complete_partition(g, d);
    auto id = rank_identity_check(g, d);
    json j;
    j["degree"] = d;
    j["t"] = g.edges.size();
    j["s"] = cp.s();
    j["cndc"] = json::array();
    for (auto i : cp.cndc) j["cndc"].push_back({{"index", i}, {"edge", edge_json(g.edges[i])}});
    j["order"] = index_list(cp.order);
    j["diagonalizable"] = cp.cndc.empty();
    j["rank_identity"] = {{"lhs", id.lhs}, {"rhs", id.rhs}, {"holds", id.holds}};
    return j;
}

json validation_report(const ValidationReport& r)
{
    json j;
    j["valid"] = r.ok();
    j["issues"] = json::array();
    for (const auto& i : r.issues) j["issues"].push_back({{"kind", i.kind}, {"message", i.message}});
    return j;
}

json witness_report(const WitnessReport& w)
{
    json j;
    j["status"] = status_name(w.status);
    j["method"] = method_name(w.method);
    j["cycle"] = index_list(w.cycle);
    auto opt = [](const std::optional<Rational>& q) {
        return q ? rational_to_json(*q) : json(nullptr);
    };
    j["target_edge"] = w.target_edge ? json(*w.target_edge) : json(nullptr);
    j["original"] = opt(w.original);
    j["witness"] = opt(w.witness);
    j["k"] = opt(w.k);
    j["rank_before"] = w.rank_before;
    j["rank_after"] = w.rank_after;
    j["key_rank_before"] = w.key_rank_before;
    j["key_rank_after"] = w.key_rank_after;
    j["attempts"] = w.attempts;
    j["perturbations"] = json::array();
    for (const auto& p : w.perturbations)
        j["perturbations"].push_back({{"edge", p.edge},
                                      {"from", rational_to_json(p.original)},
                                      {"to", rational_to_json(p.replacement)}});
    j["witnessed"] = w.witnessed ? json::parse(gt_to_json(*w.witnessed)) : json(nullptr);
    return j;
}

json histogram_json(const std::map<std::size_t, std::size_t>& hist)
{
    json j = json::object();
    for (const auto& [r, c] : hist) j[std::to_string(r)] = c;
    return j;
}

json isomorphism_json(const std::optional<IsoMap>& m)
{
    json j;
    j["isomorphic"] = m.has_value();
    if (m) {
        j["transform"] = transform_name(m->transform);
        j["axis_swapped"] = swaps_axes(m->transform);
        j["map"] = json::array();
        for (const auto& [a, b] : m->edges) j["map"].push_back(json::array({a, b}));
    }
    return j;
}

json similarity_json(const SimilarityResult& r)
{
    json j;
    j["status"] = r.status == SearchStatus::Found  ? "similar"
                  : r.status == SearchStatus::None ? "not similar"
                                                   : "budget exceeded";
    j["nodes"] = r.nodes;
    if (r.status == SearchStatus::Found) j["map"] = index_list(r.map);
    return j;
}

std::string render_svg(const TMesh& m)
{
    const auto& d = m.domain;
    const double w = Rational(d.x1 - d.x0).get_d(), h = Rational(d.y1 - d.y0).get_d();
    const double scale = 600.0 / std::max(w, h), pad = 20.0;
    auto X = [&](const Rational& x) { return pad + Rational(x - d.x0).get_d() * scale; };
    auto Y = [&](const Rational& y) { return pad + Rational(d.y1 - y).get_d() * scale; };  // y up
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    const auto edges = extract_l_edges(m);
    const auto ic = integral_component(m);
    std::set<std::tuple<int, Rational, Rational>> assoc;
    for (const auto& e : ic.associated) assoc.insert({e.orient == Orient::H ? 0 : 1, e.line, e.lo});

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w * scale + 2 * pad)
       << "\" height=\"" << num(h * scale + 2 * pad) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& e : edges) {
        Point a = e.at(e.lo), b = e.at(e.hi);
        std::string style;
        if (e.kind == EdgeKind::TEdge)
            style = "stroke=\"#d62728\" stroke-width=\"3\"";
        else if (assoc.count({e.orient == Orient::H ? 0 : 1, e.line, e.lo}))
            style = "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"";
        else
            style = "stroke=\"black\" stroke-width=\"1.5\"";
        os << "<line class=\"" << kind_name(e.kind) << "\" x1=\"" << num(X(a.x)) << "\" y1=\""
           << num(Y(a.y)) << "\" x2=\"" << num(X(b.x)) << "\" y2=\"" << num(Y(b.y)) << "\" "
           << style << "/>\n";
    }
    for (const auto& v : vertices(m)) {
        if (v.role == VertexRole::Multi) {
            os << "<rect class=\"multi\" x=\"" << num(X(v.pos.x) - 4) << "\" y=\"" << num(Y(v.pos.y) - 4)
               << "\" width=\"8\" height=\"8\" fill=\"#1f77b4\"/>\n";
        } else if (v.role == VertexRole::Mono) {
            os << "<circle class=\"mono\" cx=\"" << num(X(v.pos.x)) << "\" cy=\"" << num(Y(v.pos.y))
               << "\" r=\"4\" fill=\"white\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace tmesh
