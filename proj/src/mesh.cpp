#include "tmesh/mesh.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tmesh/json_util.hpp"

namespace tmesh {

const char* kind_name(EdgeKind k)
{
    switch (k) {
    case EdgeKind::CrossCut: return "cross-cut";
    case EdgeKind::Ray: return "ray";
    case EdgeKind::TEdge: return "t-edge";
    case EdgeKind::Boundary: return "boundary";
    }
    return "?";
}

namespace {

bool within(const Rational& v, const Rational& lo, const Rational& hi)
{
    return lo <= v && v <= hi;
}

std::string pt_str(const Rational& x, const Rational& y)
{
    return "(" + to_string(x) + ", " + to_string(y) + ")";
}

void check_against_domain(const Segment& s, bool horizontal, const Domain& d)
{
    const Rational& a0 = horizontal ? d.y0 : d.x0;
    const Rational& a1 = horizontal ? d.y1 : d.x1;
    const Rational& b0 = horizontal ? d.x0 : d.y0;
    const Rational& b1 = horizontal ? d.x1 : d.y1;
    std::string name = std::string(horizontal ? "hsegment y=" : "vsegment x=") + to_string(s.line);
    if (!(s.lo < s.hi)) throw ParseError(name + ": empty or reversed span");
    if (s.line < a0 || s.line > a1 || s.lo < b0 || s.hi > b1)
        throw ParseError(name + ": outside the domain");
    if (s.line == a0 || s.line == a1) throw ParseError(name + ": lies on the domain boundary");
}

std::vector<Segment> merge_collinear(std::vector<Segment> segs, bool horizontal)
{
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
        if (a.line != b.line) return a.line < b.line;
        return a.lo < b.lo;
    });
    std::vector<Segment> out;
    for (auto& s : segs) {
        if (!out.empty() && out.back().line == s.line && s.lo <= out.back().hi) {
            if (s.lo < out.back().hi)
                throw ParseError(std::string(horizontal ? "hsegments" : "vsegments") +
                                 " overlap on line " + to_string(s.line));
            out.back().hi = s.hi;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

// Full segment lists with the boundary sides included.
std::vector<Segment> all_h(const TMesh& m)
{
    std::vector<Segment> h = m.hsegments;
    h.push_back({m.domain.y0, m.domain.x0, m.domain.x1});
    h.push_back({m.domain.y1, m.domain.x0, m.domain.x1});
    return h;
}

std::vector<Segment> all_v(const TMesh& m)
{
    std::vector<Segment> v = m.vsegments;
    v.push_back({m.domain.x0, m.domain.y0, m.domain.y1});
    v.push_back({m.domain.x1, m.domain.y0, m.domain.y1});
    return v;
}

std::vector<Rational> crossings(const Segment& s, const std::vector<Segment>& perp)
{
    std::vector<Rational> out;
    for (const auto& p : perp)
        if (within(p.line, s.lo, s.hi) && within(s.line, p.lo, p.hi)) out.push_back(p.line);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t index_of(const std::vector<Rational>& sorted, const Rational& v)
{
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                    sorted.begin());
}

}  // namespace

TMesh normalize(TMesh m)
{
    const auto& d = m.domain;
    if (!(d.x0 < d.x1) || !(d.y0 < d.y1)) throw ParseError("degenerate domain");
    for (const auto& s : m.hsegments) check_against_domain(s, true, d);
    for (const auto& s : m.vsegments) check_against_domain(s, false, d);
    m.hsegments = merge_collinear(std::move(m.hsegments), true);
    m.vsegments = merge_collinear(std::move(m.vsegments), false);
    return m;
}

TMesh parse_mesh_unchecked(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        TMesh m;
        const auto& dom = doc.at("domain");
        m.domain = {rational_from_json(dom.at("x0")), rational_from_json(dom.at("y0")),
                    rational_from_json(dom.at("x1")), rational_from_json(dom.at("y1"))};
        for (const auto& s : doc.value("hsegments", json::array()))
            m.hsegments.push_back({rational_from_json(s.at("y")), rational_from_json(s.at("x0")),
                                   rational_from_json(s.at("x1"))});
        for (const auto& s : doc.value("vsegments", json::array()))
            m.vsegments.push_back({rational_from_json(s.at("x")), rational_from_json(s.at("y0")),
                                   rational_from_json(s.at("y1"))});
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("mesh schema violation: ") + e.what());
    }
}

TMesh parse_mesh(const std::string& json_text)
{
    TMesh m = normalize(parse_mesh_unchecked(json_text));
    auto report = validate(m);
    if (!report.ok()) throw ParseError("invalid T-mesh: " + report.issues.front().message);
    return m;
}

std::string mesh_to_json(const TMesh& m)
{
    json doc;
    doc["domain"] = {{"x0", rational_to_json(m.domain.x0)},
                     {"y0", rational_to_json(m.domain.y0)},
                     {"x1", rational_to_json(m.domain.x1)},
                     {"y1", rational_to_json(m.domain.y1)}};
    doc["hsegments"] = json::array();
    for (const auto& s : m.hsegments)
        doc["hsegments"].push_back({{"y", rational_to_json(s.line)},
                                    {"x0", rational_to_json(s.lo)},
                                    {"x1", rational_to_json(s.hi)}});
    doc["vsegments"] = json::array();
    for (const auto& s : m.vsegments)
        doc["vsegments"].push_back({{"x", rational_to_json(s.line)},
                                    {"y0", rational_to_json(s.lo)},
                                    {"y1", rational_to_json(s.hi)}});
    return doc.dump(2);
}

ValidationReport validate(const TMesh& input)
{
    ValidationReport rep;
    TMesh m;
    try {
        m = normalize(input);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        std::string kind = msg.find("overlap") != std::string::npos ? "overlap"
                           : msg.find("boundary") != std::string::npos ? "on-boundary"
                           : msg.find("domain") != std::string::npos ? "outside-domain"
                                                                      : "malformed";
        rep.issues.push_back({kind, msg});
        return rep;
    }
    const auto H = all_h(m), V = all_v(m);
    const auto& d = m.domain;

    // Endpoints must rest on a perpendicular segment.
    auto on_any = [](const Rational& line, const Rational& along, const std::vector<Segment>& perp) {
        for (const auto& p : perp)
            if (p.line == along && within(line, p.lo, p.hi)) return true;
        return false;
    };
    for (const auto& s : m.hsegments)
        for (const auto* e : {&s.lo, &s.hi})
            if (!on_any(s.line, *e, V))
                rep.issues.push_back({"dangling-endpoint", "hsegment y=" + to_string(s.line) +
                                                               " ends freely at " +
                                                               pt_str(*e, s.line)});
    for (const auto& s : m.vsegments)
        for (const auto* e : {&s.lo, &s.hi})
            if (!on_any(s.line, *e, H))
                rep.issues.push_back({"dangling-endpoint", "vsegment x=" + to_string(s.line) +
                                                               " ends freely at " +
                                                               pt_str(s.line, *e)});

    // Interior vertices need at least three arms.
    std::set<Point> pts;
    for (const auto& h : H)
        for (const auto& x : crossings(h, V)) pts.insert({x, h.line});
    for (const auto& p : pts) {
        if (p.x == d.x0 || p.x == d.x1 || p.y == d.y0 || p.y == d.y1) continue;
        int arms = 0;
        for (const auto& h : H)
            if (h.line == p.y && within(p.x, h.lo, h.hi)) arms += (h.lo < p.x) + (p.x < h.hi);
        for (const auto& v : V)
            if (v.line == p.x && within(p.y, v.lo, v.hi)) arms += (v.lo < p.y) + (p.y < v.hi);
        if (arms < 3)
            rep.issues.push_back({"l-corner", "vertex " + pt_str(p.x, p.y) + " has only " +
                                                  std::to_string(arms) + " arms"});
    }

    // Cells: flood fill on the grid spanned by every line coordinate.
    std::vector<Rational> xs, ys;
    for (const auto& v : V) xs.push_back(v.line);
    for (const auto& h : H) ys.push_back(h.line);
    for (auto* c : {&xs, &ys}) {
        std::sort(c->begin(), c->end());
        c->erase(std::unique(c->begin(), c->end()), c->end());
    }
    const std::size_t nx = xs.size() - 1, ny = ys.size() - 1;
    // wall_v[i][j]: wall on x = xs[i] between ys[j], ys[j+1]
    std::vector<std::vector<char>> wall_v(xs.size(), std::vector<char>(ny, 0));
    std::vector<std::vector<char>> wall_h(ys.size(), std::vector<char>(nx, 0));
    for (const auto& v : V) {
        std::size_t i = index_of(xs, v.line);
        for (std::size_t j = index_of(ys, v.lo); j < index_of(ys, v.hi); ++j) wall_v[i][j] = 1;
    }
    for (const auto& h : H) {
        std::size_t j = index_of(ys, h.line);
        for (std::size_t i = index_of(xs, h.lo); i < index_of(xs, h.hi); ++i) wall_h[j][i] = 1;
    }
    std::vector<std::vector<int>> face(nx, std::vector<int>(ny, -1));
    int nfaces = 0;
    for (std::size_t i0 = 0; i0 < nx; ++i0)
        for (std::size_t j0 = 0; j0 < ny; ++j0) {
            if (face[i0][j0] >= 0) continue;
            std::vector<std::pair<std::size_t, std::size_t>> stack{{i0, j0}};
            face[i0][j0] = nfaces;
            std::size_t count = 0, imin = i0, imax = i0, jmin = j0, jmax = j0;
            while (!stack.empty()) {
                auto [i, j] = stack.back();
                stack.pop_back();
                ++count;
                imin = std::min(imin, i), imax = std::max(imax, i);
                jmin = std::min(jmin, j), jmax = std::max(jmax, j);
                auto visit = [&](std::size_t a, std::size_t b) {
                    if (face[a][b] < 0) {
                        face[a][b] = nfaces;
                        stack.push_back({a, b});
                    }
                };
                if (i + 1 < nx && !wall_v[i + 1][j]) visit(i + 1, j);
                if (i > 0 && !wall_v[i][j]) visit(i - 1, j);
                if (j + 1 < ny && !wall_h[j + 1][i]) visit(i, j + 1);
                if (j > 0 && !wall_h[j][i]) visit(i, j - 1);
            }
            if (count != (imax - imin + 1) * (jmax - jmin + 1))
                rep.issues.push_back({"non-rectangular-cell",
                                      "cell containing " + pt_str(xs[i0], ys[j0]) +
                                          " is not a rectangle"});
            ++nfaces;
        }
    return rep;
}

std::vector<LEdge> extract_l_edges(const TMesh& m)
{
    const auto H = all_h(m), V = all_v(m);
    const auto& d = m.domain;
    std::vector<LEdge> out;
    auto classify = [](bool lo_b, bool hi_b) {
        if (lo_b && hi_b) return EdgeKind::CrossCut;
        if (lo_b || hi_b) return EdgeKind::Ray;
        return EdgeKind::TEdge;
    };
    std::vector<LEdge> hs, vs;
    for (std::size_t k = 0; k < H.size(); ++k) {
        const auto& s = H[k];
        EdgeKind kind = k >= m.hsegments.size() ? EdgeKind::Boundary
                                                : classify(s.lo == d.x0, s.hi == d.x1);
        hs.push_back({Orient::H, s.line, s.lo, s.hi, kind, crossings(s, V)});
    }
    for (std::size_t k = 0; k < V.size(); ++k) {
        const auto& s = V[k];
        EdgeKind kind = k >= m.vsegments.size() ? EdgeKind::Boundary
                                                : classify(s.lo == d.y0, s.hi == d.y1);
        vs.push_back({Orient::V, s.line, s.lo, s.hi, kind, crossings(s, H)});
    }
    auto by_pos = [](const LEdge& a, const LEdge& b) {
        if (a.line != b.line) return a.line < b.line;
        return a.lo < b.lo;
    };
    std::sort(hs.begin(), hs.end(), by_pos);
    std::sort(vs.begin(), vs.end(), by_pos);
    out = std::move(hs);
    out.insert(out.end(), vs.begin(), vs.end());
    return out;
}

std::vector<Vertex> vertices(const TMesh& m)
{
    const auto edges = extract_l_edges(m);
    std::map<Point, int> t_count;
    for (const auto& e : edges)
        for (const auto& s : e.vertices) {
            int& c = t_count[e.at(s)];
            if (e.kind == EdgeKind::TEdge) ++c;
        }
    const auto& d = m.domain;
    std::vector<Vertex> out;
    for (const auto& [p, c] : t_count) {
        bool interior = !(p.x == d.x0 || p.x == d.x1 || p.y == d.y0 || p.y == d.y1);
        VertexRole role = c >= 2 ? VertexRole::Multi : c == 1 ? VertexRole::Mono : VertexRole::Off;
        out.push_back({p, interior, role});
    }
    return out;
}

MeshStats mesh_stats(const TMesh& m)
{
    MeshStats st;
    for (const auto& e : extract_l_edges(m)) {
        if (e.kind == EdgeKind::CrossCut) ++st.c;
        if (e.kind == EdgeKind::Ray) ++st.rays;
        if (e.kind == EdgeKind::TEdge) ++st.t;
    }
    for (const auto& v : vertices(m)) st.n_v += v.interior;
    return st;
}

TComponent t_component(const TMesh& m)
{
    TComponent tc;
    for (auto& e : extract_l_edges(m))
        if (e.kind == EdgeKind::TEdge) tc.edges.push_back(std::move(e));
    const std::size_t n = tc.edges.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::map<Point, std::size_t> owner;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& s : tc.edges[i].vertices) {
            auto [it, fresh] = owner.emplace(tc.edges[i].at(s), i);
            if (!fresh) parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::size_t> block_of;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = block_of.emplace(find(i), tc.blocks.size());
        if (fresh) tc.blocks.emplace_back();
        tc.blocks[it->second].push_back(i);
    }
    return tc;
}

IntegralTComponent integral_component(const TMesh& m)
{
    IntegralTComponent ic;
    std::vector<LEdge> others;
    for (auto& e : extract_l_edges(m)) {
        if (e.kind == EdgeKind::TEdge)
            ic.t_edges.push_back(std::move(e));
        else if (e.kind != EdgeKind::Boundary)
            others.push_back(std::move(e));
    }
    std::set<Point> t_points;
    for (const auto& e : ic.t_edges)
        for (const auto& s : e.vertices) t_points.insert(e.at(s));
    for (auto& e : others) {
        bool meets = std::any_of(e.vertices.begin(), e.vertices.end(),
                                 [&](const Rational& s) { return t_points.count(e.at(s)) > 0; });
        if (meets) ic.associated.push_back(std::move(e));
    }
    return ic;
}

GT to_generalized(const TComponent& tc)
{
    std::vector<std::size_t> all(tc.edges.size());
    std::iota(all.begin(), all.end(), 0);
    return to_generalized(tc, all);
}

GT to_generalized(const TComponent& tc, const std::vector<std::size_t>& edge_subset)
{
    GT g;
    for (auto i : edge_subset) {
        const auto& e = tc.edges.at(i);
        g.edges.push_back({e.orient, e.line, e.vertices});
    }
    return g;
}

std::vector<Intersection> GT::intersections() const
{
    std::vector<Intersection> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& a = edges[i];
            const auto& b = edges[j];
            if (a.orient == b.orient || a.vertices.empty() || b.vertices.empty()) continue;
            if (within(b.line, a.lo(), a.hi()) && within(a.line, b.lo(), b.hi()))
                out.push_back({i, j, a.at(b.line)});
        }
    return out;
}

std::vector<std::vector<std::vector<std::size_t>>> GT::incidence() const
{
    std::vector<std::vector<std::vector<std::size_t>>> inc(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) inc[i].resize(edges[i].vertices.size());
    auto add = [&](std::size_t e, const Rational& s, std::size_t other) {
        const auto& v = edges[e].vertices;
        auto it = std::lower_bound(v.begin(), v.end(), s);
        if (it != v.end() && *it == s) inc[e][static_cast<std::size_t>(it - v.begin())].push_back(other);
    };
    for (const auto& x : intersections()) {
        add(x.a, edges[x.a].orient == Orient::H ? x.pos.x : x.pos.y, x.b);
        add(x.b, edges[x.b].orient == Orient::H ? x.pos.x : x.pos.y, x.a);
    }
    return inc;
}

void GT::check() const
{
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& v = edges[i].vertices;
        if (v.size() < 2)
            throw InvalidGeometry("edge " + std::to_string(i) + " has fewer than 2 vertices");
        for (std::size_t k = 1; k < v.size(); ++k)
            if (!(v[k - 1] < v[k]))
                throw InvalidGeometry("edge " + std::to_string(i) +
                                      ": vertices not strictly increasing");
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& a = edges[i];
            const auto& b = edges[j];
            if (a.orient == b.orient && a.line == b.line && a.lo() <= b.hi() && b.lo() <= a.hi())
                throw InvalidGeometry("edges " + std::to_string(i) + " and " + std::to_string(j) +
                                      " overlap");
        }
    for (const auto& x : intersections()) {
        for (auto e : {x.a, x.b}) {
            const auto& v = edges[e].vertices;
            const Rational& s = edges[e].orient == Orient::H ? x.pos.x : x.pos.y;
            if (!std::binary_search(v.begin(), v.end(), s))
                throw InvalidGeometry("crossing " + pt_str(x.pos.x, x.pos.y) +
                                      " missing from the vertex list of edge " +
                                      std::to_string(e));
        }
    }
}

std::vector<Point> GT::points() const
{
    std::set<Point> pts;
    for (const auto& e : edges)
        for (const auto& s : e.vertices) pts.insert(e.at(s));
    return {pts.begin(), pts.end()};
}

GT parse_gt(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    GT g;
    try {
        for (const auto& e : doc.at("edges")) {
            std::string o = e.at("orient").get<std::string>();
            if (o != "h" && o != "v") throw ParseError("orient must be \"h\" or \"v\"");
            GEdge ge{o == "h" ? Orient::H : Orient::V, rational_from_json(e.at("line")), {}};
            for (const auto& v : e.at("vertices")) ge.vertices.push_back(rational_from_json(v));
            g.edges.push_back(std::move(ge));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("GT schema violation: ") + e.what());
    }
    g.check();
    return g;
}

std::string gt_to_json(const GT& g)
{
    json doc;
    doc["edges"] = json::array();
    for (const auto& e : g.edges) {
        json verts = json::array();
        for (const auto& v : e.vertices) verts.push_back(rational_to_json(v));
        doc["edges"].push_back({{"orient", e.orient == Orient::H ? "h" : "v"},
                                {"line", rational_to_json(e.line)},
                                {"vertices", verts}});
    }
    return doc.dump(2);
}

std::vector<std::size_t> vanishable_edges(const GT& g, std::size_t d)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].vertices.size() <= d + 1) out.push_back(i);
    return out;
}

TMesh random_mesh(std::uint64_t seed, const RandomMeshParams& params)
{
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    const long L = static_cast<long>(std::max<std::size_t>(params.lattice, 4));
    TMesh m;
    m.domain = {0, 0, Rational(L), Rational(L)};
    for (auto* segs : {&m.hsegments, &m.vsegments}) {
        long k = uniform(1, 3);
        std::set<long> lines;
        while (static_cast<long>(lines.size()) < k) lines.insert(uniform(1, L - 1));
        for (long c : lines) segs->push_back({Rational(c), 0, Rational(L)});
    }
    m = normalize(std::move(m));

    std::size_t done = 0;
    const std::size_t max_attempts = 60 * params.refine_steps;
    for (std::size_t attempt = 0; attempt < max_attempts && done < params.refine_steps; ++attempt) {
        bool horizontal = uniform(0, 1) == 0;
        auto& mine = horizontal ? m.hsegments : m.vsegments;
        const auto perp = horizontal ? all_v(m) : all_h(m);
        Rational c(uniform(1, L - 1));
        Rational u = Rational(2 * uniform(0, L - 1) + 1, 2);
        if (std::any_of(mine.begin(), mine.end(), [&](const Segment& s) {
                return s.line == c && within(u, s.lo, s.hi);
            }))
            continue;
        std::vector<Rational> below, above;
        for (const auto& p : perp)
            if (within(c, p.lo, p.hi)) (p.line < u ? below : above).push_back(p.line);
        std::sort(below.rbegin(), below.rend());
        std::sort(above.begin(), above.end());
        std::size_t kl = static_cast<std::size_t>(uniform(1, 3));
        std::size_t kr = static_cast<std::size_t>(uniform(1, 3));
        Segment s{c, below[std::min(kl, below.size()) - 1], above[std::min(kr, above.size()) - 1]};

        TMesh trial = m;
        (horizontal ? trial.hsegments : trial.vsegments).push_back(s);
        try {
            trial = normalize(std::move(trial));
        } catch (const ParseError&) {
            continue;
        }
        if (!validate(trial).ok()) continue;
        if (params.degree > 0) {
            bool floor_ok = true;
            for (const auto& e : extract_l_edges(trial))
                if (e.kind == EdgeKind::TEdge && e.vertices.size() < params.degree + 2) floor_ok = false;
            if (!floor_ok) continue;
        }
        m = std::move(trial);
        ++done;
    }
    return m;
}

TMesh random_woven_mesh(std::uint64_t seed, std::size_t degree, std::size_t lattice)
{
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    const long L = static_cast<long>(std::max<std::size_t>(lattice, 12));
    const long inner_max = std::max<long>(0, static_cast<long>(degree) - 2);
    auto pick_lines = [&](long k, long lo, long hi, const std::set<long>& avoid) {
        std::vector<long> free;
        for (long c = lo; c <= hi; ++c)
            if (!avoid.count(c)) free.push_back(c);
        if (static_cast<long>(free.size()) < k) return std::vector<long>{};
        std::shuffle(free.begin(), free.end(), rng);
        free.resize(static_cast<std::size_t>(k));
        std::sort(free.begin(), free.end());
        return free;
    };
    // One axis of the weave: full cuts, a box [lo, hi] between two of them with
    // up to d-2 cuts inside, and the t-lines strictly inside the box.
    struct Axis {
        std::vector<long> cuts, stops, tlines;
    };
    auto make_axis = [&]() -> std::optional<Axis> {
        Axis ax;
        ax.cuts = pick_lines(uniform(3, 5), 1, L - 1, {});
        long n = static_cast<long>(ax.cuts.size());
        long inner = std::min(uniform(0, inner_max), n - 2);
        long i = uniform(0, n - 2 - inner);
        long lo = ax.cuts[static_cast<std::size_t>(i)], hi = ax.cuts[static_cast<std::size_t>(i + inner + 1)];
        ax.tlines = pick_lines(uniform(2, 3), lo + 1, hi - 1, {ax.cuts.begin(), ax.cuts.end()});
        if (ax.tlines.empty()) return std::nullopt;
        for (long c : ax.cuts)
            if (lo <= c && c <= hi) ax.stops.push_back(c);
        ax.stops.insert(ax.stops.end(), ax.tlines.begin(), ax.tlines.end());
        std::sort(ax.stops.begin(), ax.stops.end());
        return ax;
    };
    // Mostly the outermost stop, sometimes the next one in.
    auto end_stop = [&](const std::vector<long>& stops, bool low) {
        std::size_t k = uniform(0, 2) == 0 ? 1 : 0;
        return Rational(low ? stops[k] : stops[stops.size() - 1 - k]);
    };
    for (;;) {
        auto xs = make_axis(), ys = make_axis();
        if (!xs || !ys) continue;
        TMesh m;
        m.domain = {0, 0, Rational(L), Rational(L)};
        for (long c : ys->cuts) m.hsegments.push_back({Rational(c), 0, Rational(L)});
        for (long c : xs->cuts) m.vsegments.push_back({Rational(c), 0, Rational(L)});
        for (long c : ys->tlines) m.hsegments.push_back({Rational(c), end_stop(xs->stops, true), end_stop(xs->stops, false)});
        for (long c : xs->tlines) m.vsegments.push_back({Rational(c), end_stop(ys->stops, true), end_stop(ys->stops, false)});
        try {
            m = normalize(std::move(m));
        } catch (const ParseError&) {
            continue;
        }
        if (validate(m).ok()) return m;
    }
}

}  // namespace tmesh
