#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tmesh/conformality.hpp"
#include "tmesh/stability.hpp"

using namespace tmesh;

namespace {

TMesh map_mesh(const TMesh& m, const std::function<Point(const Point&)>& f)
{
    TMesh out;
    Point a = f({m.domain.x0, m.domain.y0}), b = f({m.domain.x1, m.domain.y1});
    out.domain = {std::min<Rational>(a.x, b.x), std::min<Rational>(a.y, b.y), std::max<Rational>(a.x, b.x), std::max<Rational>(a.y, b.y)};
    auto add = [&](Point p, Point q) {
        if (p.y == q.y)
            out.hsegments.push_back({p.y, std::min<Rational>(p.x, q.x), std::max<Rational>(p.x, q.x)});
        else
            out.vsegments.push_back({p.x, std::min<Rational>(p.y, q.y), std::max<Rational>(p.y, q.y)});
    };
    for (const auto& s : m.hsegments) add(f({s.lo, s.line}), f({s.hi, s.line}));
    for (const auto& s : m.vsegments) add(f({s.line, s.lo}), f({s.line, s.hi}));
    return normalize(out);
}

TMesh rotate90(const TMesh& m) { return map_mesh(m, [](const Point& p) { return Point{-p.y, p.x}; }); }

bool meets(const LEdge& a, const LEdge& b)
{
    return oracle::edges_meet(GEdge{a.orient, a.line, {a.lo, a.hi}}, GEdge{b.orient, b.line, {b.lo, b.hi}});
}

// Independent check of the isomorphism axioms for a returned edge map.
bool valid_iso(const TMesh& a, const TMesh& b, const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
{
    auto ea = extract_l_edges(a), eb = extract_l_edges(b);
    if (pairs.size() != ea.size() || ea.size() != eb.size()) return false;
    std::vector<std::size_t> f(ea.size(), eb.size());
    std::set<std::size_t> image;
    for (auto [i, j] : pairs) f[i] = j, image.insert(j);
    if (image.size() != eb.size()) return false;
    bool swapped = ea[0].orient != eb[f[0]].orient;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].kind != eb[f[i]].kind) return false;
        if ((ea[i].orient != eb[f[i]].orient) != swapped) return false;
        for (std::size_t j = 0; j < ea.size(); ++j) {
            if (meets(ea[i], ea[j]) != meets(eb[f[i]], eb[f[j]])) return false;
            // order along the transversal axis is preserved or reversed as a whole
            if (ea[i].orient == ea[j].orient && ea[i].line < ea[j].line && eb[f[i]].line == eb[f[j]].line)
                return false;
        }
    }
    return true;
}

std::vector<std::size_t> as_function(const IsoMap& m)
{
    std::vector<std::size_t> f(m.edges.size());
    for (auto [i, j] : m.edges) f[i] = j;
    return f;
}

// Smallest cycle length, then lexicographically smallest edge sequence, by enumeration.
std::vector<std::size_t> brute_key_cycle(const GT& g, const EdgeSet& cndc)
{
    for (std::size_t len = 4; len <= cndc.size(); len += 2) {
        std::vector<std::size_t> seq;
        std::vector<std::size_t> best;
        std::function<void()> rec = [&] {
            if (!best.empty()) return;
            if (seq.size() == len) {
                for (std::size_t i = 0; i < len; ++i)
                    for (std::size_t j = i + 1; j < len; ++j) {
                        bool consecutive = j == i + 1 || (i == 0 && j == len - 1);
                        if (consecutive != oracle::edges_meet(g.edges[seq[i]], g.edges[seq[j]])) return;
                    }
                best = seq;
                return;
            }
            for (auto e : cndc) {
                if (std::find(seq.begin(), seq.end(), e) != seq.end()) continue;
                seq.push_back(e);
                rec();
                seq.pop_back();
            }
        };
        rec();
        if (!best.empty()) return best;
    }
    return {};
}

KeyCycle cycle_of(const GT& g, std::size_t d)
{
    auto cp = complete_partition(g, d);
    auto kc = minimal_key_cycle(g, multi_vertex_graph(g, cp.cndc));
    REQUIRE(kc.has_value());
    return *kc;
}

// |det M| / prod_i |det V(monos_i, from_i)| leaves the reduced determinant.
Rational det_by_division(const KeyCycle& kc, std::size_t d)
{
    Rational q = abs(det(assemble_key_matrix(kc, d)));
    for (std::size_t i = 0; i < kc.edges.size(); ++i) {
        auto nodes = kc.monos[i];
        nodes.push_back(kc.from[i]);
        q /= abs(det(vandermonde(nodes, d)));
    }
    return q;
}

}  // namespace

TEST_CASE("isomorphism of fixtures")
{
    auto k = fixture_mesh("mesh_k.json");
    auto self = structurally_isomorphic(k, k);
    REQUIRE(self);
    CHECK(self->transform == Transform::Identity);
    for (auto [i, j] : self->edges) CHECK(i == j);

    auto stretched = map_mesh(k, [](const Point& p) { return Point{2 * p.x, p.y}; });
    auto st = structurally_isomorphic(k, stretched);
    REQUIRE(st);
    CHECK(st->transform == Transform::Identity);
    CHECK(valid_iso(k, stretched, st->edges));

    auto rot = structurally_isomorphic(k, rotate90(k));
    REQUIRE(rot);
    CHECK(swaps_axes(rot->transform));
    CHECK(valid_iso(k, rotate90(k), rot->edges));

    auto t1 = fixture_mesh("sic_t1.json"), t2 = fixture_mesh("sic_t2.json");
    auto sic = structurally_isomorphic(t1, t2);
    REQUIRE(sic);
    CHECK(swaps_axes(sic->transform));
    CHECK(valid_iso(t1, t2, sic->edges));

    CHECK_FALSE(structurally_isomorphic(grid_mesh(2, 2), k));
    CHECK_FALSE(structurally_isomorphic(k, fixture_mesh("mesh_g.json")));

    TMesh bad;
    bad.domain = {0, 0, 4, 4};
    bad.hsegments = {{2, 0, 3}};
    CHECK_THROWS_AS(structurally_isomorphic(bad, k), InvalidGeometry);
}

TEST_CASE("isomorphism is an equivalence on random meshes")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto a = random_mesh(seed, {seed % 20, 0, 12});
        auto b = rotate90(map_mesh(a, [](const Point& p) { return Point{p.x * 3, p.y + 1}; }));
        auto c = rotate90(b);

        auto aa = structurally_isomorphic(a, a);
        REQUIRE(aa);
        REQUIRE(valid_iso(a, a, aa->edges));
        auto ab = structurally_isomorphic(a, b), ba = structurally_isomorphic(b, a);
        REQUIRE(ab);
        REQUIRE(ba);
        REQUIRE(valid_iso(a, b, ab->edges));
        REQUIRE(valid_iso(b, a, ba->edges));
        auto bc = structurally_isomorphic(b, c);
        REQUIRE(bc);
        auto fab = as_function(*ab), fbc = as_function(*bc);
        std::vector<std::pair<std::size_t, std::size_t>> composed;
        for (std::size_t i = 0; i < fab.size(); ++i) composed.emplace_back(i, fbc[fab[i]]);
        REQUIRE(valid_iso(a, c, composed));
        REQUIRE(structurally_isomorphic(a, c));

        auto sa = mesh_stats(a), sb = mesh_stats(b);
        REQUIRE(sa.c == sb.c);
        REQUIRE(sa.rays == sb.rays);
        REQUIRE(sa.t == sb.t);
        REQUIRE(sa.n_v == sb.n_v);
    }
}

TEST_CASE("structural similarity")
{
    auto a = component_of(fixture_mesh("similar_t1.json"));
    auto b = component_of(fixture_mesh("similar_t2.json"));
    auto self = structurally_similar(a, a);
    REQUIRE(self.status == SearchStatus::Found);
    REQUIRE(self.map.size() == a.edges.size());

    auto ab = structurally_similar(a, b);
    REQUIRE(ab.status == SearchStatus::Found);
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        CHECK(a.edges[i].vertices.size() == b.edges[ab.map[i]].vertices.size());
        for (std::size_t j = 0; j < a.edges.size(); ++j)
            CHECK(oracle::edges_meet(a.edges[i], a.edges[j]) == oracle::edges_meet(b.edges[ab.map[i]], b.edges[ab.map[j]]));
    }

    // one extra vertex on one edge breaks it
    auto c = b;
    auto& vs = c.edges[0].vertices;
    vs.push_back((vs[0] + vs[1]) / 2);
    std::sort(vs.begin(), vs.end());
    CHECK(structurally_similar(a, c).status == SearchStatus::None);

    GT five{{GEdge{Orient::H, 0, {0, 1, 2, 3, 4}}}}, six{{GEdge{Orient::H, 0, {0, 1, 2, 3, 4, 5}}}};
    CHECK(structurally_similar(five, six).status == SearchStatus::None);
    CHECK(structurally_similar(a, b, 0).status == SearchStatus::BudgetExceeded);
}

TEST_CASE("multi-vertex graph")
{
    auto k = component_of(fixture_mesh("mesh_k.json"));
    CHECK(multi_vertex_graph(k, {}).nodes.empty());

    auto g = component_of(fixture_mesh("mesh_g.json"));
    auto mg = multi_vertex_graph(g, complete_partition(g, 2).cndc);
    std::set<Point> pos;
    for (const auto& n : mg.nodes) pos.insert(n.pos);
    CHECK(pos == std::set<Point>{{4, 9}, {6, 9}, {4, 8}, {5, 8}, {6, 8}, {4, 5}, {5, 5}, {6, 5}});

    auto mk = multi_vertex_graph(k, complete_partition(k, 3).cndc);
    CHECK(mk.nodes.size() == 4);
    CHECK(mk.arcs.size() == 4);
    std::map<std::size_t, int> degree;
    for (const auto& a : mk.arcs) ++degree[a.u], ++degree[a.v];
    for (const auto& [n, deg] : degree) CHECK(deg == 2);
    // adjacency from coordinates: arcs join nodes sharing an x or a y
    for (const auto& a : mk.arcs) {
        const auto &p = mk.nodes[a.u].pos, &q = mk.nodes[a.v].pos;
        CHECK((p.x == q.x || p.y == q.y));
    }

    // a dangling multi-vertex is a consistency error
    GT open{{GEdge{Orient::H, 0, {0, 1, 2}}, GEdge{Orient::V, 1, {-1, 0, 1}}}};
    CHECK_THROWS_AS(multi_vertex_graph(open, {0, 1}), ConsistencyError);
}

TEST_CASE("minimal key cycle")
{
    CHECK_FALSE(minimal_key_cycle(GT{}, MultiVertexGraph{}));

    auto k = component_of(fixture_mesh("mesh_k.json"));
    auto kc = cycle_of(k, 3);
    CHECK(kc.edges == std::vector<std::size_t>{0, 2, 1, 3});
    std::set<std::size_t> set(kc.edges.begin(), kc.edges.end());
    CHECK(set == std::set<std::size_t>{0, 1, 2, 3});
    CHECK(kc.edges == brute_key_cycle(k, {0, 1, 2, 3}));

    auto g = component_of(fixture_mesh("mesh_g.json"));
    auto gc = cycle_of(g, 2);
    CHECK(gc.edges.size() == 4);
    CHECK(has_key_pattern(g, gc.edges));
    CHECK(gc.edges == brute_key_cycle(g, complete_partition(g, 2).cndc));
}

TEST_CASE("key cycle determinant")
{
    auto k = component_of(fixture_mesh("mesh_k.json"));
    auto kc = cycle_of(k, 3);
    const Rational x2 = 2, x4 = 4, x5 = 5, x7 = 7;
    Rational closed = abs(Rational((x4 - x2) * (x5 - x7) / ((x4 - x7) * (x5 - x2)) - 1));
    CHECK(closed == Rational(5, 9));
    CHECK(key_cycle_det(kc, 3) == Rational(5, 9));
    CHECK(abs(det(reduced_key_matrix(kc, 3))) == Rational(5, 9));
    CHECK(det_by_division(kc, 3) == Rational(5, 9));
    CHECK_FALSE(key_cycle_det(kc, 2));

    // every ratio alternates 2, 2, 1/2, 1/2 so the product is 1
    GT sym{{GEdge{Orient::H, 0, {-1, 0, 1}}, GEdge{Orient::V, 1, {-1, 0, 1}}, GEdge{Orient::H, 1, {-1, 0, 1}},
            GEdge{Orient::V, 0, {-1, 0, 1}}}};
    REQUIRE_NOTHROW(sym.check());
    auto sc = make_key_cycle(sym, {0, 1, 2, 3});
    CHECK(key_cycle_det(sc, 1) == 0);
    CHECK(rank(assemble_key_matrix(sc, 1)) == 7);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::size_t e = seed % 2 ? 6 : 4, d = 1 + seed % 3;
        auto rg = random_key_cycle_gt(seed, e, d);
        auto rc = cycle_of(rg, d);
        REQUIRE(rc.edges.size() == e);
        auto kd = key_cycle_det(rc, d);
        REQUIRE(kd);
        REQUIRE(*kd == abs(det(reduced_key_matrix(rc, d))));
        REQUIRE(*kd == det_by_division(rc, d));
    }
}

TEST_CASE("key matrix")
{
    auto k = component_of(fixture_mesh("mesh_k.json"));
    auto kc = cycle_of(k, 3);
    auto m = assemble_key_matrix(kc, 3);
    CHECK(m.rows() == 16);
    CHECK(m.cols() == 16);
    CHECK(rank(m) == 16);

    auto moved = k;
    auto& vs = moved.edges[1].vertices;  // y = 5
    REQUIRE(vs.back() == 7);
    vs.back() = 2;
    std::sort(vs.begin(), vs.end());
    CHECK(rank(assemble_key_matrix(make_key_cycle(moved, kc.edges), 3)) == 15);
    CHECK(conformality_rank(moved, 3) == 15);

    CHECK_THROWS_AS(make_key_cycle(k, {0, 2}), PreconditionError);
}

TEST_CASE("witness search")
{
    auto e = fixture_gt("three_edges_gt.json");
    CHECK(witness_search(e, 2).status == WitnessStatus::StableByDiagonalizability);

    auto k = component_of(fixture_mesh("mesh_k.json"));
    auto w = witness_search(k, 3, {});
    REQUIRE(w.status == WitnessStatus::WitnessFound);
    CHECK(w.method == WitnessMethod::ClosedForm);
    CHECK(w.target_edge == std::optional<std::size_t>(1));
    CHECK(w.original == std::optional<Rational>(7));
    CHECK(w.witness == std::optional<Rational>(2));
    CHECK(w.rank_before == 16);
    CHECK(w.rank_after == 15);
    CHECK(w.key_rank_after < w.key_rank_before);
    REQUIRE(w.witnessed);
    CHECK(conformality_rank(*w.witnessed, 3) == 15);
    CHECK(structurally_similar(k, *w.witnessed).status == SearchStatus::Found);

    WitnessOptions targeted;
    targeted.target = WitnessTarget{1, 7};
    auto wt = witness_search(k, 3, targeted);
    CHECK(wt.method == WitnessMethod::ClosedForm);
    CHECK(wt.witness == std::optional<Rational>(2));

    targeted.target = WitnessTarget{1, 5};  // multi-vertex, not a target
    CHECK_THROWS_AS(witness_search(k, 3, targeted), PreconditionError);

    // K = 1 at this target: the closed form has no root and sampling takes over
    auto k1 = fixture_gt("mesh_k_k1_gt.json");
    WitnessOptions opts;
    opts.target = WitnessTarget{1, 7};
    opts.seed = 3;
    auto ws = witness_search(k1, 3, opts);
    CHECK(ws.method == WitnessMethod::Sampled);
    REQUIRE(ws.status == WitnessStatus::WitnessFound);
    CHECK(ws.rank_after < ws.rank_before);
    CHECK(structurally_similar(k1, *ws.witnessed).status == SearchStatus::Found);
    CHECK(ws.perturbations.size() == 2);

    opts.budget = 0;
    auto wi = witness_search(k1, 3, opts);
    CHECK(wi.status == WitnessStatus::Inconclusive);
    CHECK(wi.rank_after == wi.rank_before);
}

TEST_CASE("witness reports hold on random components")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::size_t d = 2 + seed % 2;
        auto g = seed % 2 ? random_key_cycle_gt(seed, 4, d) : component_of(random_woven_mesh(seed, d));
        WitnessOptions opts;
        opts.seed = seed;
        opts.budget = 50;
        auto w = witness_search(g, d, opts);
        if (w.status != WitnessStatus::WitnessFound) continue;
        REQUIRE(conformality_rank(*w.witnessed, d) < conformality_rank(g, d));
        REQUIRE(structurally_similar(g, *w.witnessed).status == SearchStatus::Found);
    }
}

TEST_CASE("sampling the similar class")
{
    auto k = component_of(fixture_mesh("mesh_k.json"));
    auto h = sample_similar(k, 3, 500, 7);
    std::size_t total = 0;
    for (const auto& [r, c] : h) {
        CHECK((r == 15 || r == 16));
        total += c;
    }
    CHECK(total == 500);
    REQUIRE(h.count(16));
    CHECK(h.at(16) > (h.count(15) ? h.at(15) : 0));
    CHECK(sample_similar(k, 3, 500, 7) == h);

    auto one = sample_similar(k, 3, 1, 1);
    CHECK(one.size() == 1);
    CHECK(one.begin()->second == 1);
    CHECK_THROWS_AS(sample_similar(k, 3, 0, 1), PreconditionError);

    auto e = fixture_gt("three_edges_gt.json");
    auto he = sample_similar(e, 2, 50, 1);
    CHECK(he == std::map<std::size_t, std::size_t>{{9, 50}});
}
