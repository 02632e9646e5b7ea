#include "tmesh/stability.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "tmesh/conformality.hpp"

namespace tmesh {

const char* transform_name(Transform t)
{
    switch (t) {
    case Transform::Identity: return "identity";
    case Transform::Transpose: return "transpose";
    case Transform::Rot90: return "rot90";
    case Transform::Rot180: return "rot180";
    case Transform::Rot270: return "rot270";
    case Transform::MirrorX: return "mirror-x";
    case Transform::MirrorY: return "mirror-y";
    case Transform::AntiTranspose: return "anti-transpose";
    }
    return "?";
}

bool swaps_axes(Transform t)
{
    return t == Transform::Transpose || t == Transform::Rot90 || t == Transform::Rot270 ||
           t == Transform::AntiTranspose;
}

const char* status_name(WitnessStatus s)
{
    switch (s) {
    case WitnessStatus::StableByDiagonalizability: return "stable-by-diagonalizability";
    case WitnessStatus::WitnessFound: return "witness-found";
    case WitnessStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* method_name(WitnessMethod m)
{
    switch (m) {
    case WitnessMethod::None: return "none";
    case WitnessMethod::ClosedForm: return "closed-form";
    case WitnessMethod::Sampled: return "sampled";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// structural isomorphism

namespace {

struct EncEdge {
    int orient;  // 0 horizontal, 1 vertical
    long line, lo, hi;
    int kind;
    auto operator<=>(const EncEdge&) const = default;
};

struct Encoded {
    long w = 0, h = 0;
    std::vector<EncEdge> edges;  // parallel to extract_l_edges
};

Encoded encode(const TMesh& m)
{
    auto ls = extract_l_edges(m);
    std::vector<Rational> xs, ys;
    for (const auto& e : ls) (e.orient == Orient::H ? ys : xs).push_back(e.line);
    for (auto* c : {&xs, &ys}) {
        std::sort(c->begin(), c->end());
        c->erase(std::unique(c->begin(), c->end()), c->end());
    }
    auto rk = [](const std::vector<Rational>& v, const Rational& q) {
        return static_cast<long>(std::lower_bound(v.begin(), v.end(), q) - v.begin());
    };
    Encoded enc;
    enc.w = static_cast<long>(xs.size()) - 1;
    enc.h = static_cast<long>(ys.size()) - 1;
    for (const auto& e : ls) {
        const auto& along = e.orient == Orient::H ? xs : ys;
        const auto& across = e.orient == Orient::H ? ys : xs;
        enc.edges.push_back({e.orient == Orient::H ? 0 : 1, rk(across, e.line), rk(along, e.lo),
                             rk(along, e.hi), static_cast<int>(e.kind)});
    }
    return enc;
}

std::pair<long, long> apply(Transform t, long x, long y, long w, long h)
{
    switch (t) {
    case Transform::Identity: return {x, y};
    case Transform::Transpose: return {y, x};
    case Transform::Rot90: return {h - y, x};
    case Transform::Rot180: return {w - x, h - y};
    case Transform::Rot270: return {y, w - x};
    case Transform::MirrorX: return {w - x, y};
    case Transform::MirrorY: return {x, h - y};
    case Transform::AntiTranspose: return {h - y, w - x};
    }
    return {x, y};
}

EncEdge transform_edge(Transform t, const EncEdge& e, long w, long h)
{
    auto p = e.orient == 0 ? std::pair{e.lo, e.line} : std::pair{e.line, e.lo};
    auto q = e.orient == 0 ? std::pair{e.hi, e.line} : std::pair{e.line, e.hi};
    p = apply(t, p.first, p.second, w, h);
    q = apply(t, q.first, q.second, w, h);
    if (p.second == q.second)
        return {0, p.second, std::min(p.first, q.first), std::max(p.first, q.first), e.kind};
    return {1, p.first, std::min(p.second, q.second), std::max(p.second, q.second), e.kind};
}

}  // namespace

std::optional<IsoMap> structurally_isomorphic(const TMesh& a, const TMesh& b)
{
    for (const auto* m : {&a, &b})
        if (!validate(*m).ok()) throw InvalidGeometry("structurally_isomorphic: invalid mesh");
    const Encoded ea = encode(a), eb = encode(b);
    if (ea.edges.size() != eb.edges.size()) return std::nullopt;
    std::map<EncEdge, std::size_t> index_b;
    for (std::size_t j = 0; j < eb.edges.size(); ++j) index_b[eb.edges[j]] = j;

    for (Transform t : {Transform::Identity, Transform::Transpose, Transform::Rot90,
                        Transform::Rot180, Transform::Rot270, Transform::MirrorX,
                        Transform::MirrorY, Transform::AntiTranspose}) {
        long w = swaps_axes(t) ? ea.h : ea.w;
        long h = swaps_axes(t) ? ea.w : ea.h;
        if (w != eb.w || h != eb.h) continue;
        IsoMap map{t, {}};
        for (std::size_t i = 0; i < ea.edges.size(); ++i) {
            auto it = index_b.find(transform_edge(t, ea.edges[i], ea.w, ea.h));
            if (it == index_b.end()) break;
            map.edges.emplace_back(i, it->second);
        }
        if (map.edges.size() == ea.edges.size()) return map;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// structural similarity

namespace {

std::vector<std::vector<char>> adjacency(const GT& g)
{
    std::vector<std::vector<char>> adj(g.edges.size(), std::vector<char>(g.edges.size(), 0));
    for (const auto& x : g.intersections()) adj[x.a][x.b] = adj[x.b][x.a] = 1;
    return adj;
}

}  // namespace

SimilarityResult structurally_similar(const GT& a, const GT& b, std::size_t budget)
{
    SimilarityResult res{SearchStatus::None, {}, 0};
    const std::size_t n = a.edges.size();
    if (b.edges.size() != n) return res;
    const auto A = adjacency(a), B = adjacency(b);
    auto deg = [](const std::vector<std::vector<char>>& adj, std::size_t i) {
        return static_cast<std::size_t>(std::count(adj[i].begin(), adj[i].end(), 1));
    };
    auto label = [&](const GT& g, const std::vector<std::vector<char>>& adj, std::size_t i) {
        return std::pair{g.edges[i].vertices.size(), deg(adj, i)};
    };
    {
        std::multiset<std::pair<std::size_t, std::size_t>> la, lb;
        for (std::size_t i = 0; i < n; ++i) la.insert(label(a, A, i)), lb.insert(label(b, B, i));
        if (la != lb) return res;
    }

    // Visit a's edges breadth-first so each new edge is constrained by mapped neighbours.
    std::vector<std::size_t> order;
    std::vector<char> seen(n, 0);
    for (;;) {
        std::size_t start = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i] && (start == n || deg(A, i) > deg(A, start))) start = i;
        if (start == n) break;
        std::deque<std::size_t> q{start};
        seen[start] = 1;
        while (!q.empty()) {
            auto i = q.front();
            q.pop_front();
            order.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (A[i][j] && !seen[j]) seen[j] = 1, q.push_back(j);
        }
    }

    std::vector<std::size_t> map(n, n);
    std::vector<char> used(n, 0);
    bool exceeded = false;
    std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
        if (k == n) return true;
        const std::size_t i = order[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || label(a, A, i) != label(b, B, j)) continue;
            if (++res.nodes > budget) {
                exceeded = true;
                return false;
            }
            bool ok = true;
            for (std::size_t kk = 0; kk < k && ok; ++kk) {
                std::size_t i2 = order[kk];
                ok = A[i][i2] == B[j][map[i2]];
            }
            if (!ok) continue;
            map[i] = j;
            used[j] = 1;
            if (place(k + 1)) return true;
            used[j] = 0;
            map[i] = n;
            if (exceeded) return false;
        }
        return false;
    };
    if (place(0)) {
        res.status = SearchStatus::Found;
        res.map = map;
    } else if (exceeded) {
        res.status = SearchStatus::BudgetExceeded;
    }
    return res;
}

// ---------------------------------------------------------------------------
// multi-vertex graph and key cycles

MultiVertexGraph multi_vertex_graph(const GT& g, const EdgeSet& cndc)
{
    MultiVertexGraph mvg;
    std::vector<char> in(g.edges.size(), 0);
    for (auto e : cndc) in.at(e) = 1;
    std::map<Point, std::size_t> node_at;
    for (const auto& x : g.intersections()) {
        if (!in[x.a] || !in[x.b]) continue;
        bool a_h = g.edges[x.a].orient == Orient::H;
        node_at.emplace(x.pos, 0);
        mvg.nodes.push_back({x.pos, a_h ? x.a : x.b, a_h ? x.b : x.a});
    }
    std::sort(mvg.nodes.begin(), mvg.nodes.end(),
              [](const auto& p, const auto& q) { return p.pos < q.pos; });
    for (std::size_t k = 0; k < mvg.nodes.size(); ++k) node_at[mvg.nodes[k].pos] = k;

    std::vector<std::size_t> degree(mvg.nodes.size(), 0);
    for (auto e : cndc) {
        const auto& edge = g.edges[e];
        std::vector<std::size_t> on;
        for (const auto& s : edge.vertices) {
            auto it = node_at.find(edge.at(s));
            if (it != node_at.end()) on.push_back(it->second);
        }
        for (std::size_t k = 1; k < on.size(); ++k) {
            mvg.arcs.push_back({on[k - 1], on[k], e});
            ++degree[on[k - 1]], ++degree[on[k]];
        }
    }
    for (std::size_t k = 0; k < degree.size(); ++k)
        if (degree[k] < 2)
            throw ConsistencyError("multi-vertex (" + to_string(mvg.nodes[k].pos.x) + ", " +
                                   to_string(mvg.nodes[k].pos.y) + ") has degree " +
                                   std::to_string(degree[k]));
    return mvg;
}

bool key_cycle_applicable(const GT& g, const EdgeSet& cndc, std::size_t d)
{
    return !cndc.empty() && std::all_of(cndc.begin(), cndc.end(), [&](std::size_t e) {
        return g.edges.at(e).vertices.size() >= d + 2;
    });
}

bool has_key_pattern(const GT& g, const std::vector<std::size_t>& cyc)
{
    const std::size_t e = cyc.size();
    if (e < 4 || e % 2) return false;
    std::set<std::pair<std::size_t, std::size_t>> meets;
    for (const auto& x : g.intersections()) meets.insert({x.a, x.b}), meets.insert({x.b, x.a});
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = i + 1; j < e; ++j) {
            bool consecutive = j == i + 1 || (i == 0 && j == e - 1);
            if (consecutive != static_cast<bool>(meets.count({cyc[i], cyc[j]}))) return false;
        }
    return true;
}

KeyCycle make_key_cycle(const GT& g, const std::vector<std::size_t>& cyc)
{
    const std::size_t e = cyc.size();
    if (e < 4 || e % 2) throw PreconditionError("key cycle needs an even number of edges >= 4");
    KeyCycle kc;
    kc.edges = cyc;
    for (auto i : cyc) kc.geometry.push_back(g.edges.at(i));
    auto meet = [](const GEdge& a, const GEdge& b) {
        if (a.orient == b.orient) throw PreconditionError("consecutive cycle edges are parallel");
        return a.orient == Orient::H ? Point{b.line, a.line} : Point{a.line, b.line};
    };
    auto along = [](const GEdge& a, const Point& p) { return a.orient == Orient::H ? p.x : p.y; };
    for (std::size_t i = 0; i < e; ++i) kc.shared.push_back(meet(kc.geometry[i], kc.geometry[(i + 1) % e]));
    for (std::size_t i = 0; i < e; ++i) {
        const auto& edge = kc.geometry[i];
        Rational from = along(edge, kc.shared[(i + e - 1) % e]);
        Rational to = along(edge, kc.shared[i]);
        std::vector<Rational> rest;
        for (const auto& s : edge.vertices)
            if (s != from && s != to) rest.push_back(s);
        if (rest.size() + 2 != edge.vertices.size())
            throw PreconditionError("cycle vertex missing from an edge's vertex list");
        kc.from.push_back(from);
        kc.to.push_back(to);
        kc.monos.push_back(std::move(rest));
    }
    return kc;
}

std::optional<KeyCycle> minimal_key_cycle(const GT& g, const MultiVertexGraph& mvg)
{
    std::set<std::size_t> label_set;
    std::map<std::size_t, std::set<std::size_t>> adj;
    for (const auto& nd : mvg.nodes) {
        adj[nd.h_edge].insert(nd.v_edge);
        adj[nd.v_edge].insert(nd.h_edge);
        label_set.insert(nd.h_edge), label_set.insert(nd.v_edge);
    }
    if (label_set.empty()) return std::nullopt;

    auto bfs = [&](std::size_t s) {
        std::map<std::size_t, std::size_t> dist{{s, 0}};
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            for (auto w : adj[u])
                if (!dist.count(w)) dist[w] = dist[u] + 1, q.push_back(w);
        }
        return dist;
    };
    // Girth of the edge-intersection graph.
    std::size_t girth = std::numeric_limits<std::size_t>::max();
    for (auto s : label_set) {
        std::map<std::size_t, std::size_t> dist{{s, 0}}, parent{{s, s}};
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            for (auto w : adj[u]) {
                if (!dist.count(w)) {
                    dist[w] = dist[u] + 1, parent[w] = u, q.push_back(w);
                } else if (parent[u] != w) {
                    girth = std::min(girth, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (girth == std::numeric_limits<std::size_t>::max()) return std::nullopt;

    // Lexicographically smallest cycle of that length.
    for (auto s : label_set) {
        auto dist = bfs(s);
        std::vector<std::size_t> path{s};
        std::set<std::size_t> on_path{s};
        std::function<bool()> extend = [&]() -> bool {
            auto u = path.back();
            if (path.size() == girth) return adj[u].count(s) > 0;
            for (auto w : adj[u]) {
                if (w <= s || on_path.count(w)) continue;
                auto it = dist.find(w);
                if (it == dist.end() || it->second > girth - path.size()) continue;
                path.push_back(w), on_path.insert(w);
                if (extend()) return true;
                path.pop_back(), on_path.erase(w);
            }
            return false;
        };
        if (extend()) {
            if (!has_key_pattern(g, path))
                throw ConsistencyError("minimal cycle violates the key-edge intersection pattern");
            return make_key_cycle(g, path);
        }
    }
    return std::nullopt;
}

std::optional<Rational> key_cycle_det(const KeyCycle& kc, std::size_t d)
{
    Rational p = 1;
    for (std::size_t i = 0; i < kc.edges.size(); ++i) {
        if (kc.monos[i].size() != d) return std::nullopt;
        p *= lagrange_ratio(kc.monos[i], kc.from[i], kc.to[i]);
    }
    return abs(Rational(1 - p));
}

namespace {

void require_admissible(const KeyCycle& kc, std::size_t d)
{
    const std::size_t e = kc.edges.size();
    if (e < 4 || e % 2) throw PreconditionError("key cycle needs an even number of edges >= 4");
    for (const auto& m : kc.monos)
        if (m.size() != d) throw PreconditionError("every key edge must carry exactly d+2 vertices");
}

}  // namespace

ExactMatrix assemble_key_matrix(const KeyCycle& kc, std::size_t d)
{
    require_admissible(kc, d);
    const std::size_t e = kc.edges.size();
    const std::size_t D = d + 1;
    ExactMatrix m(e * D, e * D);
    for (std::size_t i = 0; i < e; ++i) {
        auto put = [&](std::size_t col, const Rational& s) {
            Rational pw = 1;
            for (std::size_t r = 0; r < D; ++r, pw *= s) m(i * D + r, col) = pw;
        };
        for (std::size_t k = 0; k < d; ++k) put(i * d + k, kc.monos[i][k]);
        put(e * d + (i + e - 1) % e, kc.from[i]);
        put(e * d + i, kc.to[i]);
    }
    return m;
}

ExactMatrix reduced_key_matrix(const KeyCycle& kc, std::size_t d)
{
    require_admissible(kc, d);
    const std::size_t e = kc.edges.size();
    ExactMatrix out(e, e);
    for (std::size_t i = 0; i < e; ++i) {
        auto nodes = kc.monos[i];
        nodes.push_back(kc.from[i]);
        nodes.push_back(kc.to[i]);
        auto r = rref(vandermonde(nodes, d));
        out(i, (i + e - 1) % e) = r.matrix(d, d);
        out(i, i) = r.matrix(d, d + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// witnesses and sampling

namespace {

Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                         std::size_t max_den)
{
    long q = std::uniform_int_distribution<long>(1, static_cast<long>(std::max<std::size_t>(max_den, 1)))(rng);
    Rational a = lo * q, b = hi * q;
    mpz_class lo_n, hi_n;
    mpz_cdiv_q(lo_n.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(hi_n.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    if (hi_n < lo_n) return lo;
    mpz_class span = hi_n - lo_n + 1;
    long off = std::uniform_int_distribution<long>(0, span.get_si() - 1)(rng);
    Rational r(lo_n + off, q);
    r.canonicalize();
    return r;
}

// Vertex coordinates of edge e that no other edge passes through.
std::vector<Rational> true_monos(const GT& g, std::size_t e)
{
    auto inc = g.incidence();
    std::vector<Rational> out;
    for (std::size_t k = 0; k < g.edges[e].vertices.size(); ++k)
        if (inc[e][k].empty()) out.push_back(g.edges[e].vertices[k]);
    return out;
}

std::optional<GT> move_vertex(const GT& g, std::size_t e, const Rational& from, const Rational& to)
{
    GT h = g;
    auto& v = h.edges[e].vertices;
    if (std::find(v.begin(), v.end(), to) != v.end()) return std::nullopt;
    auto it = std::find(v.begin(), v.end(), from);
    if (it == v.end()) return std::nullopt;
    *it = to;
    std::sort(v.begin(), v.end());
    try {
        h.check();
    } catch (const InvalidGeometry&) {
        return std::nullopt;
    }
    return h;
}

struct Solved {
    Rational k, root;
};

// Root of K (to - s)/(from - s) = 1 for mono m on cycle position i.
std::optional<Solved> closed_form(const KeyCycle& kc, std::size_t i, const Rational& m)
{
    Rational p = 1;
    for (std::size_t j = 0; j < kc.edges.size(); ++j)
        p *= lagrange_ratio(kc.monos[j], kc.from[j], kc.to[j]);
    Rational factor = (kc.to[i] - m) / (kc.from[i] - m);
    Rational k = p / factor;
    if (k == 1) return std::nullopt;
    return Solved{k, (kc.from[i] - k * kc.to[i]) / (1 - k)};
}

std::size_t key_rank(const GT& g, const std::vector<std::size_t>& cycle, std::size_t d)
{
    return conformality_rank(sub_gt(g, cycle), d);
}

}  // namespace

WitnessReport witness_search(const GT& g, std::size_t d, const WitnessOptions& opts)
{
    WitnessReport rep;
    rep.rank_before = rep.rank_after = conformality_rank(g, d);
    auto cp = complete_partition(g, d);
    if (cp.cndc.empty()) {
        rep.status = WitnessStatus::StableByDiagonalizability;
        return rep;
    }
    // Without the no-vanishable-edge assumption the multi-vertex graph may have
    // dangling nodes; fall back to sampling over the CNDC edges.
    std::optional<KeyCycle> kc;
    if (key_cycle_applicable(g, cp.cndc, d)) {
        kc = minimal_key_cycle(g, multi_vertex_graph(g, cp.cndc));
        if (!kc) return rep;
        rep.cycle = kc->edges;
    }
    const std::vector<std::size_t> cyc = kc ? kc->edges : cp.cndc;
    rep.key_rank_before = rep.key_rank_after = key_rank(g, cyc, d);
    const bool closed_ok = kc && key_cycle_det(*kc, d).has_value();

    // (cycle position, mono coordinate) pairs eligible as targets
    std::vector<std::pair<std::size_t, Rational>> targets;
    for (std::size_t i = 0; i < cyc.size(); ++i)
        for (const auto& m : true_monos(g, cyc[i])) {
            if (opts.target && (opts.target->edge != cyc[i] || opts.target->coord != m))
                continue;
            targets.emplace_back(i, m);
        }
    if (opts.target && targets.empty())
        throw PreconditionError(kc ? "witness target is not a mono-vertex on the minimal key cycle"
                                   : "witness target is not a mono-vertex on the CNDC");

    auto confirm = [&](const GT& h) {
        if (structurally_similar(g, h).status != SearchStatus::Found) return false;
        return conformality_rank(h, d) < rep.rank_before;
    };
    auto accept = [&](GT h, WitnessMethod method, std::size_t i, const Rational& m,
                      const Rational& root, std::optional<Rational> k) {
        rep.status = WitnessStatus::WitnessFound;
        rep.method = method;
        rep.target_edge = cyc[i];
        rep.original = m;
        rep.witness = root;
        rep.k = std::move(k);
        rep.perturbations.push_back({cyc[i], m, root});
        rep.rank_after = conformality_rank(h, d);
        rep.key_rank_after = key_rank(h, cyc, d);
        rep.witnessed = std::move(h);
    };

    if (closed_ok) {
        struct Cand {
            std::size_t i;
            Rational m;
            Solved sol;
        };
        std::vector<Cand> cands;
        for (const auto& [i, m] : targets)
            if (auto sol = closed_form(*kc, i, m)) cands.push_back({i, m, *sol});
        // Prefer the simplest root: small denominator, then small numerator.
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            mpz_class an = abs(a.sol.root.get_num()), bn = abs(b.sol.root.get_num());
            return std::tie(a.sol.root.get_den(), an) < std::tie(b.sol.root.get_den(), bn);
        });
        for (const auto& c : cands) {
            auto h = move_vertex(g, cyc[c.i], c.m, c.sol.root);
            if (h && confirm(*h)) {
                accept(std::move(*h), WitnessMethod::ClosedForm, c.i, c.m, c.sol.root, c.sol.k);
                return rep;
            }
        }
    }

    if (targets.empty()) return rep;
    std::mt19937_64 rng(opts.seed);
    for (std::size_t attempt = 0; attempt < opts.budget; ++attempt) {
        rep.attempts = attempt + 1;
        auto [i, m] = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
        const std::size_t e = cyc[i];
        if (closed_ok) {
            // Move a second mono-vertex so that K changes, then solve for the target again.
            std::vector<std::pair<std::size_t, Rational>> helpers;
            for (std::size_t j = 0; j < cyc.size(); ++j)
                for (const auto& x : true_monos(g, cyc[j]))
                    if (!(j == i && x == m)) helpers.emplace_back(j, x);
            if (helpers.empty()) break;
            auto [j, x] = helpers[std::uniform_int_distribution<std::size_t>(0, helpers.size() - 1)(rng)];
            const auto& edge = g.edges[cyc[j]];
            Rational y = random_rational(rng, edge.lo(), edge.hi(), opts.max_denominator);
            auto h1 = move_vertex(g, cyc[j], x, y);
            if (!h1) continue;
            auto kc1 = make_key_cycle(*h1, cyc);
            auto sol = closed_form(kc1, i, m);
            if (!sol) continue;
            auto h2 = move_vertex(*h1, e, m, sol->root);
            if (h2 && confirm(*h2)) {
                rep.perturbations.push_back({cyc[j], x, y});
                accept(std::move(*h2), WitnessMethod::Sampled, i, m, sol->root, sol->k);
                return rep;
            }
        } else {
            const auto& edge = g.edges[e];
            Rational y = random_rational(rng, edge.lo(), edge.hi(), opts.max_denominator);
            auto h = move_vertex(g, e, m, y);
            if (h && confirm(*h)) {
                accept(std::move(*h), WitnessMethod::Sampled, i, m, y, std::nullopt);
                return rep;
            }
        }
    }
    return rep;
}

std::map<std::size_t, std::size_t> sample_similar(const GT& g, std::size_t d, std::size_t n,
                                                  std::uint64_t seed, std::size_t max_denominator)
{
    if (n < 1) throw PreconditionError("sample_similar needs n >= 1");
    const auto inc = g.incidence();
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t draw = 0; draw < n; ++draw) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(draw)};
        std::mt19937_64 rng(ss);
        GT h = g;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto& orig = g.edges[e].vertices;
            auto& cur = h.edges[e].vertices;
            for (std::size_t k = 0; k < orig.size(); ++k) {
                if (!inc[e][k].empty()) continue;
                Rational y;
                do {
                    y = random_rational(rng, orig.front(), orig.back(), max_denominator);
                } while (std::find(cur.begin(), cur.end(), y) != cur.end() && y != cur[k]);
                cur[k] = y;
            }
            std::sort(cur.begin(), cur.end());
        }
        h.check();
        ++hist[conformality_rank(h, d)];
    }
    return hist;
}

GT random_key_cycle_gt(std::uint64_t seed, std::size_t e, std::size_t d)
{
    if (e != 4 && e != 6) throw PreconditionError("random_key_cycle_gt supports e = 4 or 6");
    std::mt19937_64 rng(seed);
    auto increasing = [&](std::size_t k) {
        std::vector<Rational> v;
        Rational c = random_rational(rng, 0, 3, 4);
        for (std::size_t i = 0; i < k; ++i) {
            v.push_back(c);
            c += 1 + random_rational(rng, 0, 2, 4);
        }
        return v;
    };
    for (;;) {
        GT g;
        if (e == 4) {
            auto xs = increasing(2), ys = increasing(2);
            g.edges = {{Orient::H, ys[0], {xs[0], xs[1]}},
                       {Orient::V, xs[1], {ys[0], ys[1]}},
                       {Orient::H, ys[1], {xs[0], xs[1]}},
                       {Orient::V, xs[0], {ys[0], ys[1]}}};
        } else {
            auto xs = increasing(3), ys = increasing(3);
            g.edges = {{Orient::H, ys[0], {xs[0], xs[2]}},
                       {Orient::V, xs[2], {ys[0], ys[1]}},
                       {Orient::H, ys[1], {xs[1], xs[2]}},
                       {Orient::V, xs[1], {ys[1], ys[2]}},
                       {Orient::H, ys[2], {xs[0], xs[1]}},
                       {Orient::V, xs[0], {ys[0], ys[2]}}};
        }
        for (auto& edge : g.edges) {
            Rational lo = edge.vertices.front() - 2, hi = edge.vertices.back() + 2;
            while (edge.vertices.size() < d + 2) {
                Rational y = random_rational(rng, lo, hi, 4);
                if (std::find(edge.vertices.begin(), edge.vertices.end(), y) == edge.vertices.end())
                    edge.vertices.push_back(y);
            }
            std::sort(edge.vertices.begin(), edge.vertices.end());
        }
        std::shuffle(g.edges.begin(), g.edges.end(), rng);
        try {
            g.check();
        } catch (const InvalidGeometry&) {
            continue;
        }
        // Monos must not create extra crossings.
        if (g.intersections().size() != e) continue;
        return g;
    }
}

}  // namespace tmesh
