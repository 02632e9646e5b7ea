#include "tmesh/partition.hpp"

#include <algorithm>
#include <set>

#include "tmesh/conformality.hpp"

namespace tmesh {

namespace {

using Incidence = std::vector<std::vector<std::vector<std::size_t>>>;

std::size_t mono_count(const Incidence& inc, std::size_t i, const std::vector<char>& within)
{
    std::size_t m = 0;
    for (const auto& others : inc[i])
        if (std::none_of(others.begin(), others.end(), [&](std::size_t j) { return within[j]; }))
            ++m;
    return m;
}

CompletePartition finish(std::vector<char> alive, EdgeSet removed, EdgeSet order)
{
    CompletePartition cp;
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) cp.cndc.push_back(i);
    cp.removed = std::move(removed);
    cp.order = std::move(order);
    return cp;
}

}  // namespace

std::size_t mono_count(const GT& g, std::size_t i, const std::vector<char>& within)
{
    return mono_count(g.incidence(), i, within);
}

CompletePartition complete_partition(const GT& g, std::size_t d)
{
    const auto inc = g.incidence();
    const std::size_t n = g.edges.size();
    std::vector<char> alive(n, 1);
    std::vector<EdgeSet> layers;
    for (;;) {
        EdgeSet layer;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && mono_count(inc, i, alive) >= d + 1) layer.push_back(i);
        if (layer.empty()) break;
        for (auto i : layer) alive[i] = 0;
        layers.push_back(std::move(layer));
    }
    EdgeSet removed, order;
    for (const auto& l : layers) removed.insert(removed.end(), l.begin(), l.end());
    for (auto it = layers.rbegin(); it != layers.rend(); ++it)
        order.insert(order.end(), it->begin(), it->end());
    return finish(std::move(alive), std::move(removed), std::move(order));
}

CompletePartition complete_partition_sequential(const GT& g, std::size_t d, const EdgeSet& sweep)
{
    const auto inc = g.incidence();
    std::vector<char> alive(g.edges.size(), 1);
    EdgeSet removed;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto i : sweep)
            if (alive[i] && mono_count(inc, i, alive) >= d + 1) {
                alive[i] = 0;
                removed.push_back(i);
                changed = true;
            }
    }
    EdgeSet order(removed.rbegin(), removed.rend());
    return finish(std::move(alive), std::move(removed), std::move(order));
}

Diagonalizability is_diagonalizable(const GT& g, std::size_t d)
{
    auto cp = complete_partition(g, d);
    if (!cp.cndc.empty()) return {false, {}};
    return {true, cp.order};
}

KPartition k_partition(const GT& g, const std::vector<EdgeSet>& ordered_parts)
{
    const std::size_t n = g.edges.size();
    std::vector<int> part_of(n, -1);
    for (std::size_t p = 0; p < ordered_parts.size(); ++p)
        for (auto e : ordered_parts[p]) {
            if (e >= n || part_of[e] >= 0)
                throw PreconditionError("k_partition: parts do not partition the edge set");
            part_of[e] = static_cast<int>(p);
        }
    if (std::count(part_of.begin(), part_of.end(), -1) > 0)
        throw PreconditionError("k_partition: parts do not cover the edge set");

    KPartition kp;
    kp.parts = ordered_parts;
    kp.reduced_count.assign(n, 0);
    std::set<Point> taken;
    for (const auto& part : ordered_parts) {
        std::set<Point> mine;
        for (auto e : part) {
            const auto& edge = g.edges[e];
            for (const auto& s : edge.vertices) {
                Point p = edge.at(s);
                if (taken.count(p)) continue;
                mine.insert(p);
                ++kp.reduced_count[e];
            }
        }
        kp.reduced_vertices.emplace_back(mine.begin(), mine.end());
        taken.insert(mine.begin(), mine.end());
    }
    return kp;
}

std::vector<ExactMatrix> phi_matrices(const GT& g, const KPartition& kp, std::size_t d)
{
    std::vector<ExactMatrix> out;
    for (std::size_t p = 0; p < kp.parts.size(); ++p) {
        const auto& part = kp.parts[p];
        const auto& cols = kp.reduced_vertices[p];
        ExactMatrix m(part.size() * (d + 1), cols.size());
        for (std::size_t k = 0; k < part.size(); ++k) {
            const auto& edge = g.edges[part[k]];
            for (const auto& s : edge.vertices) {
                auto it = std::lower_bound(cols.begin(), cols.end(), edge.at(s));
                if (it == cols.end() || !(*it == edge.at(s))) continue;
                auto c = static_cast<std::size_t>(it - cols.begin());
                Rational pw = 1;
                for (std::size_t r = 0; r <= d; ++r, pw *= s) m(k * (d + 1) + r, c) = pw;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

RankIdentity rank_identity_check(const GT& g, std::size_t d)
{
    auto cp = complete_partition(g, d);
    std::size_t lhs = conformality_rank(g, d);
    std::size_t rhs = (g.edges.size() - cp.s()) * (d + 1);
    if (cp.s() > 0) rhs += conformality_rank(sub_gt(g, cp.cndc), d);
    return {lhs, rhs, lhs == rhs};
}

GT sub_gt(const GT& g, const EdgeSet& edges)
{
    GT out;
    for (auto e : edges) out.edges.push_back(g.edges.at(e));
    return out;
}

}  // namespace tmesh
