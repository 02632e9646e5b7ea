#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tmesh/mesh.hpp"

inline std::string fixture_text(const std::string& name)
{
    std::ifstream in(std::string(TMESH_FIXTURES) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline tmesh::TMesh fixture_mesh(const std::string& name) { return tmesh::parse_mesh(fixture_text(name)); }
inline tmesh::GT fixture_gt(const std::string& name) { return tmesh::parse_gt(fixture_text(name)); }

inline tmesh::GT component_of(const tmesh::TMesh& m) { return tmesh::to_generalized(tmesh::t_component(m)); }

// m x n grid of full cross-cuts on [0, m+1] x [0, n+1]
inline tmesh::TMesh grid_mesh(int m, int n)
{
    tmesh::TMesh g;
    g.domain = {0, 0, m + 1, n + 1};
    for (int i = 1; i <= m; ++i) g.vsegments.push_back({i, 0, n + 1});
    for (int j = 1; j <= n; ++j) g.hsegments.push_back({j, 0, m + 1});
    return tmesh::normalize(g);
}
