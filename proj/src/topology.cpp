#include "cpa/topology.hpp"

#include <map>
#include <stdexcept>

namespace cpa {

Topology Topology::cycle(int n)
{
    if (n < 2)
        throw std::invalid_argument("cycle requires n >= 2");
    Topology t;
    t.kind_ = TopologyKind::Cycle;
    t.vertex_count_ = n;
    if (n == 2) {
        // Degenerate cycle: the two vertices share a single undirected edge.
        t.edges_ = {{0, 1}, {1, 0}};
    } else {
        for (int i = 0; i < n; ++i) {
            int j = (i + 1) % n;
            t.edges_.push_back({i, j});
            t.edges_.push_back({j, i});
        }
    }
    t.build_adjacency();
    return t;
}

Topology Topology::star(int n)
{
    if (n < 2)
        throw std::invalid_argument("star requires n >= 2");
    Topology t;
    t.kind_ = TopologyKind::Star;
    t.vertex_count_ = n;
    for (int j = 1; j < n; ++j) {
        t.edges_.push_back({0, j});
        t.edges_.push_back({j, 0});
    }
    t.build_adjacency();
    return t;
}

Topology Topology::path_window(int half_width)
{
    if (half_width < 1)
        throw std::invalid_argument("path window requires W >= 1");
    Topology t;
    t.kind_ = TopologyKind::PathWindow;
    t.vertex_count_ = 2 * half_width + 1;
    t.label_offset_ = -half_width;
    for (int i = 0; i + 1 < t.vertex_count_; ++i) {
        t.edges_.push_back({i, i + 1});
        t.edges_.push_back({i + 1, i});
    }
    t.build_adjacency();
    return t;
}

Topology Topology::custom(int vertex_count, const std::vector<std::pair<int, int>>& directed_edges)
{
    if (vertex_count < 1)
        throw std::invalid_argument("custom topology requires at least one vertex");
    Topology t;
    t.kind_ = TopologyKind::Custom;
    t.vertex_count_ = vertex_count;
    for (auto [i, j] : directed_edges) {
        if (i < 0 || j < 0 || i >= vertex_count || j >= vertex_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (i == j)
            throw std::invalid_argument("self-loops are not allowed");
        t.edges_.push_back({i, j});
    }
    t.build_adjacency();
    return t;
}

void Topology::build_adjacency()
{
    out_edges_.assign(static_cast<std::size_t>(vertex_count_), {});
    in_edges_.assign(static_cast<std::size_t>(vertex_count_), {});
    reverse_edge_.assign(edges_.size(), -1);

    std::map<std::pair<int, int>, int> index;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [src, dst] = edges_[e];
        if (src == dst)
            throw std::invalid_argument("self-loops are not allowed");
        if (!index.emplace(std::make_pair(src, dst), static_cast<int>(e)).second)
            throw std::invalid_argument("duplicate directed edge");
        out_edges_[static_cast<std::size_t>(src)].push_back(static_cast<std::int32_t>(e));
        in_edges_[static_cast<std::size_t>(dst)].push_back(static_cast<std::int32_t>(e));
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto it = index.find({edges_[e].dst, edges_[e].src});
        if (it != index.end())
            reverse_edge_[e] = it->second;
    }
}

int Topology::edge_index(int src, int dst) const
{
    for (int e : out_edges_[static_cast<std::size_t>(src)])
        if (edges_[static_cast<std::size_t>(e)].dst == dst)
            return e;
    return -1;
}

std::string Topology::describe() const
{
    switch (kind_) {
    case TopologyKind::Cycle:
        return "cycle" + std::to_string(vertex_count_);
    case TopologyKind::Star:
        return "star" + std::to_string(vertex_count_);
    case TopologyKind::PathWindow:
        return "path_w" + std::to_string((vertex_count_ - 1) / 2);
    case TopologyKind::Custom:
        return "custom" + std::to_string(vertex_count_);
    }
    return "unknown";
}

} // namespace cpa
