#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cpa {

enum class TopologyKind { Cycle, Star, PathWindow, Custom };

// Finite directed graph with stable dense edge indices. Every directed edge
// carries its own activity bit in a Configuration, so edges (i,j) and (j,i)
// are distinct objects; reverse_edge links the two when both exist.
class Topology {
public:
    struct Edge {
        std::int32_t src;
        std::int32_t dst;
    };

    static Topology cycle(int n);
    static Topology star(int n);
    // Finite window of the integer line: vertices {-W..W} stored as 0..2W.
    static Topology path_window(int half_width);
    static Topology custom(int vertex_count, const std::vector<std::pair<int, int>>& directed_edges);

    TopologyKind kind() const { return kind_; }
    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Index of edge (dst, src), or -1 when the reverse direction is absent.
    int reverse_edge(int e) const { return reverse_edge_[static_cast<std::size_t>(e)]; }
    int edge_index(int src, int dst) const; // -1 when absent

    const std::vector<std::int32_t>& out_edges(int v) const { return out_edges_[static_cast<std::size_t>(v)]; }
    const std::vector<std::int32_t>& in_edges(int v) const { return in_edges_[static_cast<std::size_t>(v)]; }

    // PathWindow vertices carry labels -W..W; other kinds label 0..n-1.
    int vertex_label(int v) const { return v + label_offset_; }
    int vertex_of_label(int label) const { return label - label_offset_; }

    std::string describe() const;

private:
    Topology() = default;
    void build_adjacency();

    TopologyKind kind_ = TopologyKind::Custom;
    int vertex_count_ = 0;
    int label_offset_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::int32_t> reverse_edge_;
    std::vector<std::vector<std::int32_t>> out_edges_;
    std::vector<std::vector<std::int32_t>> in_edges_;
};

} // namespace cpa
