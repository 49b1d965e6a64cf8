#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pursuit {

using Vertex = int;

// Simple undirected graph on vertices 0..n-1. No loops, no multi-edges.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int vertex_count);

    void add_edge(Vertex u, Vertex v);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return edge_count_; }

    bool has_edge(Vertex u, Vertex v) const;
    // Neighbor lists are kept sorted ascending.
    const std::vector<Vertex>& neighbors(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    // All edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    bool is_connected() const;
    bool is_tree() const;

    // Stable text form ("graph <n>" + one sorted edge per line); equal graphs
    // produce equal text, so the hash doubles as a content identity.
    std::string canonical_text() const;
    std::uint64_t identity_hash() const;

  private:
    void check_vertex(Vertex v) const;

    std::vector<std::vector<Vertex>> adjacency_;
    int edge_count_ = 0;
};

// Tree given as a parent array: parents[i] is the parent of vertex i+1 and
// must satisfy parents[i] <= i, so vertex 0 is always the root.
struct TreeSpec {
    int vertex_count = 0;
    std::vector<Vertex> parents; // size vertex_count - 1

    Graph to_graph() const;
};

// BFS layer per vertex from `source`; -1 for unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, Vertex source);

// 0/1 coloring with adjacent vertices differing; the lowest vertex of each
// component gets 0. Throws std::invalid_argument if the graph is not
// bipartite.
std::vector<int> proper_two_coloring(const Graph& g);

Graph single_vertex_graph();
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
// 2^dim vertices labelled by bitmask; edges join masks at Hamming distance 1.
Graph hypercube_graph(int dim);

std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t fnv1a(const std::string& text);

} // namespace pursuit
